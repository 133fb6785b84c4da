#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bloomtax/chunker.hpp"
#include "bloomtax/similarity.hpp"
#include "bloomtax/verbset.hpp"
#include "bloomtax/wordnet_store.hpp"

namespace bloomtax {

/// Similarity of the query verb against one level's verb list.
struct LevelScore {
  std::string level;
  std::vector<WordPairScore> pair_scores;  // level-list order
  std::vector<std::string> skipped_verbs;  // list verbs unknown to the lexicon
  double max_sim = 0.0;
  double area = 0.0;                       // plain sum in list order

  /// Opt-in diagnostic, not used by the classifier: area / |pair_scores|.
  double mean_sim() const;
};

enum class DecisionPath { unique_max, area_tiebreak, area_tie_lowest_level };

std::string_view to_string(DecisionPath path);

/// Which levels compete on area once max_sim ties.
enum class AreaScope {
  all_levels,   // every level of the domain, as the AVCA pseudocode recomputes it
  tied_levels,  // only the levels sharing the top max_sim
};

struct ClassifierOptions {
  AreaScope area_scope = AreaScope::all_levels;
};

struct ClassificationReport {
  std::string query_verb;
  DomainName domain = DomainName::cognitive;
  std::vector<LevelScore> level_scores;  // taxonomy order
  std::string chosen_level;
  DecisionPath decision_path = DecisionPath::unique_max;
  std::vector<std::string> tied_levels;  // empty iff unique_max
  std::vector<std::string> skipped_verbs;
  std::string lexicon_version;

  const LevelScore& score_of(std::string_view level) const;
};

LevelScore level_similarities(const LexicalStore& store, const TaxonomyRegistry& registry, std::string_view vq,
                              DomainName domain, std::string_view level);

/// Action Verbs Classification Algorithm: the level holding the highest
/// single similarity wins; a tie on that maximum is settled by the largest
/// summed similarity (area), and a further tie by the lowest level.
ClassificationReport classify_verb(const LexicalStore& store, const TaxonomyRegistry& registry, std::string_view vq,
                                   DomainName domain, const ClassifierOptions& options = {});

/// Chooses the level from already computed level scores. Exposed so the
/// decision rule can be exercised on synthetic score tables.
void decide_level(ClassificationReport& report, const ClassifierOptions& options = {});

struct QuestionClassification {
  ChunkResult chunk;
  ClassificationReport report;
};

QuestionClassification classify_question(const LexicalStore& store, const TaxonomyRegistry& registry,
                                         const Grammar& grammar, std::string_view question, DomainName domain,
                                         const ClassifierOptions& options = {});

}  // namespace bloomtax

#include "bloomtax/avca.hpp"

#include <algorithm>
#include <cmath>

#include "bloomtax/error.hpp"
#include "bloomtax/text.hpp"

namespace bloomtax {

double LevelScore::mean_sim() const {
  return pair_scores.empty() ? 0.0 : area / static_cast<double>(pair_scores.size());
}

std::string_view to_string(DecisionPath path) {
  switch (path) {
    case DecisionPath::unique_max: return "unique-max";
    case DecisionPath::area_tiebreak: return "area-tiebreak";
    case DecisionPath::area_tie_lowest_level: return "area-tie-lowest-level";
  }
  return "unique-max";
}

const LevelScore& ClassificationReport::score_of(std::string_view level) const {
  for (const auto& s : level_scores) {
    if (s.level == level) return s;
  }
  raise(ErrorKind::UnknownLevel, std::string(level));
}

namespace {

LevelScore score_level(const LexicalStore& store, const TaxonomyRegistry::Level& level, std::string_view vq,
                       const std::vector<SynsetId>& vq_senses) {
  LevelScore out;
  out.level = level.name;
  for (const auto& verb : level.verbs) {
    auto senses = verb_senses(store, verb);
    if (senses.empty()) {
      out.skipped_verbs.push_back(verb);
      continue;
    }
    auto pair = best_sense_pair(store, vq, vq_senses, verb, senses);
    out.area += pair.score;
    out.max_sim = std::max(out.max_sim, pair.score);
    out.pair_scores.push_back(std::move(pair));
  }
  return out;
}

std::vector<SynsetId> resolve_query(const LexicalStore& store, std::string_view vq) {
  auto senses = verb_senses(store, vq);
  if (senses.empty()) raise(ErrorKind::UnknownVerb, "'" + std::string(vq) + "' has no verb sense");
  return senses;
}

}  // namespace

LevelScore level_similarities(const LexicalStore& store, const TaxonomyRegistry& registry, std::string_view vq,
                              DomainName domain, std::string_view level) {
  auto senses = resolve_query(store, vq);
  return score_level(store, registry.level(domain, level), text::normalize_lemma(vq), senses);
}

void decide_level(ClassificationReport& report, const ClassifierOptions& options) {
  const auto& scores = report.level_scores;
  if (scores.empty()) raise(ErrorKind::EmptyInput, "no level scores");

  double top = scores.front().max_sim;
  for (const auto& s : scores) top = std::max(top, s.max_sim);
  std::vector<std::size_t> tied;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (std::abs(scores[i].max_sim - top) <= kScoreEpsilon) tied.push_back(i);
  }

  report.tied_levels.clear();
  if (tied.size() == 1) {
    report.chosen_level = scores[tied.front()].level;
    report.decision_path = DecisionPath::unique_max;
    return;
  }
  for (auto i : tied) report.tied_levels.push_back(scores[i].level);

  std::vector<std::size_t> contenders;
  if (options.area_scope == AreaScope::all_levels) {
    for (std::size_t i = 0; i < scores.size(); ++i) contenders.push_back(i);
  } else {
    contenders = tied;
  }
  double best_area = scores[contenders.front()].area;
  for (auto i : contenders) best_area = std::max(best_area, scores[i].area);
  std::vector<std::size_t> best;
  for (auto i : contenders) {
    if (std::abs(scores[i].area - best_area) <= kScoreEpsilon) best.push_back(i);
  }
  // Contenders are in taxonomy order, so front() is the lowest level.
  report.chosen_level = scores[best.front()].level;
  report.decision_path = best.size() == 1 ? DecisionPath::area_tiebreak : DecisionPath::area_tie_lowest_level;
}

ClassificationReport classify_verb(const LexicalStore& store, const TaxonomyRegistry& registry, std::string_view vq,
                                   DomainName domain, const ClassifierOptions& options) {
  const auto& levels = registry.levels(domain);
  auto senses = resolve_query(store, vq);

  ClassificationReport report;
  report.query_verb = text::normalize_lemma(vq);
  report.domain = domain;
  report.lexicon_version = store.version();
  for (const auto& level : levels) {
    report.level_scores.push_back(score_level(store, level, report.query_verb, senses));
    const auto& skipped = report.level_scores.back().skipped_verbs;
    report.skipped_verbs.insert(report.skipped_verbs.end(), skipped.begin(), skipped.end());
  }
  std::sort(report.skipped_verbs.begin(), report.skipped_verbs.end());
  report.skipped_verbs.erase(std::unique(report.skipped_verbs.begin(), report.skipped_verbs.end()),
                             report.skipped_verbs.end());
  decide_level(report, options);
  return report;
}

QuestionClassification classify_question(const LexicalStore& store, const TaxonomyRegistry& registry,
                                         const Grammar& grammar, std::string_view question, DomainName domain,
                                         const ClassifierOptions& options) {
  auto chunk = extract_action_verb(store, grammar, question);
  auto report = classify_verb(store, registry, chunk.action_verb, domain, options);
  return {std::move(chunk), std::move(report)};
}

}  // namespace bloomtax

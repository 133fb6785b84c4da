#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bloomtax {

enum class DomainName { cognitive, affective, psychomotor };

std::string_view to_string(DomainName domain);
std::optional<DomainName> parse_domain(std::string_view name);

/// Ordered level names of a Bloom's taxonomy domain:
///   cognitive   Knowledge .. Evaluation (original 1956 names, 6 levels)
///   affective   Receiving .. Characterization (5 levels)
///   psychomotor Imitation .. Naturalization (5 levels)
std::span<const std::string_view> levels_of(DomainName domain);

/// Canonical spelling of `name` within `domain` (case-insensitive match), or
/// nullopt if the domain has no such level.
std::optional<std::string_view> canonical_level(DomainName domain, std::string_view name);

/// Position of `level` in levels_of(domain); throws UnknownLevel.
std::size_t level_index(DomainName domain, std::string_view level);

/// One expert list of action verbs. A verb may sit under several levels.
struct SourceVerbList {
  std::string source_id;
  DomainName domain = DomainName::cognitive;
  std::map<std::string, std::set<std::string>> entries;  // level -> verbs

  std::size_t entry_count() const;
};

/// Reads `domain<TAB>level<TAB>verb` rows; '#' lines and blank lines are
/// skipped. The source id is the file stem.
SourceVerbList parse_source_list(const std::filesystem::path& file);
SourceVerbList parse_source_list(std::string_view content, std::string source_id);

enum class ConsensusDecision { kept_by_majority, kept_conditionally, dropped_conflict, dropped_insufficient };

std::string_view to_string(ConsensusDecision decision);
std::optional<ConsensusDecision> parse_decision(std::string_view name);

struct VerbProvenance {
  std::string level;  // level the decision refers to (best-supported level)
  double agreement_ratio = 0.0;
  std::set<std::string> supporting_sources;
  ConsensusDecision decision = ConsensusDecision::dropped_insufficient;
};

struct ConsensusVerbSet {
  DomainName domain = DomainName::cognitive;
  double majority_threshold = 0.75;
  double conditional_threshold = 0.5;
  std::vector<std::string> source_ids;                   // sorted
  std::map<std::string, std::set<std::string>> entries;  // level -> kept verbs
  std::map<std::string, VerbProvenance> provenance;      // every verb seen

  bool is_kept(std::string_view verb) const;
};

/// Multi-source agreement filter. A (verb, level) pair is kept by majority
/// when its share of sources reaches `majority_threshold`; it is kept
/// conditionally when it reaches `conditional_threshold` and no source puts
/// the verb at any other level. A verb qualifying at two levels is dropped.
ConsensusVerbSet build_consensus(std::span<const SourceVerbList> sources, double majority_threshold = 0.75,
                                 double conditional_threshold = 0.5);

/// The per-domain, per-level verb lists used by the classifier.
class TaxonomyRegistry {
 public:
  struct Level {
    std::string name;
    std::vector<std::string> verbs;  // sorted, underscore-normalized
  };

  bool has_domain(DomainName domain) const;
  /// Levels of `domain` in taxonomy order; throws UnknownDomain.
  std::span<const Level> levels(DomainName domain) const;
  const Level& level(DomainName domain, std::string_view name) const;
  std::vector<DomainName> domains() const;
  std::size_t verb_count(DomainName domain) const;

 private:
  friend TaxonomyRegistry registry_from(std::span<const ConsensusVerbSet> sets);
  std::map<DomainName, std::vector<Level>> domains_;
};

/// Requires the cognitive domain and a non-empty verb list for every level.
TaxonomyRegistry registry_from(std::span<const ConsensusVerbSet> sets);
TaxonomyRegistry registry_from(const ConsensusVerbSet& set);

}  // namespace bloomtax

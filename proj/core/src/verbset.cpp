#include "bloomtax/verbset.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "bloomtax/error.hpp"
#include "bloomtax/text.hpp"

namespace bloomtax {

namespace {

constexpr std::array<std::string_view, 6> kCognitive = {"Knowledge", "Comprehension", "Application",
                                                         "Analysis",  "Synthesis",     "Evaluation"};
constexpr std::array<std::string_view, 5> kAffective = {"Receiving", "Responding", "Valuing", "Organization",
                                                         "Characterization"};
constexpr std::array<std::string_view, 5> kPsychomotor = {"Imitation", "Manipulation", "Precision",
                                                           "Articulation", "Naturalization"};

}  // namespace

std::string_view to_string(DomainName domain) {
  switch (domain) {
    case DomainName::cognitive: return "cognitive";
    case DomainName::affective: return "affective";
    case DomainName::psychomotor: return "psychomotor";
  }
  return "cognitive";
}

std::optional<DomainName> parse_domain(std::string_view name) {
  auto lower = text::to_lower(text::trim(name));
  if (lower == "cognitive") return DomainName::cognitive;
  if (lower == "affective") return DomainName::affective;
  if (lower == "psychomotor") return DomainName::psychomotor;
  return std::nullopt;
}

std::span<const std::string_view> levels_of(DomainName domain) {
  switch (domain) {
    case DomainName::cognitive: return kCognitive;
    case DomainName::affective: return kAffective;
    case DomainName::psychomotor: return kPsychomotor;
  }
  return kCognitive;
}

std::optional<std::string_view> canonical_level(DomainName domain, std::string_view name) {
  auto lower = text::to_lower(text::trim(name));
  for (auto level : levels_of(domain)) {
    if (text::to_lower(level) == lower) return level;
  }
  return std::nullopt;
}

std::size_t level_index(DomainName domain, std::string_view level) {
  auto levels = levels_of(domain);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] == level) return i;
  }
  raise(ErrorKind::UnknownLevel, std::string(level) + " in " + std::string(to_string(domain)));
}

std::size_t SourceVerbList::entry_count() const {
  std::size_t n = 0;
  for (const auto& [level, verbs] : entries) n += verbs.size();
  return n;
}

SourceVerbList parse_source_list(std::string_view content, std::string source_id) {
  SourceVerbList out;
  out.source_id = std::move(source_id);
  std::optional<DomainName> domain;
  std::size_t line_no = 0;
  for (auto line : text::split_char(content, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    auto where = out.source_id + ":" + std::to_string(line_no);
    auto cols = text::split_char(line, '\t');
    if (cols.size() != 3) raise(ErrorKind::MalformedRow, where + ": expected domain<TAB>level<TAB>verb");
    auto row_domain = parse_domain(cols[0]);
    if (!row_domain) raise(ErrorKind::UnknownDomain, where + ": '" + std::string(text::trim(cols[0])) + "'");
    if (domain && *domain != *row_domain) raise(ErrorKind::MalformedRow, where + ": mixed domains in one list");
    domain = row_domain;
    auto level = canonical_level(*row_domain, cols[1]);
    if (!level) raise(ErrorKind::UnknownLevel, where + ": '" + std::string(text::trim(cols[1])) + "'");
    auto verb = text::normalize_lemma(cols[2]);
    if (verb.empty()) raise(ErrorKind::MalformedRow, where + ": empty verb");
    out.entries[std::string(*level)].insert(std::move(verb));
  }
  out.domain = domain.value_or(DomainName::cognitive);
  return out;
}

SourceVerbList parse_source_list(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) raise(ErrorKind::Io, "cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_source_list(buf.str(), file.stem().string());
}

std::string_view to_string(ConsensusDecision decision) {
  switch (decision) {
    case ConsensusDecision::kept_by_majority: return "kept-by-majority";
    case ConsensusDecision::kept_conditionally: return "kept-conditionally";
    case ConsensusDecision::dropped_conflict: return "dropped-conflict";
    case ConsensusDecision::dropped_insufficient: return "dropped-insufficient";
  }
  return "dropped-insufficient";
}

std::optional<ConsensusDecision> parse_decision(std::string_view name) {
  for (auto d : {ConsensusDecision::kept_by_majority, ConsensusDecision::kept_conditionally,
                 ConsensusDecision::dropped_conflict, ConsensusDecision::dropped_insufficient}) {
    if (to_string(d) == name) return d;
  }
  return std::nullopt;
}

bool ConsensusVerbSet::is_kept(std::string_view verb) const {
  auto it = provenance.find(std::string(verb));
  return it != provenance.end() && (it->second.decision == ConsensusDecision::kept_by_majority ||
                                    it->second.decision == ConsensusDecision::kept_conditionally);
}

ConsensusVerbSet build_consensus(std::span<const SourceVerbList> sources, double majority_threshold,
                                 double conditional_threshold) {
  if (sources.size() < 2) {
    raise(ErrorKind::InsufficientSources, "need at least 2 sources, got " + std::to_string(sources.size()));
  }
  if (!(conditional_threshold > 0.0 && conditional_threshold <= majority_threshold && majority_threshold <= 1.0)) {
    raise(ErrorKind::InvalidThreshold, "require 0 < conditional <= majority <= 1");
  }
  const auto domain = sources.front().domain;
  for (const auto& s : sources) {
    if (s.domain != domain) {
      raise(ErrorKind::DomainMismatch, s.source_id + " is " + std::string(to_string(s.domain)) + ", expected " +
                                           std::string(to_string(domain)));
    }
  }

  ConsensusVerbSet out;
  out.domain = domain;
  out.majority_threshold = majority_threshold;
  out.conditional_threshold = conditional_threshold;
  for (const auto& s : sources) out.source_ids.push_back(s.source_id);
  std::sort(out.source_ids.begin(), out.source_ids.end());

  // verb -> level index -> supporting source ids
  const auto levels = levels_of(domain);
  std::map<std::string, std::vector<std::set<std::string>>> support;
  for (const auto& s : sources) {
    for (const auto& [level, verbs] : s.entries) {
      const auto li = level_index(domain, level);
      for (const auto& verb : verbs) {
        auto& per_level = support[verb];
        per_level.resize(levels.size());
        per_level[li].insert(s.source_id);
      }
    }
  }

  const double total = static_cast<double>(sources.size());
  // Thresholds are compared on source counts to avoid 3/4 vs 0.75 rounding.
  auto reaches = [&](std::size_t count, double threshold) {
    return static_cast<double>(count) >= threshold * total - 1e-12;
  };

  for (const auto& [verb, per_level] : support) {
    std::size_t assigned_levels = 0;
    for (const auto& srcs : per_level) assigned_levels += srcs.empty() ? 0 : 1;

    std::vector<std::size_t> majority;
    std::vector<std::size_t> conditional;
    bool any_conditional_ratio = false;
    for (std::size_t li = 0; li < per_level.size(); ++li) {
      const auto count = per_level[li].size();
      if (count == 0) continue;
      if (reaches(count, majority_threshold)) {
        majority.push_back(li);
      } else if (reaches(count, conditional_threshold)) {
        any_conditional_ratio = true;
        if (assigned_levels == 1) conditional.push_back(li);
      }
    }

    // Best-supported level for the provenance record; ties go to the lower level.
    std::size_t best = 0;
    for (std::size_t li = 1; li < per_level.size(); ++li) {
      if (per_level[li].size() > per_level[best].size()) best = li;
    }

    VerbProvenance prov;
    const auto qualifying = majority.size() + conditional.size();
    if (qualifying == 1) {
      const auto li = majority.empty() ? conditional.front() : majority.front();
      best = li;
      prov.decision = majority.empty() ? ConsensusDecision::kept_conditionally : ConsensusDecision::kept_by_majority;
      out.entries[std::string(levels[li])].insert(verb);
    } else if (qualifying > 1 || any_conditional_ratio) {
      prov.decision = ConsensusDecision::dropped_conflict;
    } else {
      prov.decision = ConsensusDecision::dropped_insufficient;
    }
    prov.level = std::string(levels[best]);
    prov.supporting_sources = per_level[best];
    prov.agreement_ratio = static_cast<double>(per_level[best].size()) / total;
    out.provenance.emplace(verb, std::move(prov));
  }
  return out;
}

bool TaxonomyRegistry::has_domain(DomainName domain) const { return domains_.contains(domain); }

std::span<const TaxonomyRegistry::Level> TaxonomyRegistry::levels(DomainName domain) const {
  auto it = domains_.find(domain);
  if (it == domains_.end()) raise(ErrorKind::UnknownDomain, std::string(to_string(domain)) + " is not registered");
  return it->second;
}

const TaxonomyRegistry::Level& TaxonomyRegistry::level(DomainName domain, std::string_view name) const {
  for (const auto& l : levels(domain)) {
    if (l.name == name) return l;
  }
  raise(ErrorKind::UnknownLevel, std::string(name) + " in " + std::string(to_string(domain)));
}

std::vector<DomainName> TaxonomyRegistry::domains() const {
  std::vector<DomainName> out;
  for (const auto& [d, levels] : domains_) out.push_back(d);
  return out;
}

std::size_t TaxonomyRegistry::verb_count(DomainName domain) const {
  std::size_t n = 0;
  for (const auto& l : levels(domain)) n += l.verbs.size();
  return n;
}

TaxonomyRegistry registry_from(std::span<const ConsensusVerbSet> sets) {
  TaxonomyRegistry registry;
  for (const auto& set : sets) {
    if (registry.domains_.contains(set.domain)) {
      raise(ErrorKind::DomainMismatch, std::string(to_string(set.domain)) + " supplied twice");
    }
    std::vector<TaxonomyRegistry::Level> levels;
    for (auto name : levels_of(set.domain)) {
      auto it = set.entries.find(std::string(name));
      if (it == set.entries.end() || it->second.empty()) {
        raise(ErrorKind::EmptyLevel, std::string(to_string(set.domain)) + "/" + std::string(name));
      }
      levels.push_back({std::string(name), {it->second.begin(), it->second.end()}});
    }
    registry.domains_.emplace(set.domain, std::move(levels));
  }
  if (!registry.has_domain(DomainName::cognitive)) {
    raise(ErrorKind::MissingDomain, "a registry needs the cognitive domain");
  }
  return registry;
}

TaxonomyRegistry registry_from(const ConsensusVerbSet& set) { return registry_from(std::span(&set, 1)); }

}  // namespace bloomtax

#include "support.hpp"

#include <algorithm>
#include <cmath>

#include "bloomtax/json_io.hpp"

namespace bloomtax::testing {

const LexicalStore& wordnet() {
  static const LexicalStore store = load_database(wordnet_dir());
  return store;
}

const LexicalStore& mini() {
  static const LexicalStore store = load_database(mini_dir());
  return store;
}

const TaxonomyRegistry& bundled_registry() {
  static const TaxonomyRegistry registry = registry_from(load_consensus(consensus_path()));
  return registry;
}

ConsensusVerbSet unanimous(const SourceVerbList& list) {
  auto a = list;
  auto b = list;
  a.source_id = "a";
  b.source_id = "b";
  std::vector<SourceVerbList> sources{a, b};
  return build_consensus(sources);
}

// Naive AVCA: every sense pair through the brute-force Wu-Palmer.
OracleResult avca_oracle(const LexicalStore& store, const TaxonomyRegistry& reg, DomainName domain,
                         const std::string& vq) {
  WupOracle wup(store);
  auto senses = [&](const std::string& w) {
    std::vector<SynsetId> out;
    for (const auto& base : store.lemmatize(w, PartOfSpeech::verb)) {
      for (auto id : store.synsets_of(base, PartOfSpeech::verb)) out.push_back(id);
    }
    return out;
  };
  auto q = senses(vq);
  OracleResult r;
  for (const auto& level : reg.levels(domain)) {
    double mx = 0.0;
    double area = 0.0;
    for (const auto& v : level.verbs) {
      auto c = senses(v);
      if (c.empty()) continue;
      double best = 0.0;
      for (auto a : q) {
        for (auto b : c) best = std::max(best, wup.wup(a, b));
      }
      mx = std::max(mx, best);
      area += best;
    }
    r.max_sim.push_back(mx);
    r.area.push_back(area);
  }
  const double top = *std::max_element(r.max_sim.begin(), r.max_sim.end());
  std::size_t ties = 0;
  std::size_t pick = 0;
  for (std::size_t i = 0; i < r.max_sim.size(); ++i) {
    if (std::abs(r.max_sim[i] - top) <= 1e-9) {
      if (ties++ == 0) pick = i;
    }
  }
  r.path = DecisionPath::unique_max;
  if (ties > 1) {
    const double best_area = *std::max_element(r.area.begin(), r.area.end());
    std::size_t area_ties = 0;
    for (std::size_t i = 0; i < r.area.size(); ++i) {
      if (std::abs(r.area[i] - best_area) <= 1e-9) {
        if (area_ties++ == 0) pick = i;
      }
    }
    r.path = area_ties == 1 ? DecisionPath::area_tiebreak : DecisionPath::area_tie_lowest_level;
  }
  r.level = reg.levels(domain)[pick].name;
  return r;
}


ConsensusDecision oracle_decision(const std::vector<int>& counts, int total, int majority_num, int conditional_num,
                                  int den, std::optional<std::size_t>& kept_level) {
  int assigned = 0;
  for (int c : counts) assigned += c > 0;
  std::vector<std::size_t> qualifying;
  bool conditional_ratio = false;
  std::size_t majority_hits = 0;
  for (std::size_t l = 0; l < counts.size(); ++l) {
    const int c = counts[l];
    if (c == 0) continue;
    const bool maj = c * den >= majority_num * total;
    const bool cond = c * den >= conditional_num * total;
    if (maj) {
      qualifying.push_back(l);
      ++majority_hits;
    } else if (cond) {
      conditional_ratio = true;
      if (assigned == 1) qualifying.push_back(l);
    }
  }
  kept_level.reset();
  if (qualifying.size() == 1) {
    kept_level = qualifying.front();
    return majority_hits == 1 ? ConsensusDecision::kept_by_majority : ConsensusDecision::kept_conditionally;
  }
  if (qualifying.size() > 1 || conditional_ratio) return ConsensusDecision::dropped_conflict;
  return ConsensusDecision::dropped_insufficient;
}


}  // namespace bloomtax::testing

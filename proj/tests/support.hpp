#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bloomtax/avca.hpp"
#include "bloomtax/verbset.hpp"
#include "bloomtax/wordnet_store.hpp"

namespace bloomtax::testing {

inline std::filesystem::path data_dir() { return BLOOMTAX_DATA_DIR; }
inline std::filesystem::path fixture_dir() { return BLOOMTAX_FIXTURE_DIR; }
inline std::filesystem::path wordnet_dir() { return data_dir() / "wordnet"; }
inline std::filesystem::path mini_dir() { return fixture_dir() / "miniwn"; }
inline std::filesystem::path consensus_path() { return data_dir() / "verbsets" / "cognitive_consensus.json"; }

// Loaded once per test binary.
const LexicalStore& wordnet();
const LexicalStore& mini();
const TaxonomyRegistry& bundled_registry();

inline SynsetId verb_id(std::uint32_t offset) { return {offset, PartOfSpeech::verb}; }

// Offsets of the miniature lexicon.
namespace mini_ids {
inline constexpr std::uint32_t act = 136, move = 196, run = 273, walk = 360, speak = 480, march = 579, think = 665,
                               reason = 722, deduce = 810, conclude = 923, remember = 1018, hike = 1111;
}

// Brute-force Wu-Palmer written against the raw hypernym lists only.
class WupOracle {
 public:
  explicit WupOracle(const LexicalStore& store) : store_(store) {}

  int depth(SynsetId id) {
    if (auto it = depth_.find(id); it != depth_.end()) return it->second;
    const auto& s = store_.synset(id);
    int d = 2;
    if (!s.hypernyms.empty()) {
      d = 1 << 30;
      for (auto h : s.hypernyms) d = std::min(d, depth(h) + 1);
    }
    depth_[id] = d;
    return d;
  }

  std::set<SynsetId> ancestors(SynsetId id) {
    std::set<SynsetId> seen{id};
    std::vector<SynsetId> stack{id};
    while (!stack.empty()) {
      auto cur = stack.back();
      stack.pop_back();
      for (auto h : store_.synset(cur).hypernyms) {
        if (seen.insert(h).second) stack.push_back(h);
      }
    }
    return seen;
  }

  // (offset, depth) of the subsumer; nullopt stands for the virtual root.
  std::pair<std::optional<SynsetId>, int> lcs(SynsetId a, SynsetId b) {
    auto aa = ancestors(a);
    auto bb = ancestors(b);
    std::optional<SynsetId> best;
    int best_depth = 1;
    for (auto n : aa) {
      if (!bb.contains(n)) continue;
      const int d = depth(n);
      const bool ok_a = n == a || d < depth(a);
      const bool ok_b = n == b || d < depth(b);
      if (!ok_a || !ok_b) continue;
      if (d > best_depth || (d == best_depth && best && n < *best)) {
        best = n;
        best_depth = d;
      }
    }
    return {best, best_depth};
  }

  double wup(SynsetId a, SynsetId b) {
    return 2.0 * lcs(a, b).second / static_cast<double>(depth(a) + depth(b));
  }

 private:
  const LexicalStore& store_;
  std::map<SynsetId, int> depth_;
};

// Naive AVCA over the brute-force Wu-Palmer, all-levels area rule.
struct OracleResult {
  std::string level;
  DecisionPath path;
  std::vector<double> max_sim;
  std::vector<double> area;
};
OracleResult avca_oracle(const LexicalStore& store, const TaxonomyRegistry& reg, DomainName domain,
                         const std::string& vq);

// The agreement rule restated on integer counts; thresholds are num/den.
ConsensusDecision oracle_decision(const std::vector<int>& counts, int total, int majority_num, int conditional_num,
                                  int den, std::optional<std::size_t>& kept_level);

// Two-source consensus over the same list, so every verb is kept by majority.
ConsensusVerbSet unanimous(const SourceVerbList& list);

}  // namespace bloomtax::testing

#include "bloomtax/similarity.hpp"

#include <algorithm>
#include <tuple>

#include "bloomtax/error.hpp"
#include "bloomtax/text.hpp"

namespace bloomtax {

double wup_synset(const LexicalStore& store, SynsetId a, SynsetId b) {
  if (a.pos != b.pos) raise(ErrorKind::PosMismatch, to_string(a) + " vs " + to_string(b));
  const int lcs = store.subsumer_depth(a, b);
  return 2.0 * lcs / static_cast<double>(store.depth(a) + store.depth(b));
}

std::vector<SynsetId> verb_senses(const LexicalStore& store, std::string_view word) {
  std::vector<SynsetId> out;
  for (const auto& base : store.lemmatize(word, PartOfSpeech::verb)) {
    for (auto id : store.synsets_of(base, PartOfSpeech::verb)) {
      if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
    }
  }
  return out;
}

WordPairScore best_sense_pair(const LexicalStore& store, std::string_view query,
                              std::span<const SynsetId> query_senses, std::string_view candidate,
                              std::span<const SynsetId> candidate_senses) {
  if (query_senses.empty()) raise(ErrorKind::UnknownVerb, std::string(query));
  if (candidate_senses.empty()) raise(ErrorKind::UnknownVerb, std::string(candidate));

  WordPairScore best{std::string(query), std::string(candidate), -1.0, {}, {}};
  for (auto q : query_senses) {
    for (auto c : candidate_senses) {
      const double s = wup_synset(store, q, c);
      const bool better = s > best.score + kScoreEpsilon;
      const bool tie_wins = !better && s >= best.score - kScoreEpsilon &&
                            std::tie(q.byte_offset, c.byte_offset) <
                                std::tie(best.best_query_sense.byte_offset, best.best_list_sense.byte_offset);
      if (better || tie_wins) {
        best.score = s;
        best.best_query_sense = q;
        best.best_list_sense = c;
      }
    }
  }
  return best;
}

WordPairScore wup_word(const LexicalStore& store, std::string_view query, std::string_view candidate) {
  auto q = verb_senses(store, query);
  auto c = verb_senses(store, candidate);
  return best_sense_pair(store, text::normalize_lemma(query), q, text::normalize_lemma(candidate), c);
}

}  // namespace bloomtax

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bloomtax/wordnet_store.hpp"

namespace bloomtax {

/// Absolute tolerance used wherever two similarity values are compared.
inline constexpr double kScoreEpsilon = 1e-9;

/// Best-scoring sense pair between two verbs.
struct WordPairScore {
  std::string query_verb;
  std::string list_verb;
  double score = 0.0;   // in (0, 1]
  SynsetId best_query_sense;
  SynsetId best_list_sense;
};

/// Wu-Palmer: 2 * depth(LCS) / (depth(a) + depth(b)).
double wup_synset(const LexicalStore& store, SynsetId a, SynsetId b);

/// Verb senses of every Morphy base form of `word`, deduplicated, in
/// base-form then index order. Empty when the word is not a known verb.
std::vector<SynsetId> verb_senses(const LexicalStore& store, std::string_view word);

/// Maximum wup_synset over the cross product of both words' verb senses.
/// Throws UnknownVerb when either word has no verb sense.
WordPairScore wup_word(const LexicalStore& store, std::string_view query, std::string_view candidate);

/// Same as wup_word with the sense lists already resolved.
WordPairScore best_sense_pair(const LexicalStore& store, std::string_view query,
                              std::span<const SynsetId> query_senses, std::string_view candidate,
                              std::span<const SynsetId> candidate_senses);

}  // namespace bloomtax

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bloomtax/wordnet_store.hpp"

namespace bloomtax {

struct Token {
  std::string surface;
  std::string lower;
  std::size_t start = 0;  // byte offsets into the question, end exclusive
  std::size_t end = 0;

  bool is_word() const;
};

/// Splits on line breaks and after '?', '.', '!' when whitespace follows.
std::vector<std::string> split_questions(std::string_view text);

/// Whitespace tokenization; leading and trailing punctuation characters
/// become tokens of their own, interior hyphens and apostrophes stay.
std::vector<Token> tokenize(std::string_view question);

/// Auxiliaries and modals that are never returned as the action verb.
bool is_auxiliary(std::string_view word);

struct VerbSlot {
  friend bool operator==(const VerbSlot&, const VerbSlot&) = default;
};
using PatternElement = std::variant<std::string, VerbSlot>;  // literal word or slot

struct StarterPattern {
  std::string label;
  int priority = 0;
  std::vector<PatternElement> elements;
  std::size_t line = 0;  // position in the grammar file, for reporting

  std::string to_string() const;
};

/// Patterns in descending priority; equal priorities keep file order.
class Grammar {
 public:
  Grammar() = default;
  explicit Grammar(std::vector<StarterPattern> patterns);

  bool empty() const noexcept { return patterns_.empty(); }
  const std::vector<StarterPattern>& patterns() const noexcept { return patterns_; }

 private:
  std::vector<StarterPattern> patterns_;
};

/// Parses `label<TAB>priority<TAB>pattern` lines; `<VERB>` marks the slot.
Grammar parse_grammar(std::string_view content);
Grammar load_grammar(const std::filesystem::path& file);

/// The bundled question-starter grammar (data/grammar/question_starters.tsv).
std::string_view default_grammar_text();
const Grammar& default_grammar();

struct ChunkResult {
  std::string action_verb;               // Morphy base form
  std::optional<std::string> level_hint;  // label of the matched pattern
  std::optional<std::string> matched_pattern;
  std::size_t span_start = 0;            // byte range of the matched text
  std::size_t span_end = 0;
  std::string verb_surface;
};

/// Finds the question's main action verb using the starter grammar, falling
/// back to the first non-auxiliary verb-capable token. Throws NoVerbFound.
ChunkResult extract_action_verb(const LexicalStore& store, const Grammar& grammar, std::string_view question);

}  // namespace bloomtax

#include "bloomtax/chunker.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include "bloomtax/error.hpp"
#include "bloomtax/text.hpp"

namespace bloomtax {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }
bool is_terminal(char c) { return c == '?' || c == '.' || c == '!'; }

constexpr std::array<std::string_view, 20> kAuxiliaries = {
    "be",    "is",   "are",  "was",   "were",  "do",    "does", "did",   "have", "has",
    "had",   "would", "could", "should", "can", "may", "might", "will", "shall", "must"};

}  // namespace

bool Token::is_word() const { return std::any_of(surface.begin(), surface.end(), is_alnum); }

std::vector<std::string> split_questions(std::string_view text) {
  std::vector<std::string> out;
  auto flush = [&](std::string_view segment) {
    auto trimmed = text::trim(segment);
    if (!trimmed.empty()) out.emplace_back(trimmed);
  };
  for (auto line : text::split_char(text, '\n')) {
    std::size_t start = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (is_terminal(line[i]) && i + 1 < line.size() && is_space(line[i + 1])) {
        flush(line.substr(start, i + 1 - start));
        start = i + 1;
      }
    }
    flush(line.substr(start));
  }
  return out;
}

std::vector<Token> tokenize(std::string_view question) {
  std::vector<Token> out;
  auto push = [&](std::size_t start, std::size_t end) {
    Token t;
    t.surface = std::string(question.substr(start, end - start));
    t.lower = text::to_lower(t.surface);
    t.start = start;
    t.end = end;
    out.push_back(std::move(t));
  };
  std::size_t i = 0;
  while (i < question.size()) {
    while (i < question.size() && is_space(question[i])) ++i;
    std::size_t start = i;
    while (i < question.size() && !is_space(question[i])) ++i;
    std::size_t end = i;
    if (start == end) break;

    std::size_t core_start = start;
    while (core_start < end && is_punct(question[core_start])) ++core_start;
    std::size_t core_end = end;
    while (core_end > core_start && is_punct(question[core_end - 1])) --core_end;

    for (std::size_t k = start; k < core_start; ++k) push(k, k + 1);
    if (core_start < core_end) push(core_start, core_end);
    for (std::size_t k = std::max(core_end, core_start); k < end; ++k) push(k, k + 1);
  }
  return out;
}

bool is_auxiliary(std::string_view word) {
  return std::find(kAuxiliaries.begin(), kAuxiliaries.end(), word) != kAuxiliaries.end();
}

std::string StarterPattern::to_string() const {
  std::string out;
  for (const auto& e : elements) {
    if (!out.empty()) out.push_back(' ');
    if (std::holds_alternative<VerbSlot>(e)) {
      out += "<VERB>";
    } else {
      out += std::get<std::string>(e);
    }
  }
  return out;
}

Grammar::Grammar(std::vector<StarterPattern> patterns) : patterns_(std::move(patterns)) {
  std::stable_sort(patterns_.begin(), patterns_.end(),
                   [](const StarterPattern& a, const StarterPattern& b) { return a.priority > b.priority; });
}

Grammar parse_grammar(std::string_view content) {
  std::vector<StarterPattern> patterns;
  std::size_t line_no = 0;
  for (auto line : text::split_char(content, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    auto where = "grammar line " + std::to_string(line_no);
    auto cols = text::split_char(trimmed, '\t');
    if (cols.size() != 3) raise(ErrorKind::MalformedGrammar, where + ": expected label<TAB>priority<TAB>pattern");

    StarterPattern p;
    p.line = line_no;
    p.label = std::string(text::trim(cols[0]));
    if (p.label.empty()) raise(ErrorKind::MalformedGrammar, where + ": empty label");
    try {
      std::size_t used = 0;
      auto prio = std::string(text::trim(cols[1]));
      p.priority = std::stoi(prio, &used);
      if (used != prio.size()) throw std::invalid_argument(prio);
    } catch (const std::logic_error&) {
      raise(ErrorKind::MalformedGrammar, where + ": bad priority '" + std::string(cols[1]) + "'");
    }
    std::size_t slots = 0;
    for (auto word : text::split_whitespace(cols[2])) {
      if (word == "<VERB>") {
        ++slots;
        p.elements.emplace_back(VerbSlot{});
      } else {
        p.elements.emplace_back(text::to_lower(word));
      }
    }
    if (slots != 1) raise(ErrorKind::MalformedGrammar, where + ": pattern needs exactly one <VERB>");
    patterns.push_back(std::move(p));
  }
  return Grammar(std::move(patterns));
}

Grammar load_grammar(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) raise(ErrorKind::Io, "cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_grammar(buf.str());
}

const Grammar& default_grammar() {
  static const Grammar grammar = parse_grammar(default_grammar_text());
  return grammar;
}

namespace {

// Base form of a token that can serve as the action verb, if any.
std::optional<std::string> action_base(const LexicalStore& store, const Token& token) {
  if (!token.is_word() || is_auxiliary(token.lower)) return std::nullopt;
  auto bases = store.lemmatize(token.lower, PartOfSpeech::verb);
  if (bases.empty() || is_auxiliary(bases.front())) return std::nullopt;
  return bases.front();
}

std::optional<ChunkResult> match_pattern(const LexicalStore& store, const StarterPattern& pattern,
                                         const std::vector<const Token*>& words) {
  std::size_t w = 0;
  std::size_t e = 0;
  ChunkResult result;
  for (; e < pattern.elements.size(); ++e) {
    const auto& element = pattern.elements[e];
    if (std::holds_alternative<VerbSlot>(element)) break;
    if (w >= words.size() || words[w]->lower != std::get<std::string>(element)) return std::nullopt;
    ++w;
  }
  const Token* verb = nullptr;
  for (; w < words.size(); ++w) {
    if (auto base = action_base(store, *words[w])) {
      verb = words[w];
      result.action_verb = *base;
      ++w;
      break;
    }
  }
  if (verb == nullptr) return std::nullopt;
  const Token* last = verb;
  for (++e; e < pattern.elements.size(); ++e) {
    if (w >= words.size() || words[w]->lower != std::get<std::string>(pattern.elements[e])) return std::nullopt;
    last = words[w++];
  }
  result.level_hint = pattern.label;
  result.matched_pattern = pattern.to_string();
  result.span_start = words.front()->start;
  result.span_end = last->end;
  result.verb_surface = verb->surface;
  return result;
}

}  // namespace

ChunkResult extract_action_verb(const LexicalStore& store, const Grammar& grammar, std::string_view question) {
  if (grammar.empty()) raise(ErrorKind::MalformedGrammar, "grammar has no patterns");
  auto tokens = tokenize(question);
  std::vector<const Token*> words;
  for (const auto& t : tokens) {
    if (t.is_word()) words.push_back(&t);
  }

  if (!words.empty()) {
    for (const auto& pattern : grammar.patterns()) {
      if (auto hit = match_pattern(store, pattern, words)) return *hit;
    }
  }
  for (const auto* token : words) {
    if (auto base = action_base(store, *token)) {
      ChunkResult result;
      result.action_verb = *base;
      result.span_start = token->start;
      result.span_end = token->end;
      result.verb_surface = token->surface;
      return result;
    }
  }
  raise(ErrorKind::NoVerbFound, "'" + std::string(question) + "'");
}

}  // namespace bloomtax

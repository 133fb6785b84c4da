#include "bloomtax/wordnet_store.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <regex>
#include <unordered_set>

#include "bloomtax/error.hpp"
#include "bloomtax/text.hpp"

namespace bloomtax {

std::string_view file_suffix(PartOfSpeech pos) {
  switch (pos) {
    case PartOfSpeech::noun: return "noun";
    case PartOfSpeech::verb: return "verb";
    case PartOfSpeech::adjective: return "adj";
    case PartOfSpeech::adverb: return "adv";
  }
  return "verb";
}

char pos_tag(PartOfSpeech pos) {
  switch (pos) {
    case PartOfSpeech::noun: return 'n';
    case PartOfSpeech::verb: return 'v';
    case PartOfSpeech::adjective: return 'a';
    case PartOfSpeech::adverb: return 'r';
  }
  return 'v';
}

std::optional<PartOfSpeech> parse_pos_tag(std::string_view tag) {
  if (tag.size() != 1) return std::nullopt;
  switch (tag[0]) {
    case 'n': return PartOfSpeech::noun;
    case 'v': return PartOfSpeech::verb;
    case 'a':
    case 's': return PartOfSpeech::adjective;
    case 'r': return PartOfSpeech::adverb;
    default: return std::nullopt;
  }
}

std::string to_string(SynsetId id) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08u-%c", id.byte_offset, pos_tag(id.pos));
  return buf;
}

std::string to_string(const TaxonomyNode& node) {
  if (std::holds_alternative<VirtualRoot>(node)) return "<root>";
  return to_string(std::get<SynsetId>(node));
}

namespace {

struct LineContext {
  const std::filesystem::path* file;
  std::size_t line;
};

[[noreturn]] void malformed(const LineContext& ctx, const std::string& what) {
  raise(ErrorKind::MalformedLine,
        ctx.file->string() + ":" + std::to_string(ctx.line) + ": " + what);
}

template <typename Int>
Int parse_int(std::string_view s, int base, const LineContext& ctx, const char* field) {
  Int value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, base);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    malformed(ctx, std::string("bad ") + field + " '" + std::string(s) + "'");
  }
  return value;
}

// WNDB license headers are indented with two spaces.
bool is_header_line(std::string_view line) { return line.starts_with("  "); }

std::string strip_adjective_marker(std::string_view lemma) {
  auto paren = lemma.find('(');
  if (paren != std::string_view::npos && lemma.back() == ')') lemma = lemma.substr(0, paren);
  return text::to_lower(lemma);
}

struct RawSynset {
  Synset synset;
  std::vector<std::pair<std::uint32_t, std::size_t>> hypernym_offsets;  // (offset, line)
};

struct ParsedData {
  std::vector<RawSynset> synsets;
  std::optional<std::string> version;
};

ParsedData parse_data_file(const std::filesystem::path& path, PartOfSpeech pos) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::MissingFile, path.string());
  static const std::regex version_re(R"(WordNet\s+([0-9]+\.[0-9]+))");

  ParsedData out;
  std::string line;
  LineContext ctx{&path, 0};
  while (std::getline(in, line)) {
    ++ctx.line;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    if (is_header_line(line)) {
      std::smatch m;
      if (!out.version && std::regex_search(line, m, version_re)) out.version = m[1].str();
      continue;
    }
    std::string_view view(line);
    auto bar = view.find('|');
    if (bar == std::string_view::npos) malformed(ctx, "missing gloss separator '|'");
    auto fields = text::split_whitespace(view.substr(0, bar));
    std::size_t i = 0;
    auto next = [&](const char* what) -> std::string_view {
      if (i >= fields.size()) malformed(ctx, std::string("truncated before ") + what);
      return fields[i++];
    };

    RawSynset raw;
    raw.synset.id.byte_offset = parse_int<std::uint32_t>(next("synset_offset"), 10, ctx, "synset_offset");
    raw.synset.id.pos = pos;
    parse_int<unsigned>(next("lex_filenum"), 10, ctx, "lex_filenum");
    auto ss_type = parse_pos_tag(next("ss_type"));
    if (!ss_type || *ss_type != pos) malformed(ctx, "ss_type does not match file part of speech");

    auto w_cnt = parse_int<unsigned>(next("w_cnt"), 16, ctx, "w_cnt");
    if (w_cnt == 0) malformed(ctx, "synset has no lemmas");
    for (unsigned w = 0; w < w_cnt; ++w) {
      auto word = next("word");
      parse_int<unsigned>(next("lex_id"), 16, ctx, "lex_id");
      auto lemma = pos == PartOfSpeech::adjective ? strip_adjective_marker(word) : text::to_lower(word);
      if (std::find(raw.synset.lemmas.begin(), raw.synset.lemmas.end(), lemma) == raw.synset.lemmas.end()) {
        raw.synset.lemmas.push_back(std::move(lemma));
      }
    }

    auto p_cnt = parse_int<unsigned>(next("p_cnt"), 10, ctx, "p_cnt");
    for (unsigned p = 0; p < p_cnt; ++p) {
      auto symbol = next("pointer_symbol");
      auto target = parse_int<std::uint32_t>(next("pointer offset"), 10, ctx, "pointer offset");
      auto target_pos = parse_pos_tag(next("pointer pos"));
      auto source_target = next("source/target");
      if (!target_pos) malformed(ctx, "bad pointer part of speech");
      if (source_target.size() != 4) malformed(ctx, "bad source/target field");
      // Only same-pos is-a links take part in depth and subsumer queries.
      if ((symbol == "@" || symbol == "@i") && *target_pos == pos) {
        raw.hypernym_offsets.emplace_back(target, ctx.line);
      }
    }

    if (pos == PartOfSpeech::verb && i < fields.size()) {
      auto f_cnt = parse_int<unsigned>(next("f_cnt"), 10, ctx, "f_cnt");
      for (unsigned f = 0; f < f_cnt; ++f) {
        if (next("frame marker") != "+") malformed(ctx, "bad verb frame marker");
        parse_int<unsigned>(next("f_num"), 10, ctx, "f_num");
        parse_int<unsigned>(next("w_num"), 16, ctx, "w_num");
      }
    }
    if (i != fields.size()) malformed(ctx, "trailing fields before gloss");

    raw.synset.gloss = std::string(text::trim(view.substr(bar + 1)));
    out.synsets.push_back(std::move(raw));
  }
  return out;
}

}  // namespace

std::size_t LexicalStore::size() const noexcept {
  std::size_t n = 0;
  for (const auto& t : tables_) n += t.synsets.size();
  return n;
}

std::size_t LexicalStore::size(PartOfSpeech pos) const noexcept { return table(pos).synsets.size(); }

bool LexicalStore::contains(SynsetId id) const noexcept {
  const auto& t = table(id.pos);
  return t.by_offset.contains(id.byte_offset);
}

std::uint32_t LexicalStore::index_of(SynsetId id) const {
  const auto& t = table(id.pos);
  auto it = t.by_offset.find(id.byte_offset);
  if (it == t.by_offset.end()) raise(ErrorKind::UnknownSynset, to_string(id));
  return it->second;
}

const Synset& LexicalStore::synset(SynsetId id) const { return table(id.pos).synsets[index_of(id)]; }

std::span<const Synset> LexicalStore::synsets(PartOfSpeech pos) const noexcept {
  return table(pos).synsets;
}

std::span<const SynsetId> LexicalStore::synsets_of(std::string_view lemma, PartOfSpeech pos) const {
  auto key = text::normalize_lemma(lemma);
  if (key.empty()) return {};
  const auto& index = table(pos).lemma_index;
  auto it = index.find(key);
  if (it == index.end()) return {};
  return it->second;
}

bool LexicalStore::is_indexed(std::string_view lemma, PartOfSpeech pos) const {
  return table(pos).lemma_index.contains(std::string(lemma));
}

namespace {

struct SuffixRule {
  std::string_view suffix;
  std::string_view ending;
};

std::span<const SuffixRule> detachment_rules(PartOfSpeech pos) {
  static constexpr SuffixRule noun[] = {{"s", ""},     {"ses", "s"},  {"xes", "x"}, {"zes", "z"},
                                        {"ches", "ch"}, {"shes", "sh"}, {"men", "man"}, {"ies", "y"}};
  static constexpr SuffixRule verb[] = {{"s", ""},   {"ies", "y"}, {"es", "e"},  {"es", ""},
                                        {"ed", "e"}, {"ed", ""},   {"ing", "e"}, {"ing", ""}};
  static constexpr SuffixRule adjective[] = {{"er", ""}, {"est", ""}, {"er", "e"}, {"est", "e"}};
  switch (pos) {
    case PartOfSpeech::noun: return noun;
    case PartOfSpeech::verb: return verb;
    case PartOfSpeech::adjective: return adjective;
    case PartOfSpeech::adverb: return {};
  }
  return {};
}

}  // namespace

std::vector<std::string> LexicalStore::lemmatize(std::string_view form, PartOfSpeech pos) const {
  std::vector<std::string> out;
  auto key = text::normalize_lemma(form);
  if (key.empty()) return out;
  auto keep = [&](std::string candidate) {
    if (!is_indexed(candidate, pos)) return;
    if (std::find(out.begin(), out.end(), candidate) == out.end()) out.push_back(std::move(candidate));
  };

  keep(key);
  const auto& exceptions = table(pos).exceptions;
  if (auto it = exceptions.find(key); it != exceptions.end()) {
    for (const auto& base : it->second) keep(base);
  }
  for (const auto& rule : detachment_rules(pos)) {
    if (key.size() > rule.suffix.size() && key.ends_with(rule.suffix)) {
      std::string candidate = key.substr(0, key.size() - rule.suffix.size());
      candidate += rule.ending;
      keep(std::move(candidate));
    }
  }
  return out;
}

int LexicalStore::depth(SynsetId id) const { return table(id.pos).depth[index_of(id)]; }

std::vector<AncestorDepth> LexicalStore::hypernym_ancestors(SynsetId id) const {
  const auto& t = table(id.pos);
  const auto& anc = t.ancestors[index_of(id)];
  std::vector<AncestorDepth> out;
  out.reserve(anc.size() + 1);
  out.push_back({VirtualRoot{}, 1});
  for (auto idx : anc) out.push_back({t.synsets[idx].id, t.depth[idx]});
  std::stable_sort(out.begin(), out.end(), [](const AncestorDepth& a, const AncestorDepth& b) {
    return a.depth < b.depth;
  });
  return out;
}

namespace {

// Returns the table index of the subsumer, or nullopt for VirtualRoot.
std::optional<std::uint32_t> find_subsumer(const std::vector<std::uint32_t>& anc_a, std::uint32_t a,
                                           const std::vector<std::uint32_t>& anc_b, std::uint32_t b,
                                           const std::vector<int>& depth) {
  const int depth_a = depth[a];
  const int depth_b = depth[b];
  std::optional<std::uint32_t> best;
  int best_depth = 1;
  auto ia = anc_a.begin();
  auto ib = anc_b.begin();
  while (ia != anc_a.end() && ib != anc_b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      const auto node = *ia;
      const int d = depth[node];
      // A subsumer must sit strictly above each argument unless it is the argument.
      const bool eligible = (node == a || d < depth_a) && (node == b || d < depth_b);
      // Indices ascend with byte offset, so strict '>' keeps the smallest offset on ties.
      if (eligible && d > best_depth) {
        best = node;
        best_depth = d;
      }
      ++ia;
      ++ib;
    }
  }
  return best;
}

}  // namespace

AncestorDepth LexicalStore::least_common_subsumer(SynsetId a, SynsetId b) const {
  if (a.pos != b.pos) raise(ErrorKind::PosMismatch, to_string(a) + " vs " + to_string(b));
  const auto& t = table(a.pos);
  auto ia = index_of(a);
  auto ib = index_of(b);
  auto found = find_subsumer(t.ancestors[ia], ia, t.ancestors[ib], ib, t.depth);
  if (!found) return {VirtualRoot{}, 1};
  return {t.synsets[*found].id, t.depth[*found]};
}

int LexicalStore::subsumer_depth(SynsetId a, SynsetId b) const {
  if (a.pos != b.pos) raise(ErrorKind::PosMismatch, to_string(a) + " vs " + to_string(b));
  const auto& t = table(a.pos);
  auto ia = index_of(a);
  auto ib = index_of(b);
  auto found = find_subsumer(t.ancestors[ia], ia, t.ancestors[ib], ib, t.depth);
  return found ? t.depth[*found] : 1;
}

namespace {

void parse_index_file(const std::filesystem::path& path, PartOfSpeech pos,
                      const std::unordered_map<std::uint32_t, std::uint32_t>& by_offset,
                      const std::vector<Synset>& synsets,
                      std::unordered_map<std::string, std::vector<SynsetId>>& index) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::MissingFile, path.string());
  std::string line;
  LineContext ctx{&path, 0};
  while (std::getline(in, line)) {
    ++ctx.line;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_header_line(line) || text::trim(line).empty()) continue;
    auto fields = text::split_whitespace(line);
    if (fields.size() < 6) malformed(ctx, "too few fields");
    std::string lemma = text::to_lower(fields[0]);
    auto tag = parse_pos_tag(fields[1]);
    if (!tag || *tag != pos) malformed(ctx, "pos field does not match file");
    auto synset_cnt = parse_int<unsigned>(fields[2], 10, ctx, "synset_cnt");
    auto p_cnt = parse_int<unsigned>(fields[3], 10, ctx, "p_cnt");
    std::size_t first_offset = 4 + p_cnt + 2;
    if (fields.size() != first_offset + synset_cnt) malformed(ctx, "synset count does not match offsets");
    parse_int<unsigned>(fields[4 + p_cnt], 10, ctx, "sense_cnt");
    parse_int<unsigned>(fields[5 + p_cnt], 10, ctx, "tagsense_cnt");

    auto& ids = index[lemma];
    for (std::size_t k = first_offset; k < fields.size(); ++k) {
      auto offset = parse_int<std::uint32_t>(fields[k], 10, ctx, "synset_offset");
      auto it = by_offset.find(offset);
      if (it == by_offset.end()) {
        raise(ErrorKind::DanglingPointer, path.string() + ":" + std::to_string(ctx.line) + ": '" + lemma +
                                              "' -> " + to_string(SynsetId{offset, pos}));
      }
      const auto& lemmas = synsets[it->second].lemmas;
      if (std::find(lemmas.begin(), lemmas.end(), lemma) == lemmas.end()) {
        malformed(ctx, "'" + lemma + "' is not a lemma of " + to_string(SynsetId{offset, pos}));
      }
      SynsetId id{offset, pos};
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
  }
}

void parse_exception_file(const std::filesystem::path& path,
                          std::unordered_map<std::string, std::vector<std::string>>& exceptions) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::MissingFile, path.string());
  std::string line;
  LineContext ctx{&path, 0};
  while (std::getline(in, line)) {
    ++ctx.line;
    auto fields = text::split_whitespace(line);
    if (fields.empty()) continue;
    if (fields.size() < 2) malformed(ctx, "exception entry without base form");
    auto& bases = exceptions[text::to_lower(fields[0])];
    for (std::size_t k = 1; k < fields.size(); ++k) {
      auto base = text::to_lower(fields[k]);
      if (std::find(bases.begin(), bases.end(), base) == bases.end()) bases.push_back(std::move(base));
    }
  }
}

// Depth-first search over hypernym links in ascending offset order; any link
// that reaches a node still on the stack closes a cycle and is dropped.
void break_cycles(std::vector<std::vector<std::uint32_t>>& parents, const std::vector<Synset>& synsets,
                  std::vector<DroppedEdge>& dropped) {
  enum : std::uint8_t { kWhite, kGray, kBlack };
  std::vector<std::uint8_t> color(parents.size(), kWhite);
  struct Frame {
    std::uint32_t node;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (std::uint32_t start = 0; start < parents.size(); ++start) {
    if (color[start] != kWhite) continue;
    stack.push_back({start, 0});
    color[start] = kGray;
    while (!stack.empty()) {
      auto& frame = stack.back();
      auto& links = parents[frame.node];
      if (frame.next == links.size()) {
        color[frame.node] = kBlack;
        stack.pop_back();
        continue;
      }
      auto target = links[frame.next];
      if (color[target] == kGray) {
        dropped.push_back({synsets[frame.node].id, synsets[target].id});
        links.erase(links.begin() + static_cast<std::ptrdiff_t>(frame.next));
        continue;
      }
      ++frame.next;
      if (color[target] == kWhite) {
        color[target] = kGray;
        stack.push_back({target, 0});
      }
    }
  }
}

}  // namespace

LexicalStore load_database(const std::filesystem::path& directory) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(directory)) raise(ErrorKind::MissingFile, directory.string() + " is not a directory");

  LexicalStore store;
  for (auto pos : kAllPartsOfSpeech) {
    auto suffix = std::string(file_suffix(pos));
    auto data_path = directory / ("data." + suffix);
    auto index_path = directory / ("index." + suffix);
    auto exc_path = directory / (suffix + ".exc");
    const bool required = pos == PartOfSpeech::verb;
    const bool has_data = fs::exists(data_path);
    const bool has_index = fs::exists(index_path);
    if (required || has_data || has_index) {
      if (!has_data) raise(ErrorKind::MissingFile, data_path.string());
      if (!has_index) raise(ErrorKind::MissingFile, index_path.string());
    } else {
      continue;
    }
    if (required && !fs::exists(exc_path)) raise(ErrorKind::MissingFile, exc_path.string());

    auto& t = store.table(pos);
    auto parsed = parse_data_file(data_path, pos);
    if (parsed.version && store.version_ == "unknown") store.version_ = *parsed.version;

    std::sort(parsed.synsets.begin(), parsed.synsets.end(), [](const RawSynset& a, const RawSynset& b) {
      return a.synset.id.byte_offset < b.synset.id.byte_offset;
    });
    for (std::size_t k = 0; k < parsed.synsets.size(); ++k) {
      auto offset = parsed.synsets[k].synset.id.byte_offset;
      if (!t.by_offset.emplace(offset, static_cast<std::uint32_t>(k)).second) {
        raise(ErrorKind::MalformedLine, data_path.string() + ": duplicate synset offset " + std::to_string(offset));
      }
    }

    std::vector<std::vector<std::uint32_t>> parents(parsed.synsets.size());
    for (std::size_t k = 0; k < parsed.synsets.size(); ++k) {
      for (auto [offset, line] : parsed.synsets[k].hypernym_offsets) {
        auto it = t.by_offset.find(offset);
        if (it == t.by_offset.end()) {
          raise(ErrorKind::DanglingPointer, data_path.string() + ":" + std::to_string(line) + ": hypernym " +
                                                to_string(SynsetId{offset, pos}) + " not found");
        }
        if (std::find(parents[k].begin(), parents[k].end(), it->second) == parents[k].end()) {
          parents[k].push_back(it->second);
        }
      }
      t.synsets.push_back(std::move(parsed.synsets[k].synset));
    }
    break_cycles(parents, t.synsets, store.dropped_edges_);
    for (std::size_t k = 0; k < t.synsets.size(); ++k) {
      auto& hyps = t.synsets[k].hypernyms;
      for (auto p : parents[k]) hyps.push_back(t.synsets[p].id);
    }

    // Shortest-path depth: multi-source BFS downward from the roots.
    const auto n = t.synsets.size();
    std::vector<std::vector<std::uint32_t>> children(n);
    for (std::uint32_t k = 0; k < n; ++k) {
      for (auto p : parents[k]) children[p].push_back(k);
    }
    t.depth.assign(n, 0);
    std::vector<std::uint32_t> frontier;
    for (std::uint32_t k = 0; k < n; ++k) {
      if (parents[k].empty()) {
        t.depth[k] = 2;
        frontier.push_back(k);
      }
    }
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      auto node = frontier[head];
      for (auto child : children[node]) {
        if (t.depth[child] == 0) {
          t.depth[child] = t.depth[node] + 1;
          frontier.push_back(child);
        }
      }
    }

    // Ancestor closure in topological order (parents before children).
    std::vector<std::uint32_t> pending(n);
    for (std::uint32_t k = 0; k < n; ++k) pending[k] = static_cast<std::uint32_t>(parents[k].size());
    std::vector<std::uint32_t> order;
    order.reserve(n);
    for (std::uint32_t k = 0; k < n; ++k) {
      if (pending[k] == 0) order.push_back(k);
    }
    for (std::size_t head = 0; head < order.size(); ++head) {
      for (auto child : children[order[head]]) {
        if (--pending[child] == 0) order.push_back(child);
      }
    }
    t.ancestors.assign(n, {});
    for (auto node : order) {
      auto& anc = t.ancestors[node];
      anc.push_back(node);
      for (auto p : parents[node]) anc.insert(anc.end(), t.ancestors[p].begin(), t.ancestors[p].end());
      std::sort(anc.begin(), anc.end());
      anc.erase(std::unique(anc.begin(), anc.end()), anc.end());
    }

    parse_index_file(index_path, pos, t.by_offset, t.synsets, t.lemma_index);
    for (const auto& s : t.synsets) {
      for (const auto& lemma : s.lemmas) {
        auto& ids = t.lemma_index[lemma];
        if (std::find(ids.begin(), ids.end(), s.id) == ids.end()) ids.push_back(s.id);
      }
    }
    if (fs::exists(exc_path)) parse_exception_file(exc_path, t.exceptions);
    t.loaded = true;
  }
  return store;
}

}  // namespace bloomtax

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace bloomtax {

enum class PartOfSpeech : std::uint8_t { noun, verb, adjective, adverb };

inline constexpr std::array<PartOfSpeech, 4> kAllPartsOfSpeech = {
    PartOfSpeech::noun, PartOfSpeech::verb, PartOfSpeech::adjective, PartOfSpeech::adverb};

/// WNDB file suffix: "noun", "verb", "adj", "adv".
std::string_view file_suffix(PartOfSpeech pos);
/// Single-letter WNDB tag: n, v, a, r.
char pos_tag(PartOfSpeech pos);
/// Accepts n, v, a, s (satellite adjective) and r.
std::optional<PartOfSpeech> parse_pos_tag(std::string_view tag);

struct SynsetId {
  std::uint32_t byte_offset = 0;
  PartOfSpeech pos = PartOfSpeech::verb;

  friend auto operator<=>(const SynsetId&, const SynsetId&) = default;
};

/// "02304982-v", the conventional printed form.
std::string to_string(SynsetId id);

/// Sentinel ancestor above every taxonomy root; depth 1 by definition.
struct VirtualRoot {
  friend auto operator<=>(const VirtualRoot&, const VirtualRoot&) = default;
};

using TaxonomyNode = std::variant<VirtualRoot, SynsetId>;

std::string to_string(const TaxonomyNode& node);

struct AncestorDepth {
  TaxonomyNode node;
  int depth = 0;

  friend bool operator==(const AncestorDepth&, const AncestorDepth&) = default;
};

struct Synset {
  SynsetId id;
  std::vector<std::string> lemmas;   // lowercase, multiword joined with '_'
  std::vector<SynsetId> hypernyms;   // same-pos hypernym links only
  std::string gloss;
};

/// A hypernym link removed at load time because it closed a cycle.
struct DroppedEdge {
  SynsetId from;
  SynsetId to;
};

/// Immutable in-memory view of a WNDB database. All queries are const and
/// safe to call from any number of threads once load_database has returned.
class LexicalStore {
 public:
  LexicalStore() = default;

  /// Version string found in the data file headers ("3.0"), or "unknown".
  const std::string& version() const noexcept { return version_; }

  std::size_t size() const noexcept;
  std::size_t size(PartOfSpeech pos) const noexcept;
  bool has_pos(PartOfSpeech pos) const noexcept { return table(pos).loaded; }

  bool contains(SynsetId id) const noexcept;
  const Synset& synset(SynsetId id) const;
  /// All synsets of one part of speech, ascending byte offset.
  std::span<const Synset> synsets(PartOfSpeech pos) const noexcept;

  /// Synsets listing `lemma` (case-insensitive, spaces -> '_') in index order.
  std::span<const SynsetId> synsets_of(std::string_view lemma, PartOfSpeech pos) const;

  /// Morphy: original form if indexed, then exception-file bases, then
  /// suffix-detachment candidates; only indexed forms survive, deduplicated.
  std::vector<std::string> lemmatize(std::string_view form, PartOfSpeech pos) const;

  /// Node count on the shortest path from VirtualRoot (roots have depth 2).
  int depth(SynsetId id) const;

  /// Every ancestor reachable by hypernym links, including `id` itself and
  /// VirtualRoot, ordered by ascending depth then node order.
  std::vector<AncestorDepth> hypernym_ancestors(SynsetId id) const;

  /// Deepest common ancestor that lies strictly above each argument (or is
  /// the argument itself). Ties go to the smallest byte offset; VirtualRoot
  /// when the two synsets share no real ancestor.
  AncestorDepth least_common_subsumer(SynsetId a, SynsetId b) const;

  /// Depth of the least common subsumer only, without building the node.
  int subsumer_depth(SynsetId a, SynsetId b) const;

  std::span<const DroppedEdge> dropped_cycle_edges() const noexcept { return dropped_edges_; }

 private:
  friend LexicalStore load_database(const std::filesystem::path& directory);

  struct PosTable {
    bool loaded = false;
    std::vector<Synset> synsets;                          // ascending offset
    std::unordered_map<std::uint32_t, std::uint32_t> by_offset;
    std::vector<int> depth;
    std::vector<std::vector<std::uint32_t>> ancestors;    // sorted indices, self included
    std::unordered_map<std::string, std::vector<SynsetId>> lemma_index;
    std::unordered_map<std::string, std::vector<std::string>> exceptions;
  };

  const PosTable& table(PartOfSpeech pos) const noexcept {
    return tables_[static_cast<std::size_t>(pos)];
  }
  PosTable& table(PartOfSpeech pos) noexcept { return tables_[static_cast<std::size_t>(pos)]; }
  std::uint32_t index_of(SynsetId id) const;
  bool is_indexed(std::string_view lemma, PartOfSpeech pos) const;

  std::array<PosTable, 4> tables_;
  std::string version_ = "unknown";
  std::vector<DroppedEdge> dropped_edges_;
};

/// Parses index.<pos>, data.<pos> and <pos>.exc from `directory`. The verb
/// files are required; other parts of speech load when both files exist.
LexicalStore load_database(const std::filesystem::path& directory);

}  // namespace bloomtax

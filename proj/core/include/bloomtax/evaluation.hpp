#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bloomtax/avca.hpp"
#include "bloomtax/verbset.hpp"
#include "bloomtax/wordnet_store.hpp"

namespace bloomtax {

struct LabeledItem {
  std::string item;
  std::string label;
};

/// `item<TAB>label` lines, '#' comments and blank lines skipped.
std::vector<LabeledItem> parse_labeled_items(std::string_view content, std::string_view origin = "labels");
std::vector<LabeledItem> load_labeled_items(const std::filesystem::path& file);

struct ClassCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

/// One-vs-rest confusion counts for every class.
class ConfusionMatrix {
 public:
  ConfusionMatrix(std::vector<std::string> classes, std::vector<ClassCounts> counts, std::size_t total);

  const std::vector<std::string>& classes() const noexcept { return classes_; }
  const ClassCounts& counts(std::string_view cls) const;
  std::size_t total() const noexcept { return total_; }
  std::size_t correct() const;

 private:
  std::vector<std::string> classes_;
  std::vector<ClassCounts> counts_;
  std::size_t total_;
};

/// Pairs predictions with gold labels by item text. Throws LabelMismatch when
/// an item is missing from either side (or repeated), UnknownClass when a
/// label is not one of `classes`.
ConfusionMatrix build_confusion(std::span<const LabeledItem> predictions, std::span<const LabeledItem> gold,
                                std::span<const std::string> classes);

struct MetricRow {
  std::string label;  // class name, or "Macro-Average"
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double error_rate = 0.0;
  bool degenerate = false;  // some metric had a zero denominator and reports 0
};

MetricRow metric_row(const ConfusionMatrix& matrix, std::string_view cls);
std::vector<MetricRow> metric_rows(const ConfusionMatrix& matrix);

/// Unweighted per-column arithmetic mean across classes.
MetricRow macro_average(std::span<const MetricRow> rows);

/// Table with Accuracy, Precision, Recall, F1, Error Rate columns and the
/// macro row last.
std::string render_metric_table(std::span<const MetricRow> rows, const MetricRow& macro);

struct Reclassification {
  std::string verb;
  std::string manual_level;
  std::string predicted_level;
};

struct AuditReport {
  std::size_t total = 0;
  std::size_t agree = 0;
  std::vector<Reclassification> reclassified;
  std::vector<std::string> unknown_verbs;
  std::string lexicon_version;

  double correctness() const { return total == 0 ? 0.0 : static_cast<double>(agree) / static_cast<double>(total); }
};

/// Classifies every (level, verb) entry of `candidate` against the registry
/// and counts agreement with the candidate's own level.
AuditReport audit_verbset(const LexicalStore& store, const TaxonomyRegistry& registry,
                          const SourceVerbList& candidate, const ClassifierOptions& options = {});

}  // namespace bloomtax

#include "bloomtax/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "bloomtax/error.hpp"
#include "bloomtax/similarity.hpp"
#include "bloomtax/text.hpp"

namespace bloomtax {

std::vector<LabeledItem> parse_labeled_items(std::string_view content, std::string_view origin) {
  std::vector<LabeledItem> out;
  std::size_t line_no = 0;
  for (auto line : text::split_char(content, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    auto tab = trimmed.rfind('\t');
    if (tab == std::string_view::npos) {
      raise(ErrorKind::MalformedRow, std::string(origin) + ":" + std::to_string(line_no) + ": expected item<TAB>label");
    }
    LabeledItem item{std::string(text::trim(trimmed.substr(0, tab))), std::string(text::trim(trimmed.substr(tab + 1)))};
    if (item.item.empty() || item.label.empty()) {
      raise(ErrorKind::MalformedRow, std::string(origin) + ":" + std::to_string(line_no) + ": empty item or label");
    }
    out.push_back(std::move(item));
  }
  return out;
}

std::vector<LabeledItem> load_labeled_items(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) raise(ErrorKind::Io, "cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_labeled_items(buf.str(), file.string());
}

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> classes, std::vector<ClassCounts> counts, std::size_t total)
    : classes_(std::move(classes)), counts_(std::move(counts)), total_(total) {}

const ClassCounts& ConfusionMatrix::counts(std::string_view cls) const {
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (classes_[i] == cls) return counts_[i];
  }
  raise(ErrorKind::UnknownClass, std::string(cls));
}

std::size_t ConfusionMatrix::correct() const {
  std::size_t n = 0;
  for (const auto& c : counts_) n += c.tp;
  return n;
}

ConfusionMatrix build_confusion(std::span<const LabeledItem> predictions, std::span<const LabeledItem> gold,
                                std::span<const std::string> classes) {
  auto class_index = [&](const std::string& label) {
    auto it = std::find(classes.begin(), classes.end(), label);
    if (it == classes.end()) raise(ErrorKind::UnknownClass, "'" + label + "'");
    return static_cast<std::size_t>(it - classes.begin());
  };

  std::map<std::string, std::size_t> predicted;
  for (const auto& p : predictions) {
    if (!predicted.emplace(p.item, class_index(p.label)).second) {
      raise(ErrorKind::LabelMismatch, "duplicate prediction for '" + p.item + "'");
    }
  }
  std::vector<ClassCounts> counts(classes.size());
  std::map<std::string, bool> seen;
  for (const auto& g : gold) {
    const auto truth = class_index(g.label);
    if (!seen.emplace(g.item, true).second) raise(ErrorKind::LabelMismatch, "duplicate gold item '" + g.item + "'");
    auto it = predicted.find(g.item);
    if (it == predicted.end()) raise(ErrorKind::LabelMismatch, "'" + g.item + "' has no prediction");
    const auto guess = it->second;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      const bool is_pred = guess == c;
      const bool is_gold = truth == c;
      if (is_pred && is_gold) {
        ++counts[c].tp;
      } else if (is_pred) {
        ++counts[c].fp;
      } else if (is_gold) {
        ++counts[c].fn;
      } else {
        ++counts[c].tn;
      }
    }
  }
  for (const auto& [item, cls] : predicted) {
    if (!seen.contains(item)) raise(ErrorKind::LabelMismatch, "'" + item + "' has no gold label");
  }
  return ConfusionMatrix({classes.begin(), classes.end()}, std::move(counts), gold.size());
}

namespace {

double ratio(std::size_t num, std::size_t den, bool& degenerate) {
  if (den == 0) {
    degenerate = true;
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

MetricRow metric_row(const ConfusionMatrix& matrix, std::string_view cls) {
  const auto& c = matrix.counts(cls);
  MetricRow row;
  row.label = std::string(cls);
  const auto n = matrix.total();
  row.accuracy = ratio(c.tp + c.tn, n, row.degenerate);
  row.precision = ratio(c.tp, c.tp + c.fp, row.degenerate);
  row.recall = ratio(c.tp, c.tp + c.fn, row.degenerate);
  row.error_rate = ratio(c.fp + c.fn, n, row.degenerate);
  if (row.precision + row.recall > 0.0) {
    row.f1 = 2.0 * row.precision * row.recall / (row.precision + row.recall);
  } else {
    row.degenerate = true;
  }
  return row;
}

std::vector<MetricRow> metric_rows(const ConfusionMatrix& matrix) {
  std::vector<MetricRow> rows;
  for (const auto& cls : matrix.classes()) rows.push_back(metric_row(matrix, cls));
  return rows;
}

MetricRow macro_average(std::span<const MetricRow> rows) {
  if (rows.empty()) raise(ErrorKind::EmptyInput, "macro average of no rows");
  MetricRow out;
  out.label = "Macro-Average";
  for (const auto& r : rows) {
    out.accuracy += r.accuracy;
    out.precision += r.precision;
    out.recall += r.recall;
    out.f1 += r.f1;
    out.error_rate += r.error_rate;
    out.degenerate = out.degenerate || r.degenerate;
  }
  const auto n = static_cast<double>(rows.size());
  out.accuracy /= n;
  out.precision /= n;
  out.recall /= n;
  out.f1 /= n;
  out.error_rate /= n;
  return out;
}

std::string render_metric_table(std::span<const MetricRow> rows, const MetricRow& macro) {
  std::size_t width = std::string_view("Level / Measures").size();
  for (const auto& r : rows) width = std::max(width, r.label.size());
  width = std::max(width, macro.label.size());

  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-*s  %10s  %10s  %10s  %10s  %10s\n", static_cast<int>(width), "Level / Measures",
                "Accuracy", "Precision", "Recall", "F1", "Error Rate");
  out += buf;
  auto line = [&](const MetricRow& r) {
    std::snprintf(buf, sizeof buf, "%-*s  %10.8f  %10.8f  %10.8f  %10.8f  %10.8f%s\n", static_cast<int>(width),
                  r.label.c_str(), r.accuracy, r.precision, r.recall, r.f1, r.error_rate, r.degenerate ? "  *" : "");
    out += buf;
  };
  for (const auto& r : rows) line(r);
  line(macro);
  return out;
}

AuditReport audit_verbset(const LexicalStore& store, const TaxonomyRegistry& registry,
                          const SourceVerbList& candidate, const ClassifierOptions& options) {
  if (!registry.has_domain(candidate.domain)) {
    raise(ErrorKind::UnknownDomain, std::string(to_string(candidate.domain)) + " is not registered");
  }
  AuditReport report;
  report.lexicon_version = store.version();
  // Walk levels in taxonomy order so the reclassification list is stable.
  for (auto level : levels_of(candidate.domain)) {
    auto it = candidate.entries.find(std::string(level));
    if (it == candidate.entries.end()) continue;
    for (const auto& verb : it->second) {
      if (verb_senses(store, verb).empty()) {
        report.unknown_verbs.push_back(verb);
        continue;
      }
      auto result = classify_verb(store, registry, verb, candidate.domain, options);
      ++report.total;
      if (result.chosen_level == level) {
        ++report.agree;
      } else {
        report.reclassified.push_back({verb, std::string(level), result.chosen_level});
      }
    }
  }
  return report;
}

}  // namespace bloomtax

#include "bloomtax/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bloomtax/error.hpp"

namespace bloomtax {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kConsensusFormat = "bloomtax-consensus/1";

[[noreturn]] void bad_document(std::string_view origin, const std::string& what) {
  raise(ErrorKind::MalformedRow, std::string(origin) + ": " + what);
}

ordered_json sense_json(SynsetId id) { return to_string(id); }

}  // namespace

std::string consensus_to_json(const ConsensusVerbSet& set) {
  ordered_json doc;
  doc["format"] = kConsensusFormat;
  doc["domain"] = to_string(set.domain);
  doc["majority_threshold"] = set.majority_threshold;
  doc["conditional_threshold"] = set.conditional_threshold;
  doc["sources"] = set.source_ids;
  auto& levels = doc["levels"] = ordered_json::array();
  for (auto name : levels_of(set.domain)) {
    ordered_json level;
    level["level"] = name;
    auto it = set.entries.find(std::string(name));
    level["verbs"] = it == set.entries.end() ? ordered_json::array() : ordered_json(it->second);
    levels.push_back(std::move(level));
  }
  auto& prov = doc["provenance"] = ordered_json::object();
  for (const auto& [verb, p] : set.provenance) {
    prov[verb] = {{"level", p.level},
                  {"agreement_ratio", p.agreement_ratio},
                  {"supporting_sources", p.supporting_sources},
                  {"decision", to_string(p.decision)}};
  }
  return doc.dump(2) + "\n";
}

ConsensusVerbSet consensus_from_json(std::string_view json, std::string_view origin) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    bad_document(origin, e.what());
  }
  try {
    if (doc.value("format", "") != kConsensusFormat) bad_document(origin, "not a bloomtax consensus document");
    ConsensusVerbSet set;
    auto domain = parse_domain(doc.at("domain").get<std::string>());
    if (!domain) raise(ErrorKind::UnknownDomain, std::string(origin) + ": " + doc.at("domain").get<std::string>());
    set.domain = *domain;
    set.majority_threshold = doc.at("majority_threshold").get<double>();
    set.conditional_threshold = doc.at("conditional_threshold").get<double>();
    set.source_ids = doc.at("sources").get<std::vector<std::string>>();
    for (const auto& level : doc.at("levels")) {
      auto name = canonical_level(set.domain, level.at("level").get<std::string>());
      if (!name) raise(ErrorKind::UnknownLevel, std::string(origin) + ": " + level.at("level").get<std::string>());
      auto& verbs = set.entries[std::string(*name)];
      for (const auto& v : level.at("verbs")) verbs.insert(v.get<std::string>());
    }
    for (const auto& [verb, p] : doc.at("provenance").items()) {
      VerbProvenance vp;
      vp.level = p.at("level").get<std::string>();
      vp.agreement_ratio = p.at("agreement_ratio").get<double>();
      vp.supporting_sources = p.at("supporting_sources").get<std::set<std::string>>();
      auto decision = parse_decision(p.at("decision").get<std::string>());
      if (!decision) bad_document(origin, "unknown decision for '" + verb + "'");
      vp.decision = *decision;
      set.provenance.emplace(verb, std::move(vp));
    }
    return set;
  } catch (const nlohmann::json::exception& e) {
    bad_document(origin, e.what());
  }
}

ConsensusVerbSet load_consensus(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) raise(ErrorKind::Io, "cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return consensus_from_json(buf.str(), file.string());
}

void save_consensus(const ConsensusVerbSet& set, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) raise(ErrorKind::Io, "cannot write " + file.string());
  out << consensus_to_json(set);
  if (!out) raise(ErrorKind::Io, "write failed for " + file.string());
}

std::string report_to_json(const ClassificationReport& report, const ChunkResult* chunk, std::string_view question) {
  ordered_json doc;
  if (chunk != nullptr) {
    doc["question"] = question;
    doc["action_verb"] = chunk->action_verb;
    doc["level_hint"] = chunk->level_hint ? ordered_json(*chunk->level_hint) : ordered_json(nullptr);
    doc["matched_pattern"] = chunk->matched_pattern ? ordered_json(*chunk->matched_pattern) : ordered_json(nullptr);
  }
  doc["query_verb"] = report.query_verb;
  doc["domain"] = to_string(report.domain);
  doc["chosen_level"] = report.chosen_level;
  doc["decision_path"] = to_string(report.decision_path);
  doc["tied_levels"] = report.tied_levels;
  auto& levels = doc["levels"] = ordered_json::array();
  for (const auto& s : report.level_scores) {
    ordered_json level;
    level["level"] = s.level;
    level["max_sim"] = s.max_sim;
    level["area"] = s.area;
    auto& pairs = level["pairs"] = ordered_json::array();
    for (const auto& p : s.pair_scores) {
      pairs.push_back({{"verb", p.list_verb},
                       {"score", p.score},
                       {"query_sense", sense_json(p.best_query_sense)},
                       {"verb_sense", sense_json(p.best_list_sense)}});
    }
    level["skipped"] = s.skipped_verbs;
    levels.push_back(std::move(level));
  }
  doc["skipped_verbs"] = report.skipped_verbs;
  doc["lexicon_version"] = report.lexicon_version;
  return doc.dump();
}

std::string metrics_to_json(std::span<const MetricRow> rows, const MetricRow& macro, const ConfusionMatrix& matrix,
                            std::string_view lexicon_version) {
  auto row_json = [](const MetricRow& r) {
    return ordered_json{{"label", r.label},         {"accuracy", r.accuracy}, {"precision", r.precision},
                        {"recall", r.recall},       {"f1", r.f1},             {"error_rate", r.error_rate},
                        {"degenerate", r.degenerate}};
  };
  ordered_json doc;
  doc["total"] = matrix.total();
  doc["correct"] = matrix.correct();
  auto& classes = doc["classes"] = ordered_json::array();
  for (const auto& r : rows) {
    auto entry = row_json(r);
    const auto& c = matrix.counts(r.label);
    entry["tp"] = c.tp;
    entry["fp"] = c.fp;
    entry["fn"] = c.fn;
    entry["tn"] = c.tn;
    classes.push_back(std::move(entry));
  }
  doc["macro_average"] = row_json(macro);
  doc["lexicon_version"] = lexicon_version;
  return doc.dump();
}

std::string audit_to_json(const AuditReport& report) {
  ordered_json doc;
  doc["total"] = report.total;
  doc["agree"] = report.agree;
  doc["correctness"] = report.correctness();
  auto& re = doc["reclassified"] = ordered_json::array();
  for (const auto& r : report.reclassified) {
    re.push_back({{"verb", r.verb}, {"manual_level", r.manual_level}, {"predicted_level", r.predicted_level}});
  }
  doc["unknown_verbs"] = report.unknown_verbs;
  doc["lexicon_version"] = report.lexicon_version;
  return doc.dump();
}

}  // namespace bloomtax

#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bloomtax/avca.hpp"
#include "bloomtax/chunker.hpp"
#include "bloomtax/error.hpp"
#include "bloomtax/evaluation.hpp"
#include "bloomtax/json_io.hpp"
#include "bloomtax/similarity.hpp"
#include "bloomtax/text.hpp"
#include "bloomtax/verbset.hpp"
#include "bloomtax/wordnet_store.hpp"

namespace bloomtax::cli {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

struct CliConfig {
  std::string wordnet_dir;
  std::vector<std::string> verbset_paths;
  std::string grammar_path;
  std::string domain = "cognitive";
  std::string format = "text";
  bool explain = false;
};

// Problems with flags or input files; exit status 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Session {
  LexicalStore store;
  TaxonomyRegistry registry;
  Grammar grammar;
  DomainName domain = DomainName::cognitive;
};

bool json_output(const CliConfig& config) { return config.format == "json"; }

DomainName resolve_domain(const CliConfig& config) {
  auto domain = parse_domain(config.domain);
  if (!domain) throw ConfigError("unknown domain '" + config.domain + "'");
  return *domain;
}

std::string resolve_wordnet_dir(const CliConfig& config) {
  if (!config.wordnet_dir.empty()) return config.wordnet_dir;
  if (const char* env = std::getenv(kWordnetEnv); env != nullptr && *env != '\0') return env;
  throw ConfigError(std::string("no WordNet directory: pass --wordnet or set ") + kWordnetEnv);
}

void require_file(const std::string& path, const char* what) {
  if (!fs::is_regular_file(path)) throw ConfigError(std::string(what) + " not found: " + path);
}

Session open_session(const CliConfig& config) {
  Session s;
  s.domain = resolve_domain(config);
  auto wordnet = resolve_wordnet_dir(config);
  if (!fs::is_directory(wordnet)) throw ConfigError("WordNet directory not found: " + wordnet);
  if (config.verbset_paths.empty()) throw ConfigError("--verbset is required");
  for (const auto& p : config.verbset_paths) require_file(p, "verb set");
  if (!config.grammar_path.empty()) require_file(config.grammar_path, "grammar");

  s.store = load_database(wordnet);
  std::vector<ConsensusVerbSet> sets;
  for (const auto& p : config.verbset_paths) sets.push_back(load_consensus(p));
  s.registry = registry_from(sets);
  if (!s.registry.has_domain(s.domain)) {
    throw ConfigError("verb sets do not cover the " + std::string(to_string(s.domain)) + " domain");
  }
  s.grammar = config.grammar_path.empty() ? default_grammar() : load_grammar(config.grammar_path);
  return s;
}

std::string fixed(double value, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

void print_header(std::ostream& out, const Session& s) {
  out << "# lexicon: WordNet " << s.store.version() << "; domain: " << to_string(s.domain) << "\n";
}

void print_level_table(std::ostream& out, const ClassificationReport& report) {
  out << "    " << pad("level", 16) << pad("max_sim", 9) << pad("area", 9) << pad("mean", 9) << "best match\n";
  for (const auto& level : report.level_scores) {
    std::string best;
    for (const auto& p : level.pair_scores) {
      if (p.score == level.max_sim) {
        best = text::display_lemma(p.list_verb);
        break;
      }
    }
    out << "    " << pad(level.level, 16) << pad(fixed(level.max_sim), 9) << pad(fixed(level.area), 9)
        << pad(fixed(level.mean_sim()), 9) << best;
    if (level.level == report.chosen_level) out << "  <= chosen";
    out << "\n";
  }
  if (!report.tied_levels.empty()) {
    out << "    tied on max_sim:";
    for (const auto& t : report.tied_levels) out << " " << t;
    out << "\n";
  }
  if (!report.skipped_verbs.empty()) {
    out << "    skipped (not in lexicon):";
    for (const auto& v : report.skipped_verbs) out << " " << text::display_lemma(v);
    out << "\n";
  }
}

std::string summary_line(const ClassificationReport& report) {
  return "level=" + report.chosen_level + " path=" + std::string(to_string(report.decision_path)) +
         " max_sim=" + fixed(report.score_of(report.chosen_level).max_sim);
}

std::string error_json(std::string_view key, std::string_view value, const Error& e) {
  ordered_json doc;
  doc[std::string(key)] = value;
  doc["error"] = to_string(e.kind());
  doc["message"] = e.what();
  return doc.dump();
}

// ---------------------------------------------------------------- classify

int classify_one(const Session& s, const CliConfig& config, std::size_t number, const std::string& question,
                 std::ostream& out) {
  try {
    auto result = classify_question(s.store, s.registry, s.grammar, question, s.domain);
    if (json_output(config)) {
      out << report_to_json(result.report, &result.chunk, question) << "\n";
    } else {
      out << "[" << number << "] " << question << "\n    verb=" << result.chunk.action_verb
          << " hint=" << result.chunk.level_hint.value_or("-") << " " << summary_line(result.report) << "\n";
      if (config.explain) print_level_table(out, result.report);
    }
    return kSuccess;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoVerbFound && e.kind() != ErrorKind::UnknownVerb) throw;
    if (json_output(config)) {
      out << error_json("question", question, e) << "\n";
    } else {
      out << "[" << number << "] " << question << "\n    error: " << e.what() << "\n";
    }
    return kPartialFailure;
  }
}

int cmd_classify(const CliConfig& config, const std::vector<std::string>& questions, const std::string& file,
                 std::ostream& out) {
  if (questions.empty() && file.empty()) throw ConfigError("classify needs a question or --file");
  if (!file.empty()) require_file(file, "question file");
  auto s = open_session(config);
  if (!json_output(config)) print_header(out, s);

  int status = kSuccess;
  std::size_t number = 0;
  auto handle_text = [&](std::string_view text) {
    for (const auto& q : split_questions(text)) {
      if (classify_one(s, config, ++number, q, out) != kSuccess) status = kPartialFailure;
    }
  };
  for (const auto& q : questions) handle_text(q);
  if (!file.empty()) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + file);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.front() == '#') continue;
      handle_text(line);
    }
  }
  return status;
}

// ----------------------------------------------------------- classify-verb

int cmd_classify_verb(const CliConfig& config, const std::vector<std::string>& verbs, std::ostream& out) {
  auto s = open_session(config);
  if (!json_output(config)) print_header(out, s);
  int status = kSuccess;
  for (const auto& verb : verbs) {
    try {
      auto report = classify_verb(s.store, s.registry, verb, s.domain);
      if (json_output(config)) {
        out << report_to_json(report) << "\n";
      } else {
        out << "verb=" << text::normalize_lemma(verb) << " " << summary_line(report) << "\n";
        if (config.explain) print_level_table(out, report);
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnknownVerb) throw;
      status = kPartialFailure;
      if (json_output(config)) {
        out << error_json("verb", verb, e) << "\n";
      } else {
        out << "verb=" << verb << " error: " << e.what() << "\n";
      }
    }
  }
  return status;
}

// ----------------------------------------------------------- build-verbset

int cmd_build_verbset(const CliConfig& config, const std::vector<std::string>& source_paths, double majority,
                      double conditional, const std::string& out_path, std::ostream& out) {
  std::vector<SourceVerbList> sources;
  for (const auto& p : source_paths) {
    require_file(p, "source list");
    sources.push_back(parse_source_list(fs::path(p)));
  }
  auto consensus = build_consensus(sources, majority, conditional);
  for (auto level : levels_of(consensus.domain)) {
    auto it = consensus.entries.find(std::string(level));
    if (it == consensus.entries.end() || it->second.empty()) {
      raise(ErrorKind::EmptyLevel, std::string(to_string(consensus.domain)) + "/" + std::string(level) +
                                       " has no verb after filtering");
    }
  }

  if (out_path.empty()) {
    out << consensus_to_json(consensus);
    return kSuccess;
  }
  save_consensus(consensus, out_path);

  std::map<ConsensusDecision, std::size_t> decisions;
  for (const auto& [verb, p] : consensus.provenance) ++decisions[p.decision];
  if (json_output(config)) {
    ordered_json doc;
    doc["out"] = out_path;
    doc["domain"] = to_string(consensus.domain);
    doc["sources"] = consensus.source_ids;
    auto& levels = doc["levels"] = ordered_json::object();
    for (auto level : levels_of(consensus.domain)) levels[std::string(level)] = consensus.entries[std::string(level)].size();
    auto& dec = doc["decisions"] = ordered_json::object();
    for (const auto& [d, n] : decisions) dec[std::string(to_string(d))] = n;
    doc["lexicon_version"] = "n/a";  // consensus building reads no lexicon
    out << doc.dump() << "\n";
  } else {
    out << "wrote " << out_path << " (" << to_string(consensus.domain) << ", " << sources.size() << " sources)\n";
    for (auto level : levels_of(consensus.domain)) {
      out << "  " << pad(std::string(level), 18) << consensus.entries[std::string(level)].size() << " verbs\n";
    }
    for (const auto& [d, n] : decisions) out << "  " << pad(std::string(to_string(d)), 22) << n << "\n";
  }
  return kSuccess;
}

// ------------------------------------------------------------------- audit

int cmd_audit(const CliConfig& config, const std::string& candidate_path, std::ostream& out) {
  require_file(candidate_path, "candidate list");
  auto s = open_session(config);
  auto candidate = parse_source_list(fs::path(candidate_path));
  auto report = audit_verbset(s.store, s.registry, candidate);
  if (json_output(config)) {
    out << audit_to_json(report) << "\n";
  } else {
    print_header(out, s);
    out << "candidate: " << candidate.source_id << "\n";
    out << "total=" << report.total << " agree=" << report.agree << " correctness=" << fixed(report.correctness())
        << "\n";
    for (const auto& r : report.reclassified) {
      out << "  reclassified " << text::display_lemma(r.verb) << ": " << r.manual_level << " -> " << r.predicted_level
          << "\n";
    }
    for (const auto& v : report.unknown_verbs) out << "  unknown " << text::display_lemma(v) << "\n";
  }
  return report.unknown_verbs.empty() ? kSuccess : kPartialFailure;
}

// ---------------------------------------------------------------- evaluate

int cmd_evaluate(const CliConfig& config, const std::string& gold_path, const std::string& predictions_path,
                 std::ostream& out, std::ostream& err) {
  require_file(gold_path, "gold file");
  auto domain = resolve_domain(config);
  auto gold = load_labeled_items(gold_path);
  std::vector<std::string> classes;
  for (auto level : levels_of(domain)) classes.emplace_back(level);

  std::vector<LabeledItem> predictions;
  std::vector<LabeledItem> scored_gold;
  std::string version = "n/a";
  int status = kSuccess;
  if (!predictions_path.empty()) {
    require_file(predictions_path, "predictions file");
    predictions = load_labeled_items(predictions_path);
    scored_gold = gold;
  } else {
    auto s = open_session(config);
    version = s.store.version();
    for (const auto& g : gold) {
      try {
        std::string level;
        // Bare verbs (possibly multiword) are classified directly; anything else is a question.
        if (g.item.find('?') == std::string::npos && !verb_senses(s.store, g.item).empty()) {
          level = classify_verb(s.store, s.registry, g.item, s.domain).chosen_level;
        } else {
          level = classify_question(s.store, s.registry, s.grammar, g.item, s.domain).report.chosen_level;
        }
        predictions.push_back({g.item, level});
        scored_gold.push_back(g);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoVerbFound && e.kind() != ErrorKind::UnknownVerb) throw;
        err << "skipped '" << g.item << "': " << e.what() << "\n";
        status = kPartialFailure;
      }
    }
  }

  auto matrix = build_confusion(predictions, scored_gold, classes);
  auto rows = metric_rows(matrix);
  auto macro = macro_average(rows);
  if (json_output(config)) {
    out << metrics_to_json(rows, macro, matrix, version) << "\n";
  } else {
    out << "# lexicon: WordNet " << version << "; domain: " << to_string(domain) << "; items: " << matrix.total()
        << "; correct: " << matrix.correct() << "\n";
    out << render_metric_table(rows, macro);
  }
  return status;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classify questions and action verbs into Bloom's taxonomy levels", "bloomtax"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "bloomtax 0.1.0");

  CliConfig config;
  auto add_common = [&](CLI::App* cmd, bool lexicon) {
    if (lexicon) {
      cmd->add_option("--wordnet", config.wordnet_dir, "WordNet dict directory (default: $WNSEARCHDIR)");
      cmd->add_option("--verbset", config.verbset_paths, "Consensus verb-set JSON (repeatable, one per domain)")
          ->allow_extra_args(false);
      cmd->add_option("--grammar", config.grammar_path, "Question-starter grammar file");
    }
    cmd->add_option("--domain", config.domain, "cognitive | affective | psychomotor")->capture_default_str();
    cmd->add_option("--format", config.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
  };

  std::vector<std::string> questions;
  std::string question_file;
  auto* classify = app.add_subcommand("classify", "Extract the action verb of each question and classify it");
  add_common(classify, true);
  classify->add_option("question", questions, "Question text");
  classify->add_option("--file", question_file, "File of questions, one or more per line");
  classify->add_flag("--explain", config.explain, "Print per-level similarity tables");

  std::vector<std::string> verbs;
  auto* classify_verb_cmd = app.add_subcommand("classify-verb", "Classify action verbs directly");
  add_common(classify_verb_cmd, true);
  classify_verb_cmd->add_option("verb", verbs, "Verb(s) to classify")->required();
  classify_verb_cmd->add_flag("--explain", config.explain, "Print per-level similarity tables");

  std::vector<std::string> sources;
  double majority = 0.75;
  double conditional = 0.5;
  std::string out_path;
  auto* build = app.add_subcommand("build-verbset", "Filter expert verb lists into a consensus verb set");
  add_common(build, false);
  build->add_option("sources", sources, "Source verb lists (domain<TAB>level<TAB>verb)")->required();
  build->add_option("--threshold", majority, "Majority agreement threshold")->capture_default_str();
  build->add_option("--conditional-threshold", conditional, "Conflict-free agreement threshold")
      ->capture_default_str();
  build->add_option("--out", out_path, "Write the consensus JSON here (default: stdout)");

  std::string candidate;
  auto* audit = app.add_subcommand("audit", "Check a candidate verb list against the consensus registry");
  add_common(audit, true);
  audit->add_option("candidate", candidate, "Candidate verb list")->required();

  std::string gold;
  std::string predictions;
  auto* evaluate = app.add_subcommand("evaluate", "Confusion-matrix metrics against gold labels");
  add_common(evaluate, true);
  evaluate->add_option("gold", gold, "Gold labels (item<TAB>level)")->required();
  evaluate->add_option("--predictions", predictions, "Predicted labels; omitted = classify the gold items");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    auto code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  try {
    if (classify->parsed()) return cmd_classify(config, questions, question_file, out);
    if (classify_verb_cmd->parsed()) return cmd_classify_verb(config, verbs, out);
    if (build->parsed()) return cmd_build_verbset(config, sources, majority, conditional, out_path, out);
    if (audit->parsed()) return cmd_audit(config, candidate, out);
    if (evaluate->parsed()) return cmd_evaluate(config, gold, predictions, out, err);
  } catch (const ConfigError& e) {
    err << "bloomtax: " << e.what() << "\n";
    return kConfigError;
  } catch (const Error& e) {
    err << "bloomtax: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace bloomtax::cli

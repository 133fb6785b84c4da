#include <doctest.h>

#include <chrono>
#include <cmath>

#include "bloomtax/avca.hpp"
#include "bloomtax/error.hpp"
#include "bloomtax/json_io.hpp"
#include "support.hpp"

using namespace bloomtax;
using namespace bloomtax::testing;

namespace {

ConsensusVerbSet cognitive_set(const std::vector<std::vector<std::string>>& lists) {
  ConsensusVerbSet c;
  auto levels = levels_of(DomainName::cognitive);
  for (std::size_t i = 0; i < lists.size(); ++i) {
    for (const auto& v : lists[i]) c.entries[std::string(levels[i])].insert(v);
  }
  return c;
}

ClassificationReport table(std::vector<std::pair<double, double>> max_area) {
  ClassificationReport r;
  auto levels = levels_of(DomainName::cognitive);
  for (std::size_t i = 0; i < max_area.size(); ++i) {
    LevelScore s;
    s.level = std::string(levels[i]);
    s.max_sim = max_area[i].first;
    s.area = max_area[i].second;
    r.level_scores.push_back(s);
  }
  return r;
}

void check_against_oracle(const LexicalStore& store, const TaxonomyRegistry& reg, DomainName domain,
                          const std::string& vq) {
  auto report = classify_verb(store, reg, vq, domain);
  auto expect = avca_oracle(store, reg, domain, vq);
  INFO(vq);
  CHECK(report.chosen_level == expect.level);
  CHECK(report.decision_path == expect.path);
  REQUIRE(report.level_scores.size() == expect.max_sim.size());
  for (std::size_t i = 0; i < expect.max_sim.size(); ++i) {
    CHECK(report.level_scores[i].max_sim == doctest::Approx(expect.max_sim[i]).epsilon(1e-12));
    CHECK(report.level_scores[i].area == doctest::Approx(expect.area[i]).epsilon(1e-12));
  }
}

}  // namespace

TEST_CASE("level_similarities") {
  const auto& wn = wordnet();
  const auto& reg = bundled_registry();
  auto synth = level_similarities(wn, reg, "compile", DomainName::cognitive, "Synthesis");
  CHECK(synth.max_sim == 1.0);

  auto one = registry_from(cognitive_set({{"explain"}, {"explain"}, {"explain"}, {"explain"}, {"explain"}, {"explain"}}));
  auto s = level_similarities(wn, one, "explain", DomainName::cognitive, "Knowledge");
  CHECK(s.max_sim == 1.0);
  CHECK(s.area == 1.0);
  CHECK(s.pair_scores.size() == 1);

  // march against speak, reason, move: 0.5, 0.25, 0.75 by construction.
  auto mini_reg = registry_from(cognitive_set({{"speak", "reason", "move"}, {"act"}, {"act"}, {"act"}, {"act"}, {"act"}}));
  auto m = level_similarities(mini(), mini_reg, "march", DomainName::cognitive, "Knowledge");
  REQUIRE(m.pair_scores.size() == 3);
  CHECK(m.pair_scores[0].list_verb == "move");
  CHECK(m.pair_scores[0].score == doctest::Approx(0.75));
  CHECK(m.pair_scores[1].score == doctest::Approx(0.25));
  CHECK(m.pair_scores[2].score == doctest::Approx(0.5));
  CHECK(m.area == doctest::Approx(1.5));
  CHECK(m.max_sim == doctest::Approx(0.75));
  CHECK(m.mean_sim() == doctest::Approx(0.5));

  CHECK_THROWS_AS(level_similarities(wn, reg, "xqzzy", DomainName::cognitive, "Knowledge"), Error);
  CHECK_THROWS_AS(level_similarities(wn, reg, "run", DomainName::cognitive, "Remembering"), Error);
}

TEST_CASE("unknown list verbs are skipped, not scored") {
  auto reg = registry_from(cognitive_set({{"walk", "frobnicate"}, {"act"}, {"act"}, {"act"}, {"act"}, {"act"}}));
  auto r = classify_verb(mini(), reg, "run", DomainName::cognitive);
  const auto& k = r.score_of("Knowledge");
  CHECK(k.pair_scores.size() == 1);
  CHECK(k.skipped_verbs == std::vector<std::string>{"frobnicate"});
  CHECK(r.skipped_verbs == std::vector<std::string>{"frobnicate"});
  CHECK(k.area == doctest::Approx(0.75));
}

TEST_CASE("classify_verb on the bundled registry") {
  const auto& wn = wordnet();
  const auto& reg = bundled_registry();

  auto compile = classify_verb(wn, reg, "compile", DomainName::cognitive);
  CHECK(compile.chosen_level == "Synthesis");
  CHECK(compile.decision_path == DecisionPath::unique_max);
  CHECK(compile.tied_levels.empty());
  CHECK(compile.lexicon_version == "3.0");
  CHECK(compile.query_verb == "compile");

  auto write = classify_verb(wn, reg, "write", DomainName::cognitive);
  CHECK(write.chosen_level == "Application");
  CHECK(std::abs(write.score_of("Application").max_sim - 0.857) <= 0.05);

  try {
    classify_verb(wn, reg, "xqzzy", DomainName::cognitive);
    FAIL("expected UnknownVerb");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownVerb);
  }
  try {
    classify_verb(wn, reg, "run", DomainName::affective);
    FAIL("expected UnknownDomain");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownDomain);
  }
}

TEST_CASE("manipulate ties everywhere and Application wins on area") {
  // Every level's best match for manipulate scores 1/3.
  auto reg = registry_from(cognitive_set({{"define", "list", "memorize"},
                                          {"review", "classify", "estimate"},
                                          {"solve", "compute", "schedule", "model"},
                                          {"compare", "diagram", "criticize"},
                                          {"plan", "devise", "invent"},
                                          {"evaluate", "critique", "rate"}}));
  auto r = classify_verb(wordnet(), reg, "manipulate", DomainName::cognitive);
  CHECK(r.tied_levels.size() == 6);
  for (const auto& s : r.level_scores) CHECK(s.max_sim == doctest::Approx(1.0 / 3.0));
  CHECK(r.decision_path == DecisionPath::area_tiebreak);
  CHECK(r.chosen_level == "Application");
}

TEST_CASE("decide_level on synthetic tables") {
  SUBCASE("unique max") {
    auto r = table({{0.5, 9}, {0.9, 1}, {0.4, 3}, {0.1, 1}, {0.2, 1}, {0.3, 1}});
    decide_level(r);
    CHECK(r.chosen_level == "Comprehension");
    CHECK(r.decision_path == DecisionPath::unique_max);
    CHECK(r.tied_levels.empty());
  }
  SUBCASE("area over all levels") {
    auto r = table({{0.5, 9}, {0.9, 1}, {0.9, 3}, {0.1, 1}, {0.2, 1}, {0.3, 1}});
    decide_level(r);
    CHECK(r.tied_levels == std::vector<std::string>{"Comprehension", "Application"});
    CHECK(r.chosen_level == "Knowledge");
    CHECK(r.decision_path == DecisionPath::area_tiebreak);

    decide_level(r, {AreaScope::tied_levels});
    CHECK(r.chosen_level == "Application");
    CHECK(r.decision_path == DecisionPath::area_tiebreak);
  }
  SUBCASE("area tie falls to the lowest level") {
    auto r = table({{0.5, 1}, {0.9, 3}, {0.9, 3}, {0.1, 1}, {0.2, 1}, {0.3, 1}});
    decide_level(r);
    CHECK(r.chosen_level == "Comprehension");
    CHECK(r.decision_path == DecisionPath::area_tie_lowest_level);
  }
  SUBCASE("epsilon equality") {
    auto r = table({{0.3, 1}, {0.3 + 1e-12, 2}, {0.1, 1}, {0.1, 1}, {0.1, 1}, {0.1, 1}});
    decide_level(r);
    CHECK(r.decision_path == DecisionPath::area_tiebreak);
    CHECK(r.chosen_level == "Comprehension");
  }
  SUBCASE("empty table") {
    ClassificationReport r;
    CHECK_THROWS_AS(decide_level(r), Error);
  }
}

TEST_CASE("AVCA matches the brute-force oracle") {
  SUBCASE("mini lexicon, every query") {
    auto reg = registry_from(cognitive_set({{"run", "speak"},
                                            {"think", "hike"},
                                            {"conclude"},
                                            {"walk", "recall", "reason"},
                                            {"march"},
                                            {"act", "infer", "sprint"}}));
    for (const auto& s : mini().synsets(PartOfSpeech::verb)) {
      for (const auto& lemma : s.lemmas) check_against_oracle(mini(), reg, DomainName::cognitive, lemma);
    }
  }
  SUBCASE("WordNet, bundled registry sample") {
    for (auto v : {"compile", "write", "manipulate", "describe", "build", "teach", "criticize", "draw"}) {
      check_against_oracle(wordnet(), bundled_registry(), DomainName::cognitive, v);
    }
  }
}

TEST_CASE("affective and psychomotor registries") {
  auto cognitive = load_consensus(consensus_path());
  std::vector<ConsensusVerbSet> sets{
      cognitive, unanimous(parse_source_list(fixture_dir() / "verbsets" / "affective.tsv")),
      unanimous(parse_source_list(fixture_dir() / "verbsets" / "psychomotor.tsv"))};
  auto reg = registry_from(sets);

  auto a = classify_verb(wordnet(), reg, "cherish", DomainName::affective);
  CHECK(a.level_scores.size() == 5);
  CHECK(a.chosen_level == "Valuing");
  auto p = classify_verb(wordnet(), reg, "calibrate", DomainName::psychomotor);
  CHECK(p.level_scores.size() == 5);
  CHECK(p.chosen_level == "Precision");
  for (auto v : {"listen", "obey", "imitate", "fix", "invent"}) {
    check_against_oracle(wordnet(), reg, DomainName::affective, v);
    check_against_oracle(wordnet(), reg, DomainName::psychomotor, v);
  }
}

TEST_CASE("invariants over many queries") {
  const auto& wn = wordnet();
  const auto& reg = bundled_registry();
  for (auto v : {"compile", "write", "manipulate", "run", "think", "build", "sing", "argue", "measure", "sort"}) {
    auto r = classify_verb(wn, reg, v, DomainName::cognitive);
    const auto& chosen = r.score_of(r.chosen_level);
    for (const auto& s : r.level_scores) {
      CHECK(s.max_sim > 0.0);
      CHECK(s.max_sim <= 1.0);
      if (r.decision_path == DecisionPath::unique_max) CHECK(chosen.max_sim >= s.max_sim - kScoreEpsilon);
      double sum = 0.0;
      for (const auto& p : s.pair_scores) sum += p.score;
      CHECK(sum == s.area);
    }
    CHECK(r.tied_levels.empty() == (r.decision_path == DecisionPath::unique_max));
  }
}

TEST_CASE("adding a verb never lowers a level") {
  auto base = cognitive_set({{"define"}, {"explain"}, {"apply"}, {"analyze"}, {"design"}, {"judge"}});
  auto before = classify_verb(wordnet(), registry_from(base), "build", DomainName::cognitive);
  base.entries["Application"].insert("construct");
  auto after = classify_verb(wordnet(), registry_from(base), "build", DomainName::cognitive);
  CHECK(after.score_of("Application").area >= before.score_of("Application").area);
  CHECK(after.score_of("Application").max_sim >= before.score_of("Application").max_sim);
}

TEST_CASE("classify_question") {
  const auto& wn = wordnet();
  const auto& reg = bundled_registry();
  auto q = classify_question(wn, reg, default_grammar(), "How would you explain computer science to a five-year-old?",
                             DomainName::cognitive);
  CHECK(q.chunk.action_verb == "explain");
  CHECK(q.report.query_verb == "explain");
  CHECK(q.report.level_scores.size() == 6);

  auto c = classify_question(wn, reg, default_grammar(), "Compile a list of sources.", DomainName::cognitive);
  CHECK(c.chunk.action_verb == "compile");
  CHECK(c.report.chosen_level == "Synthesis");

  try {
    classify_question(wn, reg, default_grammar(), "???", DomainName::cognitive);
    FAIL("expected NoVerbFound");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoVerbFound);
  }
}

TEST_CASE("classification is fast on the full lexicon") {
  const auto& wn = wordnet();
  const auto& reg = bundled_registry();
  auto start = std::chrono::steady_clock::now();
  auto r = classify_verb(wn, reg, "run", DomainName::cognitive);
  auto elapsed = std::chrono::steady_clock::now() - start;
  CHECK(r.level_scores.size() == 6);
  CHECK(std::chrono::duration<double>(elapsed).count() < 1.0);
}

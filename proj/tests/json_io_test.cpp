#include <doctest.h>

#include <json.hpp>

#include "bloomtax/error.hpp"
#include "bloomtax/json_io.hpp"
#include "support.hpp"

using namespace bloomtax;
using namespace bloomtax::testing;
using nlohmann::json;

TEST_CASE("consensus documents round-trip") {
  auto original = load_consensus(consensus_path());
  auto text = consensus_to_json(original);
  auto back = consensus_from_json(text);
  CHECK(back.domain == original.domain);
  CHECK(back.entries == original.entries);
  CHECK(back.source_ids == original.source_ids);
  CHECK(back.majority_threshold == original.majority_threshold);
  REQUIRE(back.provenance.size() == original.provenance.size());
  for (const auto& [verb, p] : original.provenance) {
    const auto& q = back.provenance.at(verb);
    CHECK(q.decision == p.decision);
    CHECK(q.level == p.level);
    CHECK(q.agreement_ratio == p.agreement_ratio);
    CHECK(q.supporting_sources == p.supporting_sources);
  }
  CHECK(consensus_to_json(back) == text);

  auto doc = json::parse(text);
  CHECK(doc["format"] == "bloomtax-consensus/1");
  CHECK(doc["levels"].size() == 6);
  CHECK(doc["provenance"]["sketch"]["decision"] == "kept-conditionally");
}

TEST_CASE("malformed consensus documents") {
  auto fails = [](std::string_view text) {
    try {
      consensus_from_json(text);
    } catch (const Error&) {
      return true;
    }
    return false;
  };
  CHECK(fails("not json"));
  CHECK(fails("{}"));
  CHECK(fails(R"({"format":"other/1"})"));
  CHECK(fails(R"({"format":"bloomtax-consensus/1","domain":"spiritual","levels":[],"provenance":{}})"));
  CHECK_THROWS_AS(load_consensus("/nonexistent.json"), Error);
}

TEST_CASE("report JSON carries the lexicon version") {
  auto q = classify_question(wordnet(), bundled_registry(), default_grammar(), "Can you list the planets?",
                             DomainName::cognitive);
  auto doc = json::parse(report_to_json(q.report, &q.chunk, "Can you list the planets?"));
  CHECK(doc["lexicon_version"] == "3.0");
  CHECK(doc["action_verb"] == "list");
  CHECK(doc["level_hint"] == "KNOW");
  CHECK(doc["chosen_level"] == q.report.chosen_level);
  CHECK(doc["levels"].size() == 6);
  CHECK(doc["levels"][0]["pairs"][0].contains("query_sense"));

  auto plain = json::parse(report_to_json(q.report));
  CHECK_FALSE(plain.contains("question"));
  CHECK(report_to_json(q.report).find('\n') == std::string::npos);
}

TEST_CASE("audit and metric JSON") {
  auto cand = parse_source_list(fixture_dir() / "verbsets" / "audit_candidate.tsv");
  auto audit = json::parse(audit_to_json(audit_verbset(wordnet(), bundled_registry(), cand)));
  CHECK(audit["total"] == 10);
  CHECK(audit["reclassified"].size() == 3);
  CHECK(audit["lexicon_version"] == "3.0");
}

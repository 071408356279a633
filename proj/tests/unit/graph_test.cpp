#include "doctest.h"

#include <random>
#include <set>

#include "../support/random_graphs.hpp"
#include "fisheco/graph.hpp"

using namespace fisheco;

namespace {

ScenarioGraph bbc_skeleton() {
  ScenarioGraph g("t", builtin_merged());
  g.add_entity("P", "Sarah Turnidge",
               {{"is_journalist", true}, {"fact_checking", true}});
  g.add_entity("P", "Person B");
  g.add_entity("N", "BBC clip");
  return g;
}

}  // namespace

TEST_CASE("a fresh graph is empty and validates clean") {
  ScenarioGraph g("t", builtin_merged());
  CHECK(g.entities().empty());
  CHECK(g.relations().empty());
  CHECK(validate_graph(g).violations.empty());
}

TEST_CASE("graphs reject schemas that do not validate") {
  Schema broken("custom", {{"TA", "Type TA", ColourClass::plain, {}}},
                {make_relation("links", "TA", "TB")});
  CHECK_THROWS_AS(ScenarioGraph("t", broken), Error);
}

TEST_CASE("add_entity enforces ids, types and attribute kinds") {
  ScenarioGraph g = bbc_skeleton();

  CHECK(g.entity("Sarah Turnidge").type_code == "P");
  CHECK(g.attr_bool(g.entity("Sarah Turnidge"), "fact_checking"));

  try {
    g.add_entity("P", "Sarah Turnidge");
    FAIL("duplicate id");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::duplicate_id);
  }
  try {
    g.add_entity("XX", "someone");
    FAIL("unknown type");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unknown_type);
  }
  try {
    g.add_entity("N", "clip", {{"fact_checking", true}});
    FAIL("N declares no attributes");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unknown_attribute);
  }
  try {
    g.add_entity("P", "X", {{"fact_checking", std::string("yes")}});
    FAIL("kind mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::attribute_kind_mismatch);
  }
  try {
    g.add_entity("P", "two\nlines");
    FAIL("multi-line id");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_id);
  }
}

TEST_CASE("add_relation applies the date-implies-past default") {
  ScenarioGraph g = bbc_skeleton();
  const Relation& r = g.add_relation("Sarah Turnidge", "fact_checked",
                                     "BBC clip", {}, Date{2022, 2, 25});
  CHECK(r.tense == Tense::past);
  CHECK(r.date == Date{2022, 2, 25});

  const Relation& bare =
      g.add_relation("Person B", "consumed", "BBC clip");
  CHECK(bare.tense == Tense::ongoing);
}

TEST_CASE("add_relation rejects guard violations and leaves the graph intact") {
  ScenarioGraph g = bbc_skeleton();
  const std::string before = to_json(g);
  try {
    g.add_relation("Person B", "fact_checked", "BBC clip", Tense::past);
    FAIL("fact_checking defaults to false");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::guard_violation);
    CHECK(std::string(e.what()).find("fact_checking") != std::string::npos);
  }
  CHECK(to_json(g) == before);
}

TEST_CASE("failed mutations leave the graph byte-identical") {
  ScenarioGraph g = bbc_skeleton();
  g.add_relation("Sarah Turnidge", "fact_checked", "BBC clip", Tense::past);
  const std::string before = to_json(g);

  CHECK_THROWS(g.add_entity("P", "Sarah Turnidge"));
  CHECK_THROWS(g.add_relation("nobody", "consumed", "BBC clip"));
  CHECK_THROWS(g.add_relation("Sarah Turnidge", "regulates", "BBC clip"));
  CHECK_THROWS(g.add_relation("Sarah Turnidge", "fact_checked", "BBC clip",
                              Tense::past));
  CHECK_THROWS(g.add_relation("Person B", "consumed", "BBC clip",
                              Tense::ongoing, Date{2022, 1, 1}));
  CHECK(to_json(g) == before);
}

TEST_CASE("unknown relation triples list near misses") {
  ScenarioGraph g = bbc_skeleton();
  try {
    g.add_relation("BBC clip", "fact_checked", "Person B");
    FAIL("reversed direction");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unknown_relation);
    CHECK(std::string(e.what()).find("near misses") != std::string::npos);
    CHECK(std::string(e.what()).find("(P -> N)") != std::string::npos);
  }
}

TEST_CASE("duplicate relations differ by tense and date") {
  ScenarioGraph g = bbc_skeleton();
  g.add_relation("Person B", "consumed", "BBC clip", Tense::past);
  // Same triple with a date is a distinct event.
  g.add_relation("Person B", "consumed", "BBC clip", {}, Date{2022, 3, 1});
  CHECK_THROWS_AS(
      g.add_relation("Person B", "consumed", "BBC clip", Tense::past), Error);
  CHECK(g.relations().size() == 2);
}

TEST_CASE("json round-trip is lossless and deterministic") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    ScenarioGraph g = testsupport::random_graph(rng, 12, 20);
    const std::string text = to_json(g);
    CHECK(text == to_json(g));
    ScenarioGraph back = from_json(text, g.schema());
    CHECK(back == g);
    CHECK(to_json(back) == text);
  }
}

TEST_CASE("from_json rejects unknown verbs and malformed documents") {
  ScenarioGraph g = bbc_skeleton();
  std::string text = to_json(g);

  CHECK_THROWS_AS(from_json("{not json", g.schema()), Error);

  std::string bad_verb = text;
  g.add_relation("Sarah Turnidge", "fact_checked", "BBC clip", Tense::past);
  bad_verb = to_json(g);
  const auto pos = bad_verb.find("fact_checked");
  bad_verb.replace(pos, std::string("fact_checked").size(), "factchecked");
  try {
    from_json(bad_verb, g.schema());
    FAIL("unknown verb");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::schema_mismatch);
    CHECK(std::string(e.what()).find("factchecked") != std::string::npos);
  }

  try {
    from_json(text, builtin_schema(Model::A));
    FAIL("schema id mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::schema_mismatch);
  }
}

TEST_CASE("validate_graph catches semantic faults in deserialized input") {
  // Hand-written document: the guard on fact_checked P -> N is violated and
  // one relation is duplicated. from_json accepts it, validate reports it.
  const std::string text = R"({
    "format": "fisheco-graph/1",
    "name": "tampered",
    "schema": "merged",
    "entities": [
      {"id": "clip", "type": "N", "attrs": {}},
      {"id": "p", "type": "P", "attrs": {"fact_checking": false}}
    ],
    "relations": [
      {"src": "p", "verb": "fact_checked", "dst": "clip", "tense": "past"},
      {"src": "p", "verb": "consumed", "dst": "clip", "tense": "past"},
      {"src": "p", "verb": "consumed", "dst": "clip", "tense": "past"}
    ]
  })";
  ScenarioGraph g = from_json(text, builtin_merged());
  ValidationReport report = validate_graph(g);
  std::multiset<std::string> codes;
  for (const auto& v : report.violations) {
    if (v.severity == Violation::Severity::error) codes.insert(v.code);
  }
  CHECK(codes == std::multiset<std::string>{"guard-violation", "duplicate-relation"});
}

TEST_CASE("validate_graph warns about uncovered items and fake accounts") {
  ScenarioGraph g("t", builtin_merged());
  g.add_entity("N", "lonely news");
  g.add_entity("AC", "bot", {{"is_false", true}});
  g.add_entity("UGC", "spam post");
  g.add_relation("bot", "created", "spam post", {}, Date{2021, 5, 4});

  ValidationReport report = validate_graph(g);
  CHECK(report.error_count() == 0);
  std::multiset<std::string> codes;
  for (const auto& v : report.violations) codes.insert(v.code);
  // Both items lack fact checks; the spam post also came from a fake account.
  CHECK(codes ==
        std::multiset<std::string>{"uncovered-item", "uncovered-item",
                                   "fake-account-content"});
}

TEST_CASE("graphs built through mutators always revalidate clean") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    ScenarioGraph g = testsupport::random_graph(rng, 15, 25);
    CHECK(validate_graph(g).error_count() == 0);
  }
}

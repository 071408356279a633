#include "doctest.h"

#include <fstream>
#include <random>
#include <sstream>

#include "../support/random_graphs.hpp"
#include "fisheco/dsl.hpp"

using namespace fisheco;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int count_nonblank_lines(const std::string& text) {
  int count = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("a header alone parses to an empty graph") {
  ScenarioGraph g = parse("scenario \"empty\"\nmodel A\n");
  CHECK(g.name() == "empty");
  CHECK(g.schema().id() == "A");
  CHECK(g.entities().empty());
}

TEST_CASE("a dated rel statement defaults to past tense") {
  ScenarioGraph g = parse(
      "scenario \"t\"\n"
      "model merged\n"
      "entity P \"Sarah Turnidge\" { fact_checking = true }\n"
      "entity N \"BBC clip\"\n"
      "rel \"Sarah Turnidge\" fact_checked \"BBC clip\" at 2022-02-25\n");
  REQUIRE(g.relations().size() == 1);
  CHECK(g.relations()[0].tense == Tense::past);
  CHECK(g.relations()[0].date == Date{2022, 2, 25});
}

TEST_CASE("semantic faults surface as ParseError on the offending line") {
  const std::string text =
      "scenario \"t\"\n"
      "model A\n"
      "\n"
      "entity P \"X\" { fact_checking = \"yes\" }\n";
  try {
    parse(text);
    FAIL("kind mismatch expected");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.detail().find("attribute-kind-mismatch") != std::string::npos);
    CHECK(e.snippet().find("fact_checking") != std::string::npos);
  }
}

TEST_CASE("lexical faults carry line and column") {
  try {
    parse("scenario \"t\"\nmodel A\nentity P \"unterminated\n");
    FAIL("unterminated string");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 10);
  }

  try {
    parse("scenario \"t\"\nmodel Z\n");
    FAIL("bad model");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 7);
  }

  try {
    parse("scenario \"t\"\nmodel A\nrel \"a\" consumed \"b\" at 2022-13-01\n");
    FAIL("bad date");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.detail().find("2022-13-01") != std::string::npos);
  }
}

TEST_CASE("comments and CRLF endings are accepted") {
  ScenarioGraph g = parse(
      "# leading comment\r\n"
      "scenario \"t\"\r\n"
      "model A\r\n"
      "entity MO \"BBC\"  # trailing comment\r\n"
      "entity N \"item # not a comment\"\r\n");
  CHECK(g.entities().size() == 2);
  CHECK(g.find_entity("item # not a comment") != nullptr);
}

TEST_CASE("serialize emits the canonical three-line form for one entity") {
  ScenarioGraph g("one", builtin_schema(Model::A));
  g.add_entity("MO", "BBC");
  const std::string text = serialize(g);
  CHECK(count_nonblank_lines(text) == 3);
  CHECK(parse(text) == g);
}

TEST_CASE("serialize orders entities by type then id and sorts attributes") {
  ScenarioGraph g("order", builtin_schema(Model::A));
  g.add_entity("P", "Zed", {{"is_journalist", true}, {"fact_checking", false}});
  g.add_entity("MO", "BBC");
  g.add_entity("C", "remark");
  const std::string text = serialize(g);
  const auto c_pos = text.find("entity C");
  const auto mo_pos = text.find("entity MO");
  const auto p_pos = text.find("entity P");
  CHECK(c_pos < mo_pos);
  CHECK(mo_pos < p_pos);
  CHECK(text.find("fact_checking = false, is_journalist = true") !=
        std::string::npos);
}

TEST_CASE("all five fixtures parse, validate clean and round-trip") {
  for (const std::string& name : fixture_names()) {
    CAPTURE(name);
    ScenarioGraph g = load_fixture(name);
    CHECK(validate_graph(g).error_count() == 0);

    const std::string canonical = serialize(g);
    ScenarioGraph reparsed = parse(canonical);
    CHECK(reparsed == g);
    CHECK(serialize(reparsed) == canonical);
  }
}

TEST_CASE("fixture facts match the scenarios they encode") {
  ScenarioGraph uk = load_fixture("uk_regulators");
  const bool pcc_past = std::any_of(
      uk.relations().begin(), uk.relations().end(), [](const Relation& r) {
        return r.source_id == "PCC" && r.verb == "regulates" &&
               r.target_id == "Telegraph" && r.tense == Tense::past;
      });
  CHECK(pcc_past);

  ScenarioGraph trump = load_fixture("trump_suspension");
  const bool dated_video = std::any_of(
      trump.relations().begin(), trump.relations().end(), [](const Relation& r) {
        return r.target_id == "video message" && r.verb == "created" &&
               r.date == Date{2021, 1, 6};
      });
  CHECK(dated_video);

  ScenarioGraph bbc = load_fixture("bbc_breakfast");
  const auto checks = std::count_if(
      bbc.relations().begin(), bbc.relations().end(),
      [](const Relation& r) { return r.verb == "fact_checked"; });
  CHECK(checks == 4);
}

TEST_CASE("unknown fixture names are rejected") {
  CHECK_THROWS_AS(load_fixture("nope"), Error);
}

TEST_CASE("graphs over custom schemas have no textual form") {
  Schema custom = merge_schemas(builtin_schema(Model::A), builtin_schema(Model::B));
  ScenarioGraph g("t", custom);
  try {
    serialize(g);
    FAIL("custom schemas are not expressible in the DSL");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::usage);
  }
}

TEST_CASE("shipped scenario files match the embedded fixtures") {
  for (const std::string& name : fixture_names()) {
    CAPTURE(name);
    const std::string on_disk =
        read_file(std::string(FISHECO_SOURCE_DIR) + "/scenarios/" + name + ".fis");
    CHECK(on_disk == fixture_text(name));
  }
}

TEST_CASE("round-trip holds for generated graphs") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 40; ++trial) {
    ScenarioGraph g = testsupport::random_graph(rng, 12, 18);
    const std::string text = serialize(g);
    CAPTURE(text);
    ScenarioGraph back = parse(text);
    CHECK(back == g);
    CHECK(serialize(back) == text);
  }
}

TEST_CASE("a single injected fault is reported on its own line") {
  std::mt19937_64 rng(555);
  const std::string base = fixture_text("uk_regulators");

  std::vector<std::string> lines;
  std::istringstream in(base);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);

  const std::vector<std::string> faults = {
      "rel \"PCC\" regulates",           // truncated statement
      "entity 123 \"x\"",                // bad type code
      "relation \"a\" consumed \"b\"",   // unknown keyword
      "rel \"PCC\" regulates \"Telegraph\" at 14-09-2014",  // bad date
      "entity MO \"unbalanced",          // unterminated string
  };

  for (int trial = 0; trial < 25; ++trial) {
    // Only corrupt statement lines; comments and blanks cannot fault.
    int index;
    do {
      index = testsupport::rand_int(rng, 0, static_cast<int>(lines.size()) - 1);
    } while (lines[static_cast<std::size_t>(index)].empty() ||
             lines[static_cast<std::size_t>(index)][0] == '#' ||
             index < 4);  // keep the header intact

    std::vector<std::string> mutated = lines;
    mutated[static_cast<std::size_t>(index)] = testsupport::pick(rng, faults);
    std::string text;
    for (const auto& l : mutated) text += l + "\n";

    try {
      parse(text);
      FAIL("fault should not parse");
    } catch (const ParseError& e) {
      CHECK(e.line() == index + 1);
    }
  }
}

#include <string>

#include "doctest.h"
#include "hblab/corpus.hpp"
#include "hblab/runner.hpp"
#include "hblab/spec_io.hpp"

using namespace hblab;

namespace {

const char* kSmall = R"({
  "schema": "hb-lab/space-spec/1",
  "dimension": 2,
  "seminorms": [
    {"label": "sup", "atoms": [{"combine": "max", "generators": [["1", "0"], ["0", "2/2"]]}]},
    {"label": "q", "quotient_of": {"base_label": "sup", "z_basis": [["1", "0"]]}}
  ],
  "subspaces": {"Y": [[1, "1"]]},
  "functionals": {"f": ["4/2"]},
  "tasks": [{"kind": "chi", "arguments": {"seminorm": "sup", "subspace": "Y", "functional": "f"}}]
})";

std::string with(const std::string& from, const std::string& to) {
  std::string s = kSmall;
  const auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

std::string parse_message(const std::string& text) {
  try {
    resolve(parse_space_spec(text));
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("serialize after parse equals normalize on every corpus spec") {
  for (const auto& e : corpus()) {
    CAPTURE(e.id);
    const std::string text = serialize_space_spec(e.spec);
    CHECK(serialize_space_spec(parse_space_spec(text)) == normalize_space_spec(text));
    CHECK(normalize_space_spec(text) == text);
  }
}

TEST_CASE("normalize canonicalizes rationals and fills defaults") {
  const std::string n = normalize_space_spec(kSmall);
  CHECK(serialize_space_spec(parse_space_spec(kSmall)) == n);
  CHECK(n.find("\"2/2\"") == std::string::npos);
  CHECK(n.find("\"2\"") != std::string::npos);
  const std::string bare = R"({"schema": "hb-lab/space-spec/1", "dimension": 1, "seminorms": []})";
  const std::string nb = normalize_space_spec(bare);
  CHECK(nb.find("\"tasks\": []") != std::string::npos);
  CHECK(serialize_space_spec(parse_space_spec(bare)) == nb);
}

TEST_CASE("resolved spaces hold the parsed objects") {
  const ResolvedSpace r = resolve(parse_space_spec(kSmall));
  CHECK(r.seminorms.size() == 2);
  CHECK(eval(r.seminorm("sup"), {Scalar(3), Scalar(-5)}) == 5);
  CHECK(r.seminorm("q").is_quotient());
  CHECK(r.seminorm("q").dim() == 1);
  CHECK(r.subspace("Y", 2).dim() == 1);
  CHECK(r.functional("f", 1) == Vec{Scalar(2)});
}

TEST_CASE("syntax errors report line and column") {
  const std::string broken = "{\n  \"schema\": \"hb-lab/space-spec/1\",\n  \"dimension\": 2,,\n}";
  try {
    parse_space_spec(broken);
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 18);
  }
}

TEST_CASE("semantic errors name the offending value") {
  CHECK(parse_message(with("\"dimension\": 2", "\"dimension\": 2, \"extra\": 1")).find("/extra") != std::string::npos);
  CHECK(parse_message(with("\"combine\": \"max\"", "\"combine\": \"min\"")).find("/seminorms/0/atoms/0/combine") !=
        std::string::npos);
  CHECK(parse_message(with("\"4/2\"", "\"4/0\"")).find("/functionals/f/0") != std::string::npos);
  CHECK(parse_message(with("\"dimension\": 2", "\"dimension\": 0")).find("/dimension") != std::string::npos);
}

TEST_CASE("schema must be present and supported") {
  CHECK_THROWS_AS(parse_space_spec(with("\"schema\": \"hb-lab/space-spec/1\",", "")), ParseError);
  CHECK(parse_message(with("space-spec/1", "space-spec/2")).find("unsupported schema") != std::string::npos);
}

TEST_CASE("labels and dimensions are checked on resolve") {
  CHECK_THROWS_AS(resolve(parse_space_spec(with("\"base_label\": \"sup\"", "\"base_label\": \"nope\""))), ParseError);
  CHECK_THROWS_AS(resolve(parse_space_spec(with("\"label\": \"q\"", "\"label\": \"sup\""))), ParseError);
  CHECK_THROWS_AS(resolve(parse_space_spec(with("[\"0\", \"2/2\"]", "[\"0\", \"1\", \"0\"]"))), DimensionError);
  const ResolvedSpace r = resolve(parse_space_spec(with("[[1, \"1\"]]", "[[1, 1], [2, 2]]")));
  CHECK_THROWS_AS(r.subspace("Y", 2), ParseError);
  CHECK_THROWS_AS(r.subspace("Z", 2), ParseError);
  CHECK_THROWS_AS(r.functional("g", 1), ParseError);
  CHECK_THROWS_AS(r.functional("f", 2), DimensionError);
}

TEST_CASE("quotients of quotients are rejected") {
  const std::string nested = with(
      "\"z_basis\": [[\"1\", \"0\"]]}}",
      "\"z_basis\": [[\"1\", \"0\"]]}}, {\"label\": \"qq\", \"quotient_of\": {\"base_label\": \"q\", \"z_basis\": []}}");
  CHECK_THROWS_AS(resolve(parse_space_spec(nested)), ParseError);
}

TEST_CASE("runner: empty task list, unknown kinds and bad arguments") {
  const nlohmann::json empty = run_spec(parse_space_spec(with(
      R"([{"kind": "chi", "arguments": {"seminorm": "sup", "subspace": "Y", "functional": "f"}}])", "[]")));
  CHECK(empty["schema"] == kReportSchema);
  CHECK(empty["tasks"].empty());
  CHECK_THROWS_AS(run_spec(parse_space_spec(with("\"kind\": \"chi\"", "\"kind\": \"nope\""))), ParseError);
  CHECK_THROWS_AS(run_spec(parse_space_spec(with("\"seminorm\": \"sup\",", ""))), ParseError);

  const nlohmann::json r = run_spec(parse_space_spec(kSmall));
  REQUIRE(r["tasks"].size() == 1);
  CHECK(r["tasks"][0]["result"]["value"] == "2");  // f(1, 1) = 2 against sup(1, 1) = 1
  CHECK(summarize(r).find("chi") != std::string::npos);
}

TEST_CASE("reports repeat exactly without timing") {
  RunOptions o;
  o.timing = false;
  for (const auto& e : corpus()) {
    CAPTURE(e.id);
    CHECK(run_spec(e.spec, o).dump() == run_spec(e.spec, o).dump());
  }
}

#include <string>

#include "doctest.h"
#include "hlp_cli/app.hpp"
#include "hlp_cli/spec_file.hpp"
#include "report_util.hpp"

using namespace hlp::cli;

namespace {

std::string field_of(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const InputError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("spec parser reports field paths") {
  CHECK(field_of(R"({"algebra1": [2], "algebra2": [2], "morphism": {"tiles": [{"src": 0, "dst": 0, "offset": 1}]}})") ==
        "morphism.tiles[0].offset");
  CHECK(field_of(R"({"algebra1": [2], "weight1": [[[[1, 0], [0, 0]], [[0, 0], 1]]]})") == "weight1[0][1][1]");
  CHECK(field_of(R"({"algebra1": [2], "weight1": [[[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]]})") == "weight1");
  CHECK(field_of(R"({"weight1": []})") == "algebra1");
  CHECK(field_of(R"({"exponents": {"p": 2}})") == "exponents.p");
  CHECK(field_of(R"({"exponents": {"p": "0.5"}})") == "exponents.p");
  CHECK(field_of("{\n  \"algebra1\": [2,\n}") == "line 3, column 1");
  CHECK(field_of(R"({"measure": {"space1": {"masses": [1]}, "space2": {"masses": [1, 2]}, "map": [0, "x"]}})") ==
        "measure.map[1]");
}

TEST_CASE("spec parser builds typed values") {
  const SpecFile s = parse_spec(R"({
    "algebra1": [1, 2], "algebra2": [2],
    "morphism": {"tiles": [{"src": 1, "dst": 0, "offset": 0, "kind": "A"}]},
    "measure": {"space1": {"atoms": ["a", "b"], "masses": [0.5, 0.5]},
                "space2": {"masses": [1, 1, 1]}, "map": ["b", null, 0]},
    "exponents": {"p": "inf", "q": "1.5"},
    "notes": "ignored"
  })");
  REQUIRE(s.morphism);
  CHECK(s.morphism->tiles().front().kind == hlp::TileKind::A);
  CHECK(s.p->is_infinite());
  CHECK(*s.q->exact_inverse() == hlp::Rational(2, 3));
  REQUIRE(s.measure);
  CHECK(s.measure->map[0] == std::size_t{1});
  CHECK_FALSE(s.measure->map[1].has_value());
  CHECK(s.unknown_sections == std::vector<std::string>{"notes"});
  CHECK_THROWS_AS(s.need_weight1(), InputError);
}

TEST_CASE("report numbers and digest") {
  CHECK(num(1.0 / 3.0).dump() == "0.333333333333");
  CHECK(num(-0.0).dump() == "0.0");
  CHECK(num(1.0 / 0.0) == "inf");
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("run maps outcomes to exit codes") {
  Options o;
  o.command = "norm";
  const std::string cw = R"({"algebra1": [2], "algebra2": [2],
    "weight1": [[[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]],
    "weight2": [[[[0.8, 0], [0, 0]], [[0, 0], [0.2, 0]]]],
    "morphism": {"tiles": [{"src": 0, "dst": 0, "offset": 0}]},
    "exponents": {"p": "2", "q": "1"}})";
  const Outcome ok = run(o, cw);
  CHECK(ok.exit_code == kExitOk);
  CHECK(ok.report["results"]["upper_bound"].get<double>() == doctest::Approx(1.166190).epsilon(1e-6));
  CHECK(without_wall_time(ok.report) == without_wall_time(run(o, cw).report));

  o.p = "1";
  o.q = "2";
  CHECK(run(o, cw).exit_code == kExitRefused);
  o.p = "abc";
  const Outcome bad = run(o, cw);
  CHECK(bad.exit_code == kExitInput);
  CHECK(bad.report["error"]["field"] == "--p");
}

#include "oracles.hpp"
#include "skeltrop/io.hpp"

#include <json.hpp>

#include <doctest.h>

using namespace skeltrop;

namespace {

std::string field_of(const std::string& text) {
  try {
    parse_input(text);
  } catch (const ParseError& e) {
    return e.field();
  }
  return "<no error>";
}

const char* kEdge = R"({"schema_version": 1,
  "complex": {"ell": 2, "d": 1, "mode": "simplicial", "facets": [[1, 2]]}})";

}  // namespace

TEST_CASE("minimal document") {
  const auto doc = parse_input(kEdge);
  CHECK(doc.complex.ell == 2);
  CHECK(doc.complex.facets == std::vector<std::vector<int>>{{1, 2}});
  CHECK_FALSE(doc.order_matrix);
  CHECK(doc.build_complex()->strata().size() == 3);
}

TEST_CASE("parse errors name the offending field") {
  try {
    parse_input(R"({"schema_version": 1,
      "complex": {"ell": 3, "d": 1, "mode": "simplicial", "facets": [[1, 2], [1, 2, 3]]}})");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.field() == "complex.facets[1]");
    CHECK(std::string(e.what()).find("facet exceeds d+1") != std::string::npos);
  }
  CHECK(field_of(R"({"schema_version": 1, "complex": {"ell": 2, "d": 1, "mode": "simplicial",
      "facets": [[1, 5]]}})") == "complex.facets[0][1]");
  CHECK(field_of(R"({"schema_version": 1, "complex": {"ell": 2, "d": 1, "mode": "simplicial",
      "facets": [[1, 2]], "colour": 3}})") == "complex.colour");
  CHECK(field_of(R"({"schema_version": 2, "complex": {}})") == "schema_version");
  CHECK(field_of(R"({"complex": {"ell": 2, "d": 1, "mode": "simplicial", "facets": []}})") ==
        "schema_version");
  CHECK(field_of(R"({"schema_version": 1, "complex": {"ell": 2, "d": 1, "mode": "simplicial",
      "facets": [[1, 2]]}, "order_matrix": {"rows": [[0, 0], [0, "x"], [1, 0]]}})") ==
        "order_matrix.rows[1][1]");
  CHECK(field_of(R"({"schema_version": 1, "complex": {"ell": 2, "d": 1, "mode": "simplicial",
      "facets": [[1, 2]]}, "check": {"pairs": [[0, 9]]}})") == "check.pairs[0]");

  try {
    parse_input("{\n  \"schema_version\": 1,\n  \"complex\": [\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("delta documents") {
  const auto doc = parse_input(R"({"schema_version": 1,
    "complex": {"ell": 2, "d": 1, "mode": "delta", "strata": [
      {"id": 0, "vertices": [1]},
      {"id": 1, "vertices": [2]},
      {"id": 2, "vertices": [1, 2], "faces": [{"subset": [1], "stratum": 0},
                                              {"subset": [2], "stratum": 1}]},
      {"id": 3, "vertices": [1, 2], "faces": [{"subset": [2], "stratum": 1},
                                              {"subset": [1], "stratum": 0}]}]}})");
  CHECK(doc == cycle_fixture(2));
  const auto c = doc.build_complex();
  CHECK(*c == *cycle_fixture(2).build_complex());
  CHECK(validate(*c).empty());
  CHECK(c->mode() == ComplexMode::delta);
}

TEST_CASE("serialization round trip") {
  auto docs = oracle::plain_fixture_suite();
  docs.push_back({"cycle(2)", cycle_fixture(2)});
  auto with_orders = cycle_fixture(4);
  IntMatrix orders{{0, 0, 0, 0}, {0, 1, 3, 1}, {1, 0, 1, 2}, {5, 1, 0, 1}, {1, 2, 1, 0}};
  with_orders.order_matrix = OrderMatrix(orders, {true, true, false, true, true});
  with_orders.check.mode = CheckMode::exact;
  with_orders.check.pairs = {{StratumId{4}, StratumId{6}}};
  docs.push_back({"orders", with_orders});
  for (const auto& [name, doc] : docs) {
    const std::string text = serialize_input(doc);
    const auto back = parse_input(text);
    CHECK(back == doc);
    CHECK(serialize_input(back) == text);
  }
}

TEST_CASE("large orders survive as strings") {
  const auto doc = parse_input(R"({"schema_version": 1, "complex": {"ell": 2, "d": 1,
    "mode": "simplicial", "facets": [[1], [2]]},
    "order_matrix": {"rows": [[0, 0], [0, "123456789012345678901234567890"], [1, 0]]}})");
  CHECK(doc.order_matrix->order(1, 2) == Integer("123456789012345678901234567890"));
  CHECK(parse_input(serialize_input(doc)) == doc);
}

TEST_CASE("fixtures") {
  CHECK(*cycle_fixture(3).build_complex() ==
        DualComplex::from_facets(3, 1, {{1, 2}, {2, 3}, {1, 3}}));
  const auto sb = simplex_boundary_fixture(2);
  CHECK(sb.complex.ell == 3);
  CHECK(sb.build_complex()->strata().size() == 6);
  CHECK(simplex_boundary_fixture(3).build_complex()->strata().size() == 14);
  CHECK(path_fixture(4).build_complex()->strata().size() == 7);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = random_fixture(5, 2, seed);
    CHECK(a == random_fixture(5, 2, seed));
    CHECK(serialize_input(a) == serialize_input(random_fixture(5, 2, seed)));
    CHECK(validate(*a.build_complex()).empty());
  }
  CHECK(random_fixture(6, 3, 1) != random_fixture(6, 3, 2));
  CHECK_THROWS(cycle_fixture(1));
  CHECK(parse_fixture_kind("simplex_boundary") == FixtureKind::simplex_boundary);
  CHECK_THROWS(parse_fixture_kind("torus"));
}

TEST_CASE("digest and certificate text") {
  const auto doc = cycle_fixture(3);
  CHECK(input_digest(doc).rfind("fnv1a64:", 0) == 0);
  CHECK(input_digest(doc) == input_digest(parse_input(serialize_input(doc))));
  CHECK(input_digest(doc) != input_digest(cycle_fixture(4)));

  const auto c = doc.build_complex();
  const auto report = check_faithful(c, doc.orders(*c));
  const auto text = emit_certificate(report, *c, input_digest(doc));
  const auto cert = nlohmann::json::parse(text);
  CHECK(cert["overall"] == "faithful");
  CHECK(cert["strata"].size() == 6);
  CHECK(cert["pairs"].size() == 15);

  const auto bad = cycle_fixture(2);
  const auto bc = bad.build_complex();
  const auto bcert = nlohmann::json::parse(
      emit_certificate(check_faithful(bc, bad.orders(*bc)), *bc, input_digest(bad)));
  CHECK(bcert["overall"] == "not_faithful");
  CHECK(bcert["discrepancies"].size() == 1);
}

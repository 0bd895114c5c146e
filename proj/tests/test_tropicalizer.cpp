#include "oracles.hpp"
#include "skeltrop/io.hpp"
#include "skeltrop/tropicalizer.hpp"

#include <doctest.h>

#include <map>
#include <random>
#include <set>

using namespace skeltrop;

namespace {

struct Built {
  std::shared_ptr<const DualComplex> complex;
  OrderMatrix orders;
  PiecewiseAffineMap map;
};

Built build(const InputDocument& doc) {
  auto c = doc.build_complex();
  auto m = doc.orders(*c);
  auto f = build_map(c, m);
  return {c, m, f};
}

StratumId find(const DualComplex& c, std::vector<int> vertices, std::size_t skip = 0) {
  for (const auto& s : c.strata())
    if (s.vertices == vertices && skip-- == 0) return s.id;
  throw std::logic_error("no such stratum");
}

std::string key(const RatVector& v) {
  std::string out;
  for (const auto& x : v) out += x.get_str() + ",";
  return out;
}

}  // namespace

TEST_CASE("canonical pieces") {
  const auto b = build(cycle_fixture(3));
  const auto e12 = find(*b.complex, {1, 2});
  CHECK(b.map.piece(e12) == IntMatrix{{0, 1}, {1, 0}, {1, 1}});
  CHECK(b.map.image({e12, {Rational(1, 2), Rational(1, 2)}}) ==
        RatVector{Rational(1, 2), Rational(1, 2), Rational(1)});
  CHECK(b.map.projective_image({e12, {Rational(1), Rational(0)}}).coords() ==
        std::vector<TropCoord>{Rational(0), Rational(0), Rational(1), Rational(1)});

  auto bad = cycle_fixture(3);
  IntMatrix orders{{0, 0, 0}, {0, 2, 1}, {1, 0, 1}, {1, 1, 0}};
  bad.order_matrix = OrderMatrix(orders, std::vector<bool>(4, true));
  CHECK_THROWS_WITH_AS(build(bad), doctest::Contains("adjacent_order_not_one"),
                       std::invalid_argument);
}

TEST_CASE("unimodularity certificates") {
  const auto b = build(simplex_boundary_fixture(3));
  for (const auto& s : b.complex->strata()) {
    const auto cert = check_unimodular(b.map, s.id);
    CHECK(cert.verdict);
    CHECK(cert.rank == s.size() - 1);
    for (const auto& d : cert.elementary_divisors) CHECK(d == 1);
  }
  const auto v = check_unimodular(b.map, *b.complex->vertex_stratum(1));
  CHECK(v.verdict);
  CHECK(v.edge_matrix.rows() == 0);

  // Doubling every off-diagonal order scales each edge vector by 2.
  auto c = std::make_shared<const DualComplex>(DualComplex::from_facets(2, 1, {{1, 2}}));
  std::vector<IntMatrix> pieces{IntMatrix{{0}, {2}}, IntMatrix{{2}, {0}}, IntMatrix{{0, 2}, {2, 0}}};
  const PiecewiseAffineMap doubled(c, pieces);
  const auto cert = check_unimodular(doubled, find(*c, {1, 2}));
  CHECK_FALSE(cert.verdict);
  CHECK(cert.elementary_divisors == IntVector{2});
  CHECK(cert.edge_matrix == IntMatrix{{2, -2}});
}

TEST_CASE("separation certificates on the triangle") {
  const auto b = build(cycle_fixture(3));
  const auto& c = *b.complex;
  const auto e12 = find(c, {1, 2});
  const auto e23 = find(c, {2, 3});
  CHECK(separation_certificate(b.map, b.orders, e12, e23) == 1);
  const auto range = relint_value_range(b.orders, 1, c.stratum(e12));
  CHECK(range.low == 0);
  CHECK(range.high == 1);
  CHECK(range.low_open);
  CHECK(range.high_open);
  CHECK(simplex_lower_bound(b.orders, 1, c.stratum(e23)) == 1);

  const auto v3 = *c.vertex_stratum(3);
  const auto a = separation_certificate(b.map, b.orders, e12, v3);
  REQUIRE(a);
  CHECK((*a == 1 || *a == 2));

  CHECK_THROWS(separation_certificate(b.map, b.orders, e12, e12));
  CHECK_THROWS(separation_certificate(b.map, b.orders, e12, *c.vertex_stratum(1)));
}

TEST_CASE("value ranges") {
  const auto b = build(path_fixture(2));
  const auto v1 = *b.complex->vertex_stratum(1);
  const auto point = relint_value_range(b.orders, 1, b.complex->stratum(v1));
  CHECK(point.low == 0);
  CHECK(point.high == 0);
  CHECK_FALSE(point.low_open);
  CHECK(point.contains(Rational(0)));
  const ValueInterval open{Rational(0), Rational(1), true, true};
  CHECK_FALSE(open.contains(Rational(0)));
  CHECK(open.contains(Rational(1, 2)));
  CHECK_FALSE(open.contains(Rational(1)));
}

TEST_CASE("two edges on the same vertices") {
  const auto b = build(cycle_fixture(2));
  const StratumId s{2}, t{3};
  CHECK_FALSE(separation_certificate(b.map, b.orders, s, t).has_value());
  const auto v = images_relint_disjoint_exact(b.map, s, t);
  CHECK_FALSE(v.disjoint);
  REQUIRE(v.witness);
  CHECK(*v.witness == b.map.image({s, {Rational(1, 2), Rational(1, 2)}}));
}

TEST_CASE("exact disjointness against grid sampling on the triangle") {
  const auto b = build(cycle_fixture(3));
  const auto& c = *b.complex;
  const std::vector<StratumId> edges{find(c, {1, 2}), find(c, {1, 3}), find(c, {2, 3})};
  const auto grid = oracle::simplex_grid(2, 16, true);
  for (auto s : edges)
    for (auto t : edges) {
      if (s == t) continue;
      CHECK(images_relint_disjoint_exact(b.map, s, t).disjoint);
      std::set<std::string> seen;
      for (const auto& u : grid) seen.insert(key(b.map.image({s, u})));
      for (const auto& u : grid) CHECK(seen.count(key(b.map.image({t, u}))) == 0);
    }
}

TEST_CASE("an edge against its endpoint") {
  const auto b = build(cycle_fixture(3));
  const auto e12 = find(*b.complex, {1, 2});
  const auto v = images_relint_disjoint_exact(b.map, e12, *b.complex->vertex_stratum(1));
  CHECK(v.disjoint);
  CHECK(v.via_injectivity);
}

TEST_CASE("unimodular pieces are injective on the rational grid") {
  for (const auto& f : oracle::plain_fixture_suite()) {
    if (f.name.rfind("random", 0) == 0 && f.name.find(",0)") == std::string::npos) continue;
    const auto b = build(f.doc);
    for (const auto& s : b.complex->strata()) {
      if (!check_unimodular(b.map, s.id).verdict) continue;
      std::set<std::string> seen;
      const auto grid = oracle::simplex_grid(s.size(), 8, false);
      for (const auto& u : grid) CHECK(seen.insert(key(b.map.image({s.id, u}))).second);
    }
  }
}

TEST_CASE("canonical closed form") {
  for (const auto& f : oracle::plain_fixture_suite()) {
    const auto b = build(f.doc);
    for (const auto& s : b.complex->strata())
      for (std::size_t a = 0; a < s.size(); ++a) {
        const auto img = b.map.vertex_image(s.id, a);
        for (std::size_t c = 0; c < s.size(); ++c)
          CHECK(img[static_cast<std::size_t>(s.vertices[c] - 1)] == (a == c ? 0 : 1));
      }
  }
}

TEST_CASE("chart and projective images are coherent") {
  std::mt19937_64 rng(6);
  const auto b = build(simplex_boundary_fixture(3));
  const auto& strata = b.complex->strata();
  for (int trial = 0; trial < 300; ++trial) {
    const auto& s = strata[rng() % strata.size()];
    const auto& t = strata[rng() % strata.size()];
    SimplexPoint p{s.id, oracle::random_simplex_point(rng, s.size(), false)};
    SimplexPoint q{t.id, oracle::random_simplex_point(rng, t.size(), false)};
    if (trial % 3 == 0) q = p;
    CHECK((b.map.image(p) == b.map.image(q)) ==
          trop_eq(b.map.projective_image(p), b.map.projective_image(q)));
  }
}

TEST_CASE("certificates are sound and complete on plain complexes") {
  for (const auto& f : oracle::plain_fixture_suite()) {
    const auto b = build(f.doc);
    const auto report = check_faithful(b.complex, b.orders);
    CHECK(report.overall == Overall::faithful);
    CHECK(report.discrepancies.empty());
    CHECK(report.defects.empty());
    for (const auto& p : report.pairs) {
      CHECK(p.certified);
      REQUIRE(p.exact);
      CHECK(p.exact->disjoint);
    }
  }
}

TEST_CASE("check modes and pair filters") {
  const auto b = build(cycle_fixture(2));
  CHECK(check_faithful(b.complex, b.orders, {CheckMode::exact, 1, {}}).overall ==
        Overall::not_faithful);
  CHECK(check_faithful(b.complex, b.orders, {CheckMode::certificate, 1, {}}).overall ==
        Overall::certificate_incomplete);
  const auto both = check_faithful(b.complex, b.orders);
  CHECK(both.overall == Overall::not_faithful);
  CHECK(both.discrepancies.size() == 1);

  const auto tri = build(cycle_fixture(3));
  const auto filtered =
      check_faithful(tri.complex, tri.orders, {CheckMode::both, 1, {{StratumId{3}, StratumId{4}}}});
  CHECK(filtered.pair_filter_applied);
  CHECK(filtered.pairs.size() == 1);
  CHECK(filtered.overall == Overall::certificate_incomplete);

  CHECK(parse_check_mode("exact") == CheckMode::exact);
  CHECK_THROWS(parse_check_mode("fast"));
  CHECK(to_string(Overall::certificate_incomplete) == "certificate_incomplete");
}

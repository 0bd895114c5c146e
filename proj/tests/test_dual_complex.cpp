#include "oracles.hpp"
#include "skeltrop/dual_complex.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace skeltrop;

namespace {

std::vector<std::vector<int>> vertex_sets(const DualComplex& c) {
  std::vector<std::vector<int>> out;
  for (const auto& s : c.strata()) out.push_back(s.vertices);
  return out;
}

// Counts distinct nonempty subsets of the facets by brute force.
std::size_t distinct_faces(const std::vector<std::vector<int>>& facets) {
  std::set<std::vector<int>> seen;
  for (const auto& f : facets)
    for (unsigned mask = 1; mask < (1u << f.size()); ++mask) {
      std::vector<int> sub;
      for (std::size_t a = 0; a < f.size(); ++a)
        if (mask & (1u << a)) sub.push_back(f[a]);
      seen.insert(sub);
    }
  return seen.size();
}

bool has_rule(const std::vector<ComplexViolation>& v, const std::string& rule) {
  return std::any_of(v.begin(), v.end(), [&](const auto& x) { return x.rule == rule; });
}

DualComplex two_edge_delta() {
  return DualComplex::from_strata(2, 1, ComplexMode::delta,
                                  {{StratumId{0}, {1}, {}},
                                   {StratumId{1}, {2}, {}},
                                   {StratumId{2}, {1, 2}, {{1, StratumId{0}}, {2, StratumId{1}}}},
                                   {StratumId{3}, {1, 2}, {{1, StratumId{0}}, {2, StratumId{1}}}}});
}

}  // namespace

TEST_CASE("simplicial builder") {
  const auto edge = DualComplex::from_facets(2, 1, {{1, 2}});
  CHECK(vertex_sets(edge) == std::vector<std::vector<int>>{{1}, {2}, {1, 2}});

  const auto triangle = DualComplex::from_facets(3, 1, {{1, 2}, {2, 3}, {1, 3}});
  CHECK(vertex_sets(triangle) ==
        std::vector<std::vector<int>>{{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(triangle.is_edge(3, 1));
  CHECK(triangle.is_connected());

  const auto bowtie = DualComplex::from_facets(5, 2, {{1, 2, 3}, {3, 4, 5}});
  // Two triangles meeting in vertex 3: 7 + 7 - 1 nonempty faces.
  CHECK(bowtie.strata().size() == distinct_faces({{1, 2, 3}, {3, 4, 5}}));
  CHECK(bowtie.strata().size() == 13);
  CHECK_FALSE(bowtie.is_edge(1, 4));

  const auto reversed = DualComplex::from_facets(3, 2, {{3, 1, 2}});
  CHECK(reversed.strata().back().vertices == std::vector<int>{1, 2, 3});

  CHECK_THROWS_WITH_AS(DualComplex::from_facets(3, 1, {{1, 2, 3}}),
                       doctest::Contains("exceeds d+1"), std::invalid_argument);
  CHECK_THROWS_AS(DualComplex::from_facets(2, 1, {{1, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(DualComplex::from_facets(2, 1, {{1, 1}}), std::invalid_argument);
}

TEST_CASE("isolated vertices and connectivity") {
  const auto c = DualComplex::from_facets(3, 1, {{1, 2}, {3}});
  CHECK(validate(c).empty());
  CHECK_FALSE(c.is_connected());
  CHECK(c.vertex_stratum(3).has_value());
}

TEST_CASE("validate") {
  CHECK(validate(DualComplex::from_facets(3, 1, {{1, 2}, {2, 3}, {1, 3}})).empty());
  CHECK(validate(two_edge_delta()).empty());

  const auto missing = DualComplex::from_strata(
      2, 1, ComplexMode::simplicial,
      {{StratumId{0}, {1}, {}}, {StratumId{1}, {2}, {}}, {StratumId{2}, {1, 2}, {{2, StratumId{1}}}}});
  const auto v = validate(missing);
  REQUIRE(v.size() == 1);
  CHECK(v[0].rule == "face_map_incomplete");
  CHECK(v[0].stratum == StratumId{2});

  const auto no_vertex = DualComplex::from_strata(
      2, 1, ComplexMode::simplicial, {{StratumId{0}, {1}, {}}});
  CHECK(has_rule(validate(no_vertex), "vertex_missing"));

  const auto repeated = DualComplex::from_strata(2, 1, ComplexMode::simplicial,
                                                 two_edge_delta().strata());
  CHECK(has_rule(validate(repeated), "repeated_vertex_set"));

  const auto wrong_face = DualComplex::from_strata(
      2, 1, ComplexMode::delta,
      {{StratumId{0}, {1}, {}},
       {StratumId{1}, {2}, {}},
       {StratumId{2}, {1, 2}, {{1, StratumId{1}}, {2, StratumId{0}}}}});
  CHECK(has_rule(validate(wrong_face), "face_vertex_set"));

  const auto too_big = DualComplex::from_strata(
      2, 0, ComplexMode::simplicial,
      {{StratumId{0}, {1}, {}},
       {StratumId{1}, {2}, {}},
       {StratumId{2}, {1, 2}, {{1, StratumId{0}}, {2, StratumId{1}}}}});
  CHECK(has_rule(validate(too_big), "dimension_bound"));
}

TEST_CASE("face maps through two levels must agree") {
  // Two triangles on {1,2,3} whose edge {1,2} differs: the triangle's face
  // map must send {1} to the same vertex stratum as the edge's map does.
  std::vector<Stratum> strata{
      {StratumId{0}, {1}, {}},
      {StratumId{1}, {2}, {}},
      {StratumId{2}, {3}, {}},
      {StratumId{3}, {1, 2}, {{1, StratumId{0}}, {2, StratumId{1}}}},
      {StratumId{4}, {1, 3}, {{1, StratumId{0}}, {2, StratumId{2}}}},
      {StratumId{5}, {2, 3}, {{1, StratumId{1}}, {2, StratumId{2}}}},
      {StratumId{6},
       {1, 2, 3},
       {{1, StratumId{0}}, {2, StratumId{1}}, {4, StratumId{2}}, {3, StratumId{3}},
        {5, StratumId{4}}, {6, StratumId{5}}}},
  };
  CHECK(validate(DualComplex::from_strata(3, 2, ComplexMode::delta, strata)).empty());
  strata[6].faces[3] = StratumId{5};
  CHECK_FALSE(validate(DualComplex::from_strata(3, 2, ComplexMode::delta, strata)).empty());
}

TEST_CASE("relative interior membership") {
  CHECK(relint_membership({StratumId{0}, {Rational(1, 2), Rational(1, 2)}}));
  CHECK_FALSE(relint_membership({StratumId{0}, {Rational(1), Rational(0)}}));
  CHECK(relint_membership({StratumId{0}, {Rational(1, 3), Rational(1, 3), Rational(1, 3)}}));
}

TEST_CASE("face restriction") {
  const auto c = DualComplex::from_facets(3, 2, {{1, 2, 3}});
  const StratumId tri = c.strata().back().id;
  const StratumId e12 = c.strata()[3].id;
  const StratumId v1 = *c.vertex_stratum(1);
  REQUIRE(c.stratum(e12).vertices == std::vector<int>{1, 2});

  const SimplexPoint p{tri, {Rational(1, 2), Rational(1, 2), Rational(0)}};
  CHECK(is_well_formed(c, p));
  const auto q = face_restriction(c, p, e12);
  CHECK(q.stratum == e12);
  CHECK(q.u == RatVector{Rational(1, 2), Rational(1, 2)});

  const auto r = face_restriction(c, SimplexPoint{e12, {Rational(1), Rational(0)}}, v1);
  CHECK(r.u == RatVector{Rational(1)});

  CHECK_THROWS_AS(
      face_restriction(c, SimplexPoint{tri, {Rational(1, 3), Rational(1, 3), Rational(1, 3)}}, e12),
      std::invalid_argument);

  CHECK(carrier(c, p).stratum == e12);
  CHECK(carrier(c, SimplexPoint{tri, {Rational(0), Rational(0), Rational(1)}}).stratum ==
        *c.vertex_stratum(3));
}

TEST_CASE("plain strata have 2^r - 2 faces") {
  for (const auto& f : oracle::plain_fixture_suite()) {
    const auto c = f.doc.build_complex();
    for (const auto& s : c->strata())
      CHECK(s.faces.size() == (std::size_t{1} << s.size()) - 2);
  }
}

TEST_CASE("face restriction commutes along nested faces") {
  std::mt19937_64 rng(5);
  const auto c = DualComplex::from_facets(5, 3, {{1, 2, 3, 4}, {2, 4, 5}});
  for (const auto& s : c.strata()) {
    for (const auto& [mask, mid] : s.faces) {
      const auto& middle = c.stratum(mid);
      for (const auto& [inner_mask, low] : middle.faces) {
        RatVector u(s.size(), Rational(0));
        // weight only on the slots of `low`
        Rational total = 0;
        for (std::size_t a = 0; a < s.size(); ++a)
          if (c.stratum(low).has_vertex(s.vertices[a])) {
            u[a] = 1 + static_cast<long>(rng() % 5);
            total += u[a];
          }
        for (auto& x : u) x /= total;
        const SimplexPoint p{s.id, u};
        const auto direct = face_restriction(c, p, low);
        const auto stepwise = face_restriction(c, face_restriction(c, p, mid), low);
        CHECK(direct.u == stepwise.u);
        CHECK(direct.stratum == stepwise.stratum);
      }
    }
  }
}

TEST_CASE("each point lies in the relative interior of exactly one stratum") {
  std::mt19937_64 rng(9);
  const auto c = DualComplex::from_facets(4, 2, {{1, 2, 3}, {2, 3, 4}});
  for (int trial = 0; trial < 200; ++trial) {
    const auto& s = c.strata()[rng() % c.strata().size()];
    const auto u = oracle::random_simplex_point(rng, s.size(), false);
    const SimplexPoint p{s.id, u};
    const auto home = carrier(c, p);
    CHECK(relint_membership(home));
    // Any stratum whose relint carries p is a face of s over the support of u.
    int carriers = 0;
    if (relint_membership(p)) ++carriers;
    for (const auto& [mask, fid] : s.faces) {
      bool outside_zero = true;
      for (std::size_t a = 0; a < s.size(); ++a)
        if (!(mask & (SlotMask{1} << a)) && u[a] != 0) outside_zero = false;
      if (!outside_zero) continue;
      if (relint_membership(face_restriction(c, p, fid))) {
        ++carriers;
        CHECK(fid == home.stratum);
      }
    }
    CHECK(carriers == 1);
  }
}

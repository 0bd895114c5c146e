#include "oracles.hpp"
#include "skeltrop/trop_space.hpp"

#include <doctest.h>

#include <random>

using namespace skeltrop;

namespace {

TropicalProjectivePoint tp(std::vector<TropCoord> raw) { return trop_normalize(raw); }
TropCoord q(long p, long d = 1) { return Rational(p, d); }

Rational brute_force(const MonomialSupport& f, const RatVector& u) {
  std::optional<Rational> best;
  for (const auto& m : f.exponents()) {
    Rational v = 0;
    for (std::size_t a = 0; a < u.size(); ++a) v += Rational(static_cast<long>(m[a])) * u[a];
    if (!best || v < *best) best = v;
  }
  return *best;
}

MonomialSupport random_support(std::mt19937_64& rng, std::size_t r) {
  std::vector<std::vector<std::int64_t>> e(1 + rng() % 8, std::vector<std::int64_t>(r));
  for (auto& m : e)
    for (auto& x : m) x = static_cast<std::int64_t>(rng() % 6);
  return MonomialSupport(r, e);
}

}  // namespace

TEST_CASE("normalization") {
  CHECK(tp({q(3), q(5), trop_infinity()}).coords() ==
        std::vector<TropCoord>{q(0), q(2), trop_infinity()});
  CHECK(tp({q(0), q(0), q(0)}).coords() == std::vector<TropCoord>{q(0), q(0), q(0)});
  CHECK(tp({q(-1, 2), q(1, 2)}).coords() == std::vector<TropCoord>{q(0), q(1)});
  CHECK_THROWS(tp({trop_infinity(), trop_infinity()}));
}

TEST_CASE("projective equality") {
  CHECK(trop_eq(tp({q(0), q(2), trop_infinity()}), tp({q(5), q(7), trop_infinity()})));
  CHECK_FALSE(trop_eq(tp({q(0), q(2), trop_infinity()}), tp({q(0), q(2), q(3)})));
  CHECK_FALSE(trop_eq(tp({q(0), q(1)}), tp({q(1), q(0)})));
  CHECK_THROWS(trop_eq(tp({q(0)}), tp({q(0), q(1)})));
}

TEST_CASE("normalization is idempotent and equality is an equivalence") {
  std::mt19937_64 rng(2);
  std::vector<TropicalProjectivePoint> pts;
  for (int i = 0; i < 40; ++i) {
    std::vector<TropCoord> raw(3);
    for (auto& x : raw)
      x = (rng() % 5 == 0) ? trop_infinity() : q(static_cast<long>(rng() % 7) - 3, 1 + rng() % 2);
    if (!raw[0] && !raw[1] && !raw[2]) raw[0] = q(0);
    const auto p = tp(raw);
    CHECK(trop_normalize(p.coords()) == p);
    pts.push_back(p);
  }
  for (const auto& a : pts) {
    CHECK(trop_eq(a, a));
    for (const auto& b : pts) {
      CHECK(trop_eq(a, b) == trop_eq(b, a));
      for (const auto& c : pts)
        if (trop_eq(a, b) && trop_eq(b, c)) CHECK(trop_eq(a, c));
    }
  }
}

TEST_CASE("min-plus evaluation") {
  const RatVector third{Rational(1, 3), Rational(2, 3)};
  CHECK(eval_min_plus(MonomialSupport(2, {{0, 0}}), third) == 0);
  CHECK(eval_min_plus(MonomialSupport(2, {{1, 1}}), third) == 1);
  CHECK(eval_min_plus(MonomialSupport(2, {{1, 0}, {0, 1}}), third) == Rational(1, 3));
  CHECK(eval_min_plus(MonomialSupport(3, {{1, 1, 1}}),
                      RatVector{Rational(1, 7), Rational(2, 7), Rational(4, 7)}) == 1);
  CHECK_THROWS(MonomialSupport(2, {}));
  CHECK_THROWS(MonomialSupport(2, {{1, -1}}));
  CHECK_THROWS(MonomialSupport(2, {{1}}));
  CHECK_THROWS(eval_min_plus(MonomialSupport(2, {{1, 0}}), RatVector{Rational(1)}));
  CHECK_THROWS(eval_min_plus(MonomialSupport(1, {{1}}), RatVector{Rational(-1)}));
}

TEST_CASE("min-plus properties on random supports") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + rng() % 4;
    const auto f = random_support(rng, r);
    const auto g = random_support(rng, r);
    const auto u = oracle::random_simplex_point(rng, r, false);
    const auto w = oracle::random_simplex_point(rng, r, false);
    RatVector mid(r);
    for (std::size_t a = 0; a < r; ++a) mid[a] = (u[a] + w[a]) / 2;

    CHECK(eval_min_plus(f, u) == brute_force(f, u));
    CHECK(eval_min_plus(f, mid) >= (eval_min_plus(f, u) + eval_min_plus(f, w)) / 2);

    auto bigger = f.exponents();
    bigger.insert(bigger.end(), g.exponents().begin(), g.exponents().end());
    CHECK(eval_min_plus(MonomialSupport(r, bigger), u) <= eval_min_plus(f, u));

    CHECK(eval_min_plus(minkowski_sum(f, g), u) == eval_min_plus(f, u) + eval_min_plus(g, u));
  }
}

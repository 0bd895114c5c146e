#include "skeltrop/trop_space.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace skeltrop {

std::string TropicalProjectivePoint::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += " : ";
    out += coords_[i] ? coords_[i]->get_str() : "inf";
  }
  return out + ")";
}

TropicalProjectivePoint trop_normalize(std::span<const TropCoord> raw) {
  const TropCoord* lowest = nullptr;
  for (const auto& x : raw)
    if (x && (!lowest || *x < **lowest)) lowest = &x;
  if (!lowest) throw std::invalid_argument("all coordinates are infinite");
  const Rational shift = **lowest;
  TropicalProjectivePoint p;
  p.coords_.reserve(raw.size());
  for (const auto& x : raw) p.coords_.push_back(x ? TropCoord(*x - shift) : trop_infinity());
  return p;
}

bool trop_eq(const TropicalProjectivePoint& x, const TropicalProjectivePoint& y) {
  if (x.size() != y.size()) throw std::invalid_argument("points have different lengths");
  return x == y;
}

namespace {

bool dominates(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

}  // namespace

MonomialSupport::MonomialSupport(std::size_t r,
                                 std::vector<std::vector<std::int64_t>> exponents)
    : r_(r), exponents_(std::move(exponents)) {
  if (exponents_.empty()) throw std::invalid_argument("empty monomial support");
  for (const auto& m : exponents_) {
    if (m.size() != r_) throw std::invalid_argument("exponent vector has wrong length");
    if (std::any_of(m.begin(), m.end(), [](std::int64_t e) { return e < 0; })) {
      throw std::invalid_argument("negative exponent");
    }
  }
  std::set<std::vector<std::int64_t>> distinct(exponents_.begin(), exponents_.end());
  for (const auto& m : distinct) {
    const bool dominated = std::any_of(distinct.begin(), distinct.end(), [&](const auto& other) {
      return other != m && dominates(m, other);
    });
    if (!dominated) minimal_.push_back(m);
  }
}

MonomialSupport minkowski_sum(const MonomialSupport& f, const MonomialSupport& g) {
  if (f.r() != g.r()) throw std::invalid_argument("supports have different r");
  std::vector<std::vector<std::int64_t>> sums;
  for (const auto& a : f.exponents())
    for (const auto& b : g.exponents()) {
      std::vector<std::int64_t> m(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] + b[i];
      sums.push_back(std::move(m));
    }
  return MonomialSupport(f.r(), std::move(sums));
}

Rational eval_min_plus(const MonomialSupport& f, std::span<const Rational> u) {
  if (u.size() != f.r()) throw std::invalid_argument("weight vector has wrong length");
  if (std::any_of(u.begin(), u.end(), [](const Rational& x) { return x < 0; })) {
    throw std::invalid_argument("negative weight");
  }
  std::optional<Rational> best;
  for (const auto& m : f.minimal_exponents()) {
    Rational value = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) value += u[i] * static_cast<long>(m[i]);
    if (!best || value < *best) best = std::move(value);
  }
  return *best;
}

}  // namespace skeltrop

#pragma once

// Tropical projective space over T = Q u {inf} and the min-plus form of the
// monomial valuation |f|_{u,S}.

#include "skeltrop/numeric.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace skeltrop {

/// Element of T; nullopt is +infinity.
using TropCoord = std::optional<Rational>;

inline TropCoord trop_infinity() { return std::nullopt; }

/// Point of TP^n, stored in its canonical representative: the smallest
/// finite coordinate is 0.
class TropicalProjectivePoint {
 public:
  const std::vector<TropCoord>& coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  std::string to_string() const;

  friend bool operator==(const TropicalProjectivePoint&, const TropicalProjectivePoint&) = default;

 private:
  friend TropicalProjectivePoint trop_normalize(std::span<const TropCoord> raw);
  std::vector<TropCoord> coords_;
};

/// Shifts every finite entry by minus the smallest finite entry. Throws
/// std::invalid_argument when every entry is infinite.
TropicalProjectivePoint trop_normalize(std::span<const TropCoord> raw);

/// Equality in TP^n. Throws std::invalid_argument on a length mismatch.
bool trop_eq(const TropicalProjectivePoint& x, const TropicalProjectivePoint& y);

/// Exponent vectors m in Z_{>=0}^r of the terms a_m T^m with a_m != 0.
class MonomialSupport {
 public:
  /// Throws std::invalid_argument on an empty list, a negative entry or a
  /// length different from r.
  MonomialSupport(std::size_t r, std::vector<std::vector<std::int64_t>> exponents);

  std::size_t r() const { return r_; }
  const std::vector<std::vector<std::int64_t>>& exponents() const { return exponents_; }
  /// Componentwise-minimal exponents; only these can attain the minimum.
  const std::vector<std::vector<std::int64_t>>& minimal_exponents() const { return minimal_; }

  /// Support of a product with generic coefficients: {m + m'}.
  friend MonomialSupport minkowski_sum(const MonomialSupport& f, const MonomialSupport& g);

 private:
  std::size_t r_;
  std::vector<std::vector<std::int64_t>> exponents_;
  std::vector<std::vector<std::int64_t>> minimal_;
};

/// -log|f|_{u,S} = min over the support of <u, m>. Throws
/// std::invalid_argument on a negative weight or a dimension mismatch.
Rational eval_min_plus(const MonomialSupport& f, std::span<const Rational> u);

}  // namespace skeltrop

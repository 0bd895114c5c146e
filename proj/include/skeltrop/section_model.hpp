#pragma once

// Sections s_0..s_ell described by their vanishing orders along the
// special-fiber components, and the affine functionals -log|f_i| they induce
// on canonical simplices (f_i = s_i / s_0).

#include "skeltrop/dual_complex.hpp"
#include "skeltrop/exact_lattice.hpp"
#include "skeltrop/numeric.hpp"

#include <span>
#include <string>
#include <vector>

namespace skeltrop {

/// (ell+1) x ell nonnegative orders. Row 0 is the base section; row i >= 1 is
/// s_i. Components are 1-indexed in the accessors, matching the complex.
class OrderMatrix {
 public:
  OrderMatrix() = default;
  /// Throws std::invalid_argument unless `orders` is (ell+1) x ell with
  /// nonnegative entries and one flag per row.
  OrderMatrix(IntMatrix orders, std::vector<bool> horizontal_effective);

  int ell() const { return static_cast<int>(orders_.cols()); }
  /// ord of s_section along component X_component.
  const Integer& order(int section, int component) const;
  bool horizontal_effective(int section) const;

  const IntMatrix& orders() const { return orders_; }
  const std::vector<bool>& horizontal_flags() const { return horizontal_; }

  friend bool operator==(const OrderMatrix&, const OrderMatrix&) = default;

 private:
  IntMatrix orders_;
  std::vector<bool> horizontal_;
};

struct OrderViolation {
  int section = 0;
  int component = 0;
  std::string rule;
  std::string message;
};

/// Row 0 zero, zero diagonal, 1 off the diagonal (the minimal choice).
OrderMatrix canonical_order_matrix(const DualComplex& complex);

/// Empty iff the base row vanishes, the diagonal vanishes, adjacent orders
/// are exactly 1 and every other off-diagonal order is at least 1. Throws
/// std::invalid_argument when ell differs.
std::vector<OrderViolation> validate_orders(const OrderMatrix& m, const DualComplex& complex);

/// <coefficients, u> + constant on the canonical simplex of `stratum`.
struct AffineFunctional {
  StratumId stratum;
  RatVector coefficients;
  Rational constant;

  Rational evaluate(std::span<const Rational> u) const;
};

/// Exact-mode value of -log|f_section| on the stratum: coefficient b is the
/// order of s_section along the b-th vertex of the stratum. Throws
/// std::out_of_range for a bad section index.
AffineFunctional restrict_affine(const OrderMatrix& m, int section, const Stratum& stratum);

/// sum_a u_a * ord_{j_a}(s_section): a lower bound for -log|f_section| at u.
/// Throws std::domain_error when the section's horizontal part is not
/// effective, std::invalid_argument when u is not in the simplex.
Rational concavity_lower_bound(const OrderMatrix& m, int section, const Stratum& stratum,
                               std::span<const Rational> u);

}  // namespace skeltrop

#pragma once

// Rational polyhedra in constraint form, projection by Fourier-Motzkin
// elimination, and an exact feasibility test that honours strict
// inequalities.

#include "skeltrop/numeric.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace skeltrop {

enum class Strictness { closed, strict };

/// <normal, x> <= bound, or < bound when strict.
struct LinearConstraint {
  IntVector normal;
  Rational bound;
  Strictness strictness = Strictness::closed;

  bool satisfied_by(std::span<const Rational> point) const;
  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

struct RationalPolyhedron {
  std::size_t ambient_dim = 0;
  std::vector<LinearConstraint> constraints;

  /// Throws std::invalid_argument on a zero normal or a dimension mismatch.
  void check() const;
  bool contains(std::span<const Rational> point) const;
};

/// Constraint form of conv(points), or of its relative interior when
/// `relative_interior` is set. Equalities of the affine hull appear as pairs
/// of closed inequalities. Computed by eliminating barycentric weights.
RationalPolyhedron simplex_image_polyhedron(const std::vector<RatVector>& points,
                                            bool relative_interior);

struct IntersectionResult {
  bool nonempty = false;
  std::optional<RatVector> witness;
};

/// Exact test whether P and Q share a point, strict constraints being
/// honoured strictly. The witness maximises the smallest slack of the
/// strict constraints (capped at 1). Throws std::invalid_argument when the
/// ambient dimensions differ.
IntersectionResult relint_intersection_nonempty(const RationalPolyhedron& p,
                                                const RationalPolyhedron& q);

/// Feasibility of a single mixed system; same witness rule as above.
IntersectionResult find_point(const RationalPolyhedron& p);

// Dense exact simplex solver, exposed for testing.
// maximize c.x subject to A x <= b, x >= 0.
struct LinearProgram {
  std::vector<RatVector> a;
  RatVector b;
  RatVector c;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Rational value;
  RatVector x;
};

LpSolution solve_lp(const LinearProgram& lp);

}  // namespace skeltrop

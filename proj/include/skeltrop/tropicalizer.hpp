#pragma once

// The skeleton-level tropicalization u -> (-log|f_1|, ..., -log|f_ell|) as a
// piecewise integral affine map, its per-simplex unimodularity certificates,
// and the two injectivity checks: the separating-coordinate certificate and
// an exact polytope-disjointness oracle.

#include "skeltrop/dual_complex.hpp"
#include "skeltrop/exact_lattice.hpp"
#include "skeltrop/section_model.hpp"
#include "skeltrop/trop_space.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace skeltrop {

class PiecewiseAffineMap {
 public:
  PiecewiseAffineMap(std::shared_ptr<const DualComplex> complex, std::vector<IntMatrix> pieces);

  const DualComplex& complex() const { return *complex_; }
  /// Target coordinate count (ell).
  std::size_t target_dim() const { return static_cast<std::size_t>(complex_->ell()); }

  /// ell x r matrix A_S; column b is the image of the b-th vertex of S.
  const IntMatrix& piece(StratumId stratum) const;

  RatVector image(const SimplexPoint& p) const;
  RatVector vertex_image(StratumId stratum, std::size_t slot) const;

  /// Image in TP^ell with the base chart coordinate 0 prepended.
  TropicalProjectivePoint projective_image(const SimplexPoint& p) const;

 private:
  std::shared_ptr<const DualComplex> complex_;
  std::vector<IntMatrix> pieces_;  // parallel to complex_->strata()
};

/// Throws std::invalid_argument listing violations when either the complex
/// or the orders fail validation.
PiecewiseAffineMap build_map(std::shared_ptr<const DualComplex> complex, const OrderMatrix& m);

struct UnimodularityCertificate {
  StratumId stratum;
  IntMatrix edge_matrix;  // rows A_S(e_b - e_1), b = 2..r
  IntVector elementary_divisors;
  std::size_t rank = 0;
  bool verdict = false;
};

UnimodularityCertificate check_unimodular(const PiecewiseAffineMap& f, StratumId stratum);

/// Interval of values, with open/closed ends.
struct ValueInterval {
  Rational low, high;
  bool low_open = false, high_open = false;

  bool contains(const Rational& x) const;
};

/// Coordinate g_a = -log|f_a| that puts relint(Delta_S) below 1 and all of
/// Delta_T at or above 1.
struct SeparationCertificate {
  StratumId separated;  // S
  StratumId other;      // T
  int coordinate = 0;   // vertex a of S outside T
  ValueInterval relint_range;  // g_a(relint Delta_S)
  Rational other_lower_bound;  // g_a >= this on Delta_T
};

/// Image of relint(Delta_S) under g_section, from the vertex values.
ValueInterval relint_value_range(const OrderMatrix& m, int section, const Stratum& stratum);

/// Smallest vertex value of g_section on Delta_T; a lower bound on all of
/// Delta_T when the section is horizontally effective.
Rational simplex_lower_bound(const OrderMatrix& m, int section, const Stratum& stratum);

/// Returns the first vertex a of S (in S's order) not in T such that g_a
/// takes vertex values 0 at a and 1 elsewhere on S, and at least 1 on every
/// vertex of T. Throws std::invalid_argument when S == T or one is a face of
/// the other.
std::optional<int> separation_certificate(const PiecewiseAffineMap& f, const OrderMatrix& m,
                                          StratumId s, StratumId t);

struct ExactPairVerdict {
  bool disjoint = false;
  /// The pair was discharged by injectivity of the ambient piece.
  bool via_injectivity = false;
  std::optional<RatVector> witness;  // common image point when not disjoint
};

/// Whether A_S(relint) and A_T(relint) are disjoint. Face pairs whose
/// ambient piece is affinely injective are disjoint outright; everything else
/// goes to the exact polytope intersection test.
ExactPairVerdict images_relint_disjoint_exact(const PiecewiseAffineMap& f, StratumId s,
                                              StratumId t);

enum class CheckMode { certificate, exact, both };
enum class Overall { faithful, not_faithful, certificate_incomplete };

std::string to_string(CheckMode mode);
std::string to_string(Overall overall);
CheckMode parse_check_mode(const std::string& text);

struct PairEvidence {
  StratumId first, second;  // first < second
  bool face_pair = false;
  /// Certificate path.
  std::optional<SeparationCertificate> separation;
  std::optional<StratumId> injective_ambient;  // face pairs
  bool certified = false;
  std::string certificate_note;  // why no certificate, when absent
  /// Exact path.
  std::optional<ExactPairVerdict> exact;
  /// Both paths ran and reached the same disjointness verdict.
  std::optional<bool> agreement;
};

struct FaithfulnessReport {
  CheckMode mode = CheckMode::both;
  std::vector<UnimodularityCertificate> strata;
  std::vector<PairEvidence> pairs;
  /// A certificate claimed disjointness the exact path refutes.
  std::vector<std::string> defects;
  /// Pairs the certificate could not discharge, with reasons.
  std::vector<std::string> discrepancies;
  bool pair_filter_applied = false;
  Overall overall = Overall::not_faithful;
};

struct CheckOptions {
  CheckMode mode = CheckMode::both;
  unsigned jobs = 1;
  /// When nonempty, only these unordered pairs are examined.
  std::vector<std::pair<StratumId, StratumId>> pair_filter;
};

/// Runs every check. Inputs must validate (std::invalid_argument otherwise).
/// The report does not depend on `jobs`.
FaithfulnessReport check_faithful(std::shared_ptr<const DualComplex> complex,
                                  const OrderMatrix& m, const CheckOptions& options = {});

}  // namespace skeltrop

#pragma once

// Integer thresholds for adjoint bundles: the basepoint-freeness bound phi(d),
// the twist m in the trivial/ample canonical cases, and section counts.

#include <string>

namespace skeltrop {

enum class BoundMode { angehrn_siu, fujita };
enum class CanonicalCase { trivial_canonical, ample_canonical };

struct BoundQuery {
  int d = 1;
  int ell = 1;
  BoundMode mode = BoundMode::angehrn_siu;
};

BoundMode parse_bound_mode(const std::string& text);
CanonicalCase parse_canonical_case(const std::string& text);
std::string to_string(BoundMode mode);
std::string to_string(CanonicalCase c);

/// d(d+1)/2 + 1 (Angehrn-Siu) or d + 1 (Fujita, known only for d <= 4).
/// Throws std::domain_error for Fujita with d >= 5 and std::invalid_argument
/// for d < 1 or ell < 1.
long phi_upper_bound(const BoundQuery& q);

/// ell + d + 1 sections; the tropical target is TP^{ell+d}.
long coordinate_count(int ell, int d);

/// Smallest admissible twist m: d+1 for trivial canonical bundle, d+2 for
/// ample canonical bundle. Throws std::domain_error for d >= 5.
long corollary_twist(int d, CanonicalCase c);

}  // namespace skeltrop

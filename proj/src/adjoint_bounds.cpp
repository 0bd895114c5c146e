#include "skeltrop/adjoint_bounds.hpp"

#include <stdexcept>

namespace skeltrop {

namespace {

constexpr int kFujitaKnownUpTo = 4;

void require_dimension(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be at least 1");
}

}  // namespace

BoundMode parse_bound_mode(const std::string& text) {
  if (text == "angehrn_siu") return BoundMode::angehrn_siu;
  if (text == "fujita") return BoundMode::fujita;
  throw std::invalid_argument("unknown bound mode '" + text + "'");
}

CanonicalCase parse_canonical_case(const std::string& text) {
  if (text == "trivial_canonical") return CanonicalCase::trivial_canonical;
  if (text == "ample_canonical") return CanonicalCase::ample_canonical;
  throw std::invalid_argument("unknown canonical case '" + text + "'");
}

std::string to_string(BoundMode mode) {
  return mode == BoundMode::angehrn_siu ? "angehrn_siu" : "fujita";
}

std::string to_string(CanonicalCase c) {
  return c == CanonicalCase::trivial_canonical ? "trivial_canonical" : "ample_canonical";
}

long phi_upper_bound(const BoundQuery& q) {
  require_dimension(q.d);
  if (q.ell < 1) throw std::invalid_argument("ell must be at least 1");
  const long d = q.d;
  if (q.mode == BoundMode::fujita) {
    if (q.d > kFujitaKnownUpTo) {
      throw std::domain_error("Fujita's bound is conjectural for d >= 5");
    }
    return d + 1;
  }
  return d * (d + 1) / 2 + 1;
}

long coordinate_count(int ell, int d) {
  require_dimension(d);
  if (ell < 1) throw std::invalid_argument("ell must be at least 1");
  return static_cast<long>(ell) + d + 1;
}

long corollary_twist(int d, CanonicalCase c) {
  require_dimension(d);
  if (d > kFujitaKnownUpTo) {
    throw std::domain_error("the twist bound is established only for d <= 4");
  }
  return c == CanonicalCase::trivial_canonical ? d + 1 : d + 2;
}

}  // namespace skeltrop

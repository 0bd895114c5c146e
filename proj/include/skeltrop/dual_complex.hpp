#pragma once

// Dual intersection complex of a strictly semistable special fiber.
//
// Vertices are the components X_1..X_ell (1-indexed). Each stratum carries an
// ordered vertex list; that order is fixed at construction and every
// barycentric coordinate vector refers to it. Strata are identified by a
// StratumId rather than by vertex set, so Delta-complexes in which two strata
// share a vertex set are representable.

#include "skeltrop/numeric.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace skeltrop {

struct StratumId {
  std::uint32_t value = 0;
  friend auto operator<=>(const StratumId&, const StratumId&) = default;
};

/// Bit a set <=> slot a of the owning stratum's vertex list.
using SlotMask = std::uint32_t;

struct Stratum {
  StratumId id;
  std::vector<int> vertices;
  /// Face stratum for each nonempty proper slot subset.
  std::map<SlotMask, StratumId> faces;

  std::size_t size() const { return vertices.size(); }
  std::size_t dimension() const { return vertices.size() - 1; }
  SlotMask full_mask() const { return (SlotMask{1} << vertices.size()) - 1; }
  std::optional<std::size_t> slot_of(int vertex) const;
  bool has_vertex(int vertex) const { return slot_of(vertex).has_value(); }

  friend bool operator==(const Stratum&, const Stratum&) = default;
};

enum class ComplexMode { simplicial, delta };

struct ComplexViolation {
  std::optional<StratumId> stratum;
  std::string rule;
  std::string message;
};

class DualComplex {
 public:
  /// Plain simplicial complex generated by `facets` (vertex lists, 1-indexed).
  /// Strata are ordered by dimension, then lexicographically; facet vertex
  /// order is normalised to ascending. Throws std::invalid_argument on a
  /// facet with more than d+1 vertices, a repeated vertex, or a vertex out of
  /// range.
  static DualComplex from_facets(int ell, int d, const std::vector<std::vector<int>>& facets);

  /// Explicit strata and face maps. Only structural problems that make the
  /// value unusable (duplicate ids, empty or out-of-range vertex lists,
  /// masks that do not fit the stratum) throw; everything else is reported
  /// by validate().
  static DualComplex from_strata(int ell, int d, ComplexMode mode, std::vector<Stratum> strata);

  int ell() const { return ell_; }
  int dim_bound() const { return d_; }
  ComplexMode mode() const { return mode_; }

  const std::vector<Stratum>& strata() const { return strata_; }
  const Stratum& stratum(StratumId id) const;
  bool contains(StratumId id) const;

  /// The 0-stratum of a vertex, if any.
  std::optional<StratumId> vertex_stratum(int vertex) const;

  /// True iff `face` is a proper face of `ambient` through the face map.
  bool is_proper_face(StratumId face, StratumId ambient) const;
  /// Slot mask of `face` inside `ambient`, if it is a proper face.
  std::optional<SlotMask> face_mask(StratumId face, StratumId ambient) const;

  /// Unordered vertex pairs spanned by some 1-stratum.
  bool is_edge(int a, int b) const;

  /// Whether the 1-skeleton joins every vertex.
  bool is_connected() const;

  friend bool operator==(const DualComplex&, const DualComplex&) = default;

 private:
  int ell_ = 0;
  int d_ = 0;
  ComplexMode mode_ = ComplexMode::simplicial;
  std::vector<Stratum> strata_;
  std::map<StratumId, std::size_t> index_;
};

/// Empty iff every complex invariant holds.
std::vector<ComplexViolation> validate(const DualComplex& complex);

/// A point (u_1..u_r) of the canonical simplex of a stratum.
struct SimplexPoint {
  StratumId stratum;
  RatVector u;
};

/// u_a >= 0, sum u_a = 1, and the length matches the stratum.
bool is_well_formed(const DualComplex& complex, const SimplexPoint& p);

/// All barycentric coordinates strictly positive.
bool relint_membership(const SimplexPoint& p);

/// Re-expresses `p` on the face `target`. Throws std::invalid_argument when
/// `target` is not a face of p's stratum or when p has weight outside it.
SimplexPoint face_restriction(const DualComplex& complex, const SimplexPoint& p,
                              StratumId target);

/// The unique stratum whose relative interior contains `p`, with its
/// coordinates there.
SimplexPoint carrier(const DualComplex& complex, const SimplexPoint& p);

}  // namespace skeltrop

#include "skeltrop/dual_complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace skeltrop {

namespace {

constexpr std::size_t kMaxStratumSize = 31;

std::string vertex_list(const std::vector<int>& vertices) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < vertices.size(); ++i) os << (i ? "," : "") << vertices[i];
  os << '}';
  return os.str();
}

std::string describe(const Stratum& s) {
  return "stratum " + std::to_string(s.id.value) + " " + vertex_list(s.vertices);
}

std::vector<int> sorted_vertices(const std::vector<int>& vertices) {
  std::vector<int> out = vertices;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> vertices_of_mask(const Stratum& s, SlotMask mask) {
  std::vector<int> out;
  for (std::size_t a = 0; a < s.vertices.size(); ++a)
    if (mask & (SlotMask{1} << a)) out.push_back(s.vertices[a]);
  return out;
}

}  // namespace

std::optional<std::size_t> Stratum::slot_of(int vertex) const {
  for (std::size_t a = 0; a < vertices.size(); ++a)
    if (vertices[a] == vertex) return a;
  return std::nullopt;
}

DualComplex DualComplex::from_facets(int ell, int d,
                                     const std::vector<std::vector<int>>& facets) {
  if (ell < 1) throw std::invalid_argument("ell must be at least 1");
  if (d < 0) throw std::invalid_argument("d must be nonnegative");
  std::set<std::vector<int>> subsets;
  for (const auto& facet : facets) {
    if (facet.empty()) throw std::invalid_argument("empty facet");
    if (facet.size() > static_cast<std::size_t>(d) + 1) {
      throw std::invalid_argument("facet exceeds d+1 vertices");
    }
    if (facet.size() > kMaxStratumSize) throw std::invalid_argument("facet too large");
    const std::vector<int> sorted = sorted_vertices(facet);
    for (int v : sorted)
      if (v < 1 || v > ell) {
        throw std::invalid_argument("vertex " + std::to_string(v) + " out of range 1.." +
                                    std::to_string(ell));
      }
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("facet repeats a vertex");
    }
    const SlotMask full = (SlotMask{1} << sorted.size()) - 1;
    for (SlotMask mask = 1; mask <= full; ++mask) {
      std::vector<int> sub;
      for (std::size_t a = 0; a < sorted.size(); ++a)
        if (mask & (SlotMask{1} << a)) sub.push_back(sorted[a]);
      subsets.insert(std::move(sub));
    }
  }

  std::vector<std::vector<int>> ordered(subsets.begin(), subsets.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::map<std::vector<int>, StratumId> by_set;
  std::vector<Stratum> strata;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const StratumId id{static_cast<std::uint32_t>(i)};
    by_set.emplace(ordered[i], id);
    strata.push_back({id, ordered[i], {}});
  }
  for (auto& s : strata) {
    const SlotMask full = s.full_mask();
    for (SlotMask mask = 1; mask < full; ++mask)
      s.faces.emplace(mask, by_set.at(vertices_of_mask(s, mask)));
  }
  return from_strata(ell, d, ComplexMode::simplicial, std::move(strata));
}

DualComplex DualComplex::from_strata(int ell, int d, ComplexMode mode,
                                     std::vector<Stratum> strata) {
  if (ell < 1) throw std::invalid_argument("ell must be at least 1");
  if (d < 0) throw std::invalid_argument("d must be nonnegative");
  DualComplex c;
  c.ell_ = ell;
  c.d_ = d;
  c.mode_ = mode;
  std::sort(strata.begin(), strata.end(),
            [](const Stratum& a, const Stratum& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < strata.size(); ++i) {
    const Stratum& s = strata[i];
    if (!c.index_.emplace(s.id, i).second) {
      throw std::invalid_argument("duplicate stratum id " + std::to_string(s.id.value));
    }
    if (s.vertices.empty()) throw std::invalid_argument(describe(s) + " has no vertices");
    if (s.vertices.size() > kMaxStratumSize) throw std::invalid_argument(describe(s) + " too large");
    for (int v : s.vertices)
      if (v < 1 || v > ell) {
        throw std::invalid_argument(describe(s) + ": vertex " + std::to_string(v) +
                                    " out of range");
      }
    const std::vector<int> sorted = sorted_vertices(s.vertices);
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument(describe(s) + " repeats a vertex");
    }
    for (const auto& [mask, face] : s.faces)
      if (mask == 0 || mask >= s.full_mask()) {
        throw std::invalid_argument(describe(s) + " has a face entry that is not a proper subset");
      }
  }
  c.strata_ = std::move(strata);
  return c;
}

const Stratum& DualComplex::stratum(StratumId id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) throw std::out_of_range("unknown stratum " + std::to_string(id.value));
  return strata_[it->second];
}

bool DualComplex::contains(StratumId id) const { return index_.contains(id); }

std::optional<StratumId> DualComplex::vertex_stratum(int vertex) const {
  for (const auto& s : strata_)
    if (s.size() == 1 && s.vertices.front() == vertex) return s.id;
  return std::nullopt;
}

std::optional<SlotMask> DualComplex::face_mask(StratumId face, StratumId ambient) const {
  for (const auto& [mask, id] : stratum(ambient).faces)
    if (id == face) return mask;
  return std::nullopt;
}

bool DualComplex::is_proper_face(StratumId face, StratumId ambient) const {
  return face_mask(face, ambient).has_value();
}

bool DualComplex::is_edge(int a, int b) const {
  for (const auto& s : strata_)
    if (s.size() == 2 && s.has_vertex(a) && s.has_vertex(b) && a != b) return true;
  return false;
}

bool DualComplex::is_connected() const {
  std::vector<int> parent(static_cast<std::size_t>(ell_) + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& s : strata_)
    for (std::size_t a = 1; a < s.vertices.size(); ++a)
      parent[find(s.vertices[a])] = find(s.vertices[0]);
  const int root = find(1);
  for (int v = 2; v <= ell_; ++v)
    if (find(v) != root) return false;
  return true;
}

std::vector<ComplexViolation> validate(const DualComplex& complex) {
  std::vector<ComplexViolation> out;
  auto report = [&](const Stratum* s, std::string rule, std::string message) {
    out.push_back({s ? std::optional<StratumId>(s->id) : std::nullopt, std::move(rule),
                   std::move(message)});
  };

  for (int v = 1; v <= complex.ell(); ++v) {
    std::size_t count = 0;
    for (const auto& s : complex.strata())
      if (s.size() == 1 && s.vertices.front() == v) ++count;
    if (count == 0) {
      report(nullptr, "vertex_missing", "vertex " + std::to_string(v) + " has no 0-stratum");
    } else if (count > 1) {
      report(nullptr, "vertex_duplicated",
             "vertex " + std::to_string(v) + " has " + std::to_string(count) + " 0-strata");
    }
  }

  std::map<std::vector<int>, StratumId> seen_sets;
  for (const auto& s : complex.strata()) {
    if (s.dimension() > static_cast<std::size_t>(complex.dim_bound())) {
      report(&s, "dimension_bound",
             describe(s) + " has dimension above d=" + std::to_string(complex.dim_bound()));
    }
    if (complex.mode() == ComplexMode::simplicial) {
      auto [it, fresh] = seen_sets.emplace(sorted_vertices(s.vertices), s.id);
      if (!fresh) {
        report(&s, "repeated_vertex_set",
               describe(s) + " repeats the vertex set of stratum " +
                   std::to_string(it->second.value) + " in simplicial mode");
      }
    }

    const SlotMask full = s.full_mask();
    for (SlotMask mask = 1; mask < full; ++mask) {
      const auto it = s.faces.find(mask);
      if (it == s.faces.end()) {
        report(&s, "face_map_incomplete",
               describe(s) + " has no face for subset " + vertex_list(vertices_of_mask(s, mask)));
        continue;
      }
      if (!complex.contains(it->second)) {
        report(&s, "face_unknown",
               describe(s) + " names unknown face stratum " + std::to_string(it->second.value));
        continue;
      }
      const Stratum& face = complex.stratum(it->second);
      if (sorted_vertices(face.vertices) != sorted_vertices(vertices_of_mask(s, mask))) {
        report(&s, "face_vertex_set",
               describe(s) + " maps a subset to " + describe(face) + " with another vertex set");
        continue;
      }
      // Face of a face must agree with the direct face.
      for (SlotMask sub = (mask - 1) & mask; sub != 0; sub = (sub - 1) & mask) {
        const auto direct = s.faces.find(sub);
        if (direct == s.faces.end()) continue;
        SlotMask in_face = 0;
        for (int v : vertices_of_mask(s, sub)) in_face |= SlotMask{1} << *face.slot_of(v);
        const auto nested = face.faces.find(in_face);
        if (nested == face.faces.end()) continue;
        if (nested->second != direct->second) {
          report(&s, "face_map_inconsistent",
                 describe(s) + ": face of face " + describe(face) + " disagrees with direct face");
        }
      }
    }
  }
  return out;
}

bool is_well_formed(const DualComplex& complex, const SimplexPoint& p) {
  if (!complex.contains(p.stratum)) return false;
  if (p.u.size() != complex.stratum(p.stratum).size()) return false;
  Rational sum = 0;
  for (const auto& x : p.u) {
    if (x < 0) return false;
    sum += x;
  }
  return sum == 1;
}

bool relint_membership(const SimplexPoint& p) {
  return std::all_of(p.u.begin(), p.u.end(), [](const Rational& x) { return x > 0; });
}

SimplexPoint face_restriction(const DualComplex& complex, const SimplexPoint& p,
                              StratumId target) {
  const Stratum& ambient = complex.stratum(p.stratum);
  if (p.u.size() != ambient.size()) throw std::invalid_argument("point has wrong length");
  if (target == p.stratum) return p;
  const auto mask = complex.face_mask(target, p.stratum);
  if (!mask) throw std::invalid_argument("target is not a face of the point's stratum");
  for (std::size_t a = 0; a < ambient.size(); ++a)
    if (!(*mask & (SlotMask{1} << a)) && p.u[a] != 0) {
      throw std::invalid_argument("point has nonzero weight on vertex " +
                                  std::to_string(ambient.vertices[a]) + " outside the face");
    }
  const Stratum& face = complex.stratum(target);
  SimplexPoint out{target, RatVector(face.size())};
  for (std::size_t b = 0; b < face.size(); ++b) out.u[b] = p.u[*ambient.slot_of(face.vertices[b])];
  return out;
}

SimplexPoint carrier(const DualComplex& complex, const SimplexPoint& p) {
  const Stratum& s = complex.stratum(p.stratum);
  SlotMask support = 0;
  for (std::size_t a = 0; a < p.u.size(); ++a)
    if (p.u[a] != 0) support |= SlotMask{1} << a;
  if (support == s.full_mask()) return p;
  const auto it = s.faces.find(support);
  if (it == s.faces.end()) throw std::invalid_argument("face map has no entry for the support");
  return face_restriction(complex, p, it->second);
}

}  // namespace skeltrop

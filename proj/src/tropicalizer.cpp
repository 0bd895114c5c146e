#include "skeltrop/tropicalizer.hpp"

#include "skeltrop/polyhedron.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace skeltrop {

PiecewiseAffineMap::PiecewiseAffineMap(std::shared_ptr<const DualComplex> complex,
                                       std::vector<IntMatrix> pieces)
    : complex_(std::move(complex)), pieces_(std::move(pieces)) {
  if (!complex_) throw std::invalid_argument("null complex");
  if (pieces_.size() != complex_->strata().size()) {
    throw std::invalid_argument("need one piece per stratum");
  }
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    if (pieces_[k].rows() != target_dim() || pieces_[k].cols() != complex_->strata()[k].size()) {
      throw std::invalid_argument("piece has wrong shape");
    }
  }
}

const IntMatrix& PiecewiseAffineMap::piece(StratumId stratum) const {
  const auto& strata = complex_->strata();
  const auto it = std::lower_bound(strata.begin(), strata.end(), stratum,
                                   [](const Stratum& s, StratumId id) { return s.id < id; });
  if (it == strata.end() || it->id != stratum) throw std::out_of_range("unknown stratum");
  return pieces_[static_cast<std::size_t>(it - strata.begin())];
}

RatVector PiecewiseAffineMap::image(const SimplexPoint& p) const {
  const IntMatrix& a = piece(p.stratum);
  if (p.u.size() != a.cols()) throw std::invalid_argument("point has wrong length");
  RatVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t b = 0; b < a.cols(); ++b) out[i] += a(i, b) * p.u[b];
  return out;
}

RatVector PiecewiseAffineMap::vertex_image(StratumId stratum, std::size_t slot) const {
  const IntMatrix& a = piece(stratum);
  RatVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = a(i, slot);
  return out;
}

TropicalProjectivePoint PiecewiseAffineMap::projective_image(const SimplexPoint& p) const {
  std::vector<TropCoord> raw;
  raw.emplace_back(Rational(0));
  for (auto& x : image(p)) raw.emplace_back(std::move(x));
  return trop_normalize(raw);
}

PiecewiseAffineMap build_map(std::shared_ptr<const DualComplex> complex, const OrderMatrix& m) {
  if (!complex) throw std::invalid_argument("null complex");
  std::ostringstream problems;
  for (const auto& v : validate(*complex)) problems << "\n  " << v.rule << ": " << v.message;
  if (m.ell() != complex->ell()) {
    problems << "\n  order matrix has ell=" << m.ell() << ", complex has ell=" << complex->ell();
  } else {
    for (const auto& v : validate_orders(m, *complex)) problems << "\n  " << v.rule << ": " << v.message;
  }
  if (!problems.str().empty()) throw std::invalid_argument("invalid input:" + problems.str());

  const auto ell = static_cast<std::size_t>(complex->ell());
  std::vector<IntMatrix> pieces;
  for (const auto& s : complex->strata()) {
    IntMatrix a(ell, s.size());
    for (int i = 1; i <= complex->ell(); ++i) {
      const AffineFunctional g = restrict_affine(m, i, s);
      for (std::size_t b = 0; b < s.size(); ++b)
        a(static_cast<std::size_t>(i - 1), b) = g.coefficients[b].get_num();
    }
    pieces.push_back(std::move(a));
  }
  return PiecewiseAffineMap(std::move(complex), std::move(pieces));
}

namespace {

std::vector<IntVector> edge_vectors(const IntMatrix& a) {
  std::vector<IntVector> rows;
  for (std::size_t b = 1; b < a.cols(); ++b) {
    IntVector v(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) v[i] = a(i, b) - a(i, 0);
    rows.push_back(std::move(v));
  }
  return rows;
}

bool affinely_injective(const IntMatrix& a) {
  std::vector<RatVector> rows;
  for (const auto& v : edge_vectors(a)) rows.emplace_back(v.begin(), v.end());
  return rational_rank(std::move(rows)) + 1 == a.cols();
}

std::vector<RatVector> vertex_images(const IntMatrix& a) {
  std::vector<RatVector> out;
  for (std::size_t b = 0; b < a.cols(); ++b) {
    RatVector v(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) v[i] = a(i, b);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

UnimodularityCertificate check_unimodular(const PiecewiseAffineMap& f, StratumId stratum) {
  const IntMatrix& a = f.piece(stratum);
  UnimodularityCertificate cert;
  cert.stratum = stratum;
  cert.edge_matrix = IntMatrix::from_rows(edge_vectors(a), a.rows());
  if (cert.edge_matrix.rows() == 0) {
    cert.verdict = true;
    return cert;
  }
  cert.elementary_divisors = smith_normal_form(cert.edge_matrix).elementary_divisors();
  cert.rank = cert.elementary_divisors.size();
  cert.verdict = cert.rank == cert.edge_matrix.rows() &&
                 std::all_of(cert.elementary_divisors.begin(), cert.elementary_divisors.end(),
                             [](const Integer& x) { return x == 1; });
  return cert;
}

bool ValueInterval::contains(const Rational& x) const {
  const bool above = low_open ? x > low : x >= low;
  const bool below = high_open ? x < high : x <= high;
  return above && below;
}

ValueInterval relint_value_range(const OrderMatrix& m, int section, const Stratum& stratum) {
  ValueInterval out;
  for (std::size_t b = 0; b < stratum.size(); ++b) {
    const Rational v(m.order(section, stratum.vertices[b]));
    if (b == 0 || v < out.low) out.low = v;
    if (b == 0 || v > out.high) out.high = v;
  }
  // An affine function maps the open simplex onto the open value range
  // unless it is constant there.
  out.low_open = out.high_open = out.low < out.high;
  return out;
}

Rational simplex_lower_bound(const OrderMatrix& m, int section, const Stratum& stratum) {
  Rational low;
  for (std::size_t b = 0; b < stratum.size(); ++b) {
    const Rational v(m.order(section, stratum.vertices[b]));
    if (b == 0 || v < low) low = v;
  }
  return low;
}

std::optional<int> separation_certificate(const PiecewiseAffineMap& f, const OrderMatrix& m,
                                          StratumId s, StratumId t) {
  const DualComplex& c = f.complex();
  if (s == t) throw std::invalid_argument("separation needs two distinct strata");
  if (c.is_proper_face(s, t) || c.is_proper_face(t, s)) {
    throw std::invalid_argument("separation is not defined for a face pair");
  }
  const Stratum& ss = c.stratum(s);
  const Stratum& ts = c.stratum(t);
  for (int a : ss.vertices) {
    if (ts.has_vertex(a) || !m.horizontal_effective(a)) continue;
    bool ok = m.order(a, a) == 0;
    for (int w : ss.vertices)
      if (ok && w != a && m.order(a, w) != 1) ok = false;
    for (int w : ts.vertices)
      if (ok && m.order(a, w) < 1) ok = false;
    if (ok) return a;
  }
  return std::nullopt;
}

ExactPairVerdict images_relint_disjoint_exact(const PiecewiseAffineMap& f, StratumId s,
                                              StratumId t) {
  if (s == t) throw std::invalid_argument("disjointness needs two distinct strata");
  const DualComplex& c = f.complex();
  std::optional<StratumId> ambient;
  if (c.is_proper_face(s, t)) ambient = t;
  if (c.is_proper_face(t, s)) ambient = s;
  if (ambient && affinely_injective(f.piece(*ambient))) {
    return {true, true, std::nullopt};
  }
  const RationalPolyhedron p = simplex_image_polyhedron(vertex_images(f.piece(s)), true);
  const RationalPolyhedron q = simplex_image_polyhedron(vertex_images(f.piece(t)), true);
  IntersectionResult hit = relint_intersection_nonempty(p, q);
  ExactPairVerdict out;
  out.disjoint = !hit.nonempty;
  out.witness = std::move(hit.witness);
  return out;
}

std::string to_string(CheckMode mode) {
  switch (mode) {
    case CheckMode::certificate: return "certificate";
    case CheckMode::exact: return "exact";
    case CheckMode::both: return "both";
  }
  return "?";
}

std::string to_string(Overall overall) {
  switch (overall) {
    case Overall::faithful: return "faithful";
    case Overall::not_faithful: return "not_faithful";
    case Overall::certificate_incomplete: return "certificate_incomplete";
  }
  return "?";
}

CheckMode parse_check_mode(const std::string& text) {
  if (text == "certificate") return CheckMode::certificate;
  if (text == "exact") return CheckMode::exact;
  if (text == "both") return CheckMode::both;
  throw std::invalid_argument("unknown check mode '" + text + "'");
}

namespace {

std::string point_string(const RatVector& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) out += (i ? ", " : "") + x[i].get_str();
  return out + ")";
}

struct PairContext {
  const PiecewiseAffineMap& map;
  const OrderMatrix& orders;
  const std::vector<UnimodularityCertificate>& certs;
  CheckMode mode;
};

const UnimodularityCertificate& cert_of(const PairContext& ctx, StratumId id) {
  const auto it = std::lower_bound(ctx.certs.begin(), ctx.certs.end(), id,
                                   [](const auto& c, StratumId x) { return c.stratum < x; });
  return *it;
}

PairEvidence examine_pair(const PairContext& ctx, StratumId a, StratumId b) {
  const DualComplex& c = ctx.map.complex();
  PairEvidence ev;
  ev.first = std::min(a, b);
  ev.second = std::max(a, b);
  std::optional<StratumId> ambient;
  if (c.is_proper_face(ev.first, ev.second)) ambient = ev.second;
  if (c.is_proper_face(ev.second, ev.first)) ambient = ev.first;
  ev.face_pair = ambient.has_value();

  if (ctx.mode != CheckMode::exact) {
    if (ambient) {
      if (cert_of(ctx, *ambient).verdict) {
        ev.certified = true;
        ev.injective_ambient = ambient;
      } else {
        ev.certificate_note = "ambient piece of stratum " + std::to_string(ambient->value) +
                              " is not unimodular";
      }
    } else {
      // Prefer separating the larger stratum: its relative interior then maps
      // into the open interval (0,1).
      StratumId s = ev.first, t = ev.second;
      if (c.stratum(t).size() > c.stratum(s).size()) std::swap(s, t);
      for (int attempt = 0; attempt < 2 && !ev.certified; ++attempt, std::swap(s, t)) {
        if (auto coord = separation_certificate(ctx.map, ctx.orders, s, t)) {
          ev.separation = SeparationCertificate{
              s, t, *coord, relint_value_range(ctx.orders, *coord, c.stratum(s)),
              simplex_lower_bound(ctx.orders, *coord, c.stratum(t))};
          ev.certified = true;
        }
      }
      if (!ev.certified) {
        const auto& sv = c.stratum(ev.first).vertices;
        const auto& tv = c.stratum(ev.second).vertices;
        const bool same_set = std::is_permutation(sv.begin(), sv.end(), tv.begin(), tv.end());
        ev.certificate_note = same_set ? "strata share a vertex set; no vertex of one lies "
                                         "outside the other"
                                       : "no coordinate satisfies the separation conditions";
      }
    }
  }
  if (ctx.mode != CheckMode::certificate) {
    ev.exact = images_relint_disjoint_exact(ctx.map, ev.first, ev.second);
  }
  if (ctx.mode == CheckMode::both) ev.agreement = ev.certified == ev.exact->disjoint;
  return ev;
}

}  // namespace

FaithfulnessReport check_faithful(std::shared_ptr<const DualComplex> complex,
                                  const OrderMatrix& m, const CheckOptions& options) {
  const PiecewiseAffineMap map = build_map(complex, m);
  const auto& strata = map.complex().strata();

  FaithfulnessReport report;
  report.mode = options.mode;
  for (const auto& s : strata) report.strata.push_back(check_unimodular(map, s.id));

  std::vector<std::pair<StratumId, StratumId>> todo;
  if (options.pair_filter.empty()) {
    for (std::size_t i = 0; i < strata.size(); ++i)
      for (std::size_t j = i + 1; j < strata.size(); ++j) todo.emplace_back(strata[i].id, strata[j].id);
  } else {
    report.pair_filter_applied = true;
    for (auto [a, b] : options.pair_filter) {
      if (a == b) throw std::invalid_argument("pair filter names a stratum twice");
      map.complex().stratum(a);
      map.complex().stratum(b);
      todo.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(todo.begin(), todo.end());
    todo.erase(std::unique(todo.begin(), todo.end()), todo.end());
  }

  const PairContext ctx{map, m, report.strata, options.mode};
  report.pairs.resize(todo.size());
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(todo.size())));
  if (jobs <= 1) {
    for (std::size_t k = 0; k < todo.size(); ++k)
      report.pairs[k] = examine_pair(ctx, todo[k].first, todo[k].second);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t k; (k = next.fetch_add(1)) < todo.size();)
            report.pairs[k] = examine_pair(ctx, todo[k].first, todo[k].second);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : workers) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  const bool all_unimodular = std::all_of(report.strata.begin(), report.strata.end(),
                                          [](const auto& c) { return c.verdict; });
  bool all_certified = true, all_disjoint = true;
  for (const auto& ev : report.pairs) {
    const std::string label =
        "pair (" + std::to_string(ev.first.value) + ", " + std::to_string(ev.second.value) + ")";
    if (options.mode != CheckMode::exact && !ev.certified) {
      all_certified = false;
      std::string note = label + ": no certificate (" + ev.certificate_note + ")";
      if (ev.exact) {
        note += ev.exact->disjoint ? "; exact oracle: disjoint"
                                   : "; exact oracle: images collide at " +
                                         point_string(*ev.exact->witness);
      }
      report.discrepancies.push_back(std::move(note));
    }
    if (ev.exact && !ev.exact->disjoint) {
      all_disjoint = false;
      if (ev.certified) {
        report.defects.push_back(label + ": certificate claims disjoint images but they meet at " +
                                 point_string(*ev.exact->witness));
      }
    }
  }

  if (!all_unimodular || !all_disjoint) {
    report.overall = Overall::not_faithful;
  } else if (report.pair_filter_applied ||
             (options.mode == CheckMode::certificate && !all_certified)) {
    report.overall = Overall::certificate_incomplete;
  } else {
    report.overall = Overall::faithful;
  }
  return report;
}

}  // namespace skeltrop

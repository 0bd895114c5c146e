#include "skeltrop/polyhedron.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace skeltrop {

bool LinearConstraint::satisfied_by(std::span<const Rational> point) const {
  Rational lhs = 0;
  for (std::size_t i = 0; i < normal.size(); ++i) lhs += normal[i] * point[i];
  return strictness == Strictness::strict ? lhs < bound : lhs <= bound;
}

void RationalPolyhedron::check() const {
  for (const auto& c : constraints) {
    if (c.normal.size() != ambient_dim) {
      throw std::invalid_argument("constraint normal has wrong dimension");
    }
    if (std::all_of(c.normal.begin(), c.normal.end(),
                    [](const Integer& v) { return v == 0; })) {
      throw std::invalid_argument("constraint normal is zero");
    }
  }
}

bool RationalPolyhedron::contains(std::span<const Rational> point) const {
  if (point.size() != ambient_dim) return false;
  return std::all_of(constraints.begin(), constraints.end(),
                     [&](const LinearConstraint& c) { return c.satisfied_by(point); });
}

namespace {

enum class Relation { eq, le, lt };

struct Row {
  RatVector coef;
  Rational rhs;
  Relation rel;
};

bool is_zero(const RatVector& v, std::size_t from, std::size_t to) {
  for (std::size_t i = from; i < to; ++i)
    if (v[i] != 0) return false;
  return true;
}

// Drops rows whose coefficients vanish, throwing if one is violated.
void drop_trivial(std::vector<Row>& rows) {
  std::erase_if(rows, [](const Row& row) {
    if (!is_zero(row.coef, 0, row.coef.size())) return false;
    const bool ok = row.rel == Relation::eq   ? row.rhs == 0
                    : row.rel == Relation::le ? row.rhs >= 0
                                              : row.rhs > 0;
    if (!ok) throw std::invalid_argument("projected system is empty");
    return true;
  });
}

void eliminate(std::vector<Row>& rows, std::size_t col) {
  auto eq = std::find_if(rows.begin(), rows.end(), [&](const Row& r) {
    return r.rel == Relation::eq && r.coef[col] != 0;
  });
  if (eq != rows.end()) {
    Row pivot = std::move(*eq);
    rows.erase(eq);
    for (auto& row : rows) {
      if (row.coef[col] == 0) continue;
      const Rational f = row.coef[col] / pivot.coef[col];
      for (std::size_t k = 0; k < row.coef.size(); ++k) row.coef[k] -= f * pivot.coef[k];
      row.rhs -= f * pivot.rhs;
    }
    drop_trivial(rows);
    return;
  }

  std::vector<Row> keep, pos, neg;
  for (auto& row : rows) {
    if (row.coef[col] > 0) pos.push_back(std::move(row));
    else if (row.coef[col] < 0) neg.push_back(std::move(row));
    else keep.push_back(std::move(row));
  }
  for (const auto& p : pos)
    for (const auto& q : neg) {
      const Rational lp = -q.coef[col];
      const Rational lq = p.coef[col];
      Row combined{RatVector(p.coef.size()), lp * p.rhs + lq * q.rhs,
                   (p.rel == Relation::lt || q.rel == Relation::lt) ? Relation::lt
                                                                    : Relation::le};
      for (std::size_t k = 0; k < p.coef.size(); ++k)
        combined.coef[k] = lp * p.coef[k] + lq * q.coef[k];
      combined.coef[col] = 0;
      keep.push_back(std::move(combined));
    }
  rows = std::move(keep);
  drop_trivial(rows);
}

// Scales a rational row to a primitive integer normal.
std::pair<IntVector, Rational> integral_normal(const RatVector& coef, const Rational& rhs) {
  Integer lcm = 1;
  for (const auto& c : coef) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  IntVector normal(coef.size());
  Integer g = 0;
  for (std::size_t i = 0; i < coef.size(); ++i) {
    Rational scaled = coef[i] * lcm;
    normal[i] = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), normal[i].get_mpz_t());
  }
  for (auto& v : normal) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  Rational bound = rhs * lcm / g;
  return {std::move(normal), std::move(bound)};
}

}  // namespace

RationalPolyhedron simplex_image_polyhedron(const std::vector<RatVector>& points,
                                            bool relative_interior) {
  if (points.empty()) throw std::invalid_argument("simplex needs at least one vertex");
  const std::size_t n = points.front().size();
  const std::size_t r = points.size();
  for (const auto& p : points)
    if (p.size() != n) throw std::invalid_argument("vertices have mismatched dimensions");

  // Variables: x_0..x_{n-1}, then barycentric weights u_0..u_{r-1}.
  std::vector<Row> rows;
  for (std::size_t i = 0; i < n; ++i) {
    Row row{RatVector(n + r), 0, Relation::eq};
    row.coef[i] = 1;
    for (std::size_t a = 0; a < r; ++a) row.coef[n + a] = -points[a][i];
    rows.push_back(std::move(row));
  }
  {
    Row sum{RatVector(n + r), 1, Relation::eq};
    for (std::size_t a = 0; a < r; ++a) sum.coef[n + a] = 1;
    rows.push_back(std::move(sum));
  }
  for (std::size_t a = 0; a < r; ++a) {
    Row nonneg{RatVector(n + r), 0, relative_interior ? Relation::lt : Relation::le};
    nonneg.coef[n + a] = -1;
    rows.push_back(std::move(nonneg));
  }
  for (std::size_t a = 0; a < r; ++a) eliminate(rows, n + a);

  // Keep the tightest bound per (normal, strictness class).
  std::map<IntVector, std::pair<Rational, Strictness>> tightest;
  auto add = [&](IntVector normal, Rational bound, Strictness s) {
    auto it = tightest.find(normal);
    if (it == tightest.end()) {
      tightest.emplace(std::move(normal), std::make_pair(std::move(bound), s));
      return;
    }
    auto& [best, best_s] = it->second;
    if (bound < best || (bound == best && s == Strictness::strict)) {
      best = std::move(bound);
      best_s = s;
    }
  };
  for (const auto& row : rows) {
    RatVector coef(row.coef.begin(), row.coef.begin() + static_cast<std::ptrdiff_t>(n));
    auto [normal, bound] = integral_normal(coef, row.rhs);
    if (row.rel == Relation::eq) {
      IntVector negated = normal;
      for (auto& v : negated) v = -v;
      add(std::move(normal), bound, Strictness::closed);
      add(std::move(negated), -bound, Strictness::closed);
    } else {
      add(std::move(normal), std::move(bound),
          row.rel == Relation::lt ? Strictness::strict : Strictness::closed);
    }
  }

  RationalPolyhedron out;
  out.ambient_dim = n;
  for (auto& [normal, entry] : tightest)
    out.constraints.push_back({normal, entry.first, entry.second});
  return out;
}

namespace {

class Tableau {
 public:
  explicit Tableau(const LinearProgram& lp)
      : m_(lp.b.size()), n_(lp.c.size()), d_(m_ + 2, RatVector(n_ + 2)),
        basis_(m_), nonbasis_(n_ + 1) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) d_[i][j] = lp.a[i][j];
      d_[i][n_] = -1;
      d_[i][n_ + 1] = lp.b[i];
      basis_[i] = static_cast<long>(n_ + i);
    }
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasis_[j] = static_cast<long>(j);
      d_[m_][j] = -lp.c[j];
    }
    nonbasis_[n_] = -1;
    d_[m_ + 1][n_] = 1;
  }

  LpSolution solve() {
    LpSolution out;
    std::size_t r = 0;
    for (std::size_t i = 1; i < m_; ++i)
      if (d_[i][n_ + 1] < d_[r][n_ + 1]) r = i;
    if (m_ > 0 && d_[r][n_ + 1] < 0) {
      pivot(r, n_);
      if (!run(true) || d_[m_ + 1][n_ + 1] < 0) {
        out.status = LpStatus::infeasible;
        return out;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] != -1) continue;
        std::size_t s = n_ + 1;
        for (std::size_t j = 0; j <= n_; ++j) {
          if (d_[i][j] == 0) continue;
          if (s == n_ + 1 || nonbasis_[j] < nonbasis_[s]) s = j;
        }
        if (s != n_ + 1) pivot(i, s);
      }
    }
    if (!run(false)) {
      out.status = LpStatus::unbounded;
      return out;
    }
    out.status = LpStatus::optimal;
    out.x.assign(n_, 0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= 0 && static_cast<std::size_t>(basis_[i]) < n_)
        out.x[static_cast<std::size_t>(basis_[i])] = d_[i][n_ + 1];
    out.value = d_[m_][n_ + 1];
    return out;
  }

 private:
  void pivot(std::size_t r, std::size_t s) {
    const Rational inv = 1 / d_[r][s];
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i == r || d_[i][s] == 0) continue;
      const Rational f = d_[i][s] * inv;
      for (std::size_t j = 0; j < n_ + 2; ++j)
        if (j != s && d_[r][j] != 0) d_[i][j] -= d_[r][j] * f;
    }
    for (std::size_t j = 0; j < n_ + 2; ++j)
      if (j != s) d_[r][j] *= inv;
    for (std::size_t i = 0; i < m_ + 2; ++i)
      if (i != r) d_[i][s] *= -inv;
    d_[r][s] = inv;
    std::swap(basis_[r], nonbasis_[s]);
  }

  // Bland's rule: smallest-index entering and leaving variables.
  bool run(bool phase_one) {
    const std::size_t obj = phase_one ? m_ + 1 : m_;
    for (;;) {
      std::size_t s = n_ + 1;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (!phase_one && nonbasis_[j] == -1) continue;
        if (d_[obj][j] >= 0) continue;
        if (s == n_ + 1 || nonbasis_[j] < nonbasis_[s]) s = j;
      }
      if (s == n_ + 1) return true;
      std::size_t r = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (d_[i][s] <= 0) continue;
        Rational ratio = d_[i][n_ + 1] / d_[i][s];
        if (r == m_ || ratio < best || (ratio == best && basis_[i] < basis_[r])) {
          r = i;
          best = std::move(ratio);
        }
      }
      if (r == m_) return false;
      pivot(r, s);
    }
  }

  std::size_t m_, n_;
  std::vector<RatVector> d_;
  std::vector<long> basis_, nonbasis_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  if (lp.a.size() != lp.b.size()) throw std::invalid_argument("LP row count mismatch");
  for (const auto& row : lp.a)
    if (row.size() != lp.c.size()) throw std::invalid_argument("LP column count mismatch");
  return Tableau(lp).solve();
}

IntersectionResult find_point(const RationalPolyhedron& p) {
  p.check();
  const std::size_t n = p.ambient_dim;
  // Variables: x+ (n), x- (n), w >= 0 where the common strict slack is 1 - w.
  LinearProgram lp;
  lp.c.assign(2 * n + 1, 0);
  lp.c[2 * n] = -1;
  bool any_strict = false;
  for (const auto& c : p.constraints) {
    RatVector row(2 * n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      row[i] = c.normal[i];
      row[n + i] = -c.normal[i];
    }
    Rational rhs = c.bound;
    if (c.strictness == Strictness::strict) {
      any_strict = true;
      row[2 * n] = -1;
      rhs -= 1;
    }
    lp.a.push_back(std::move(row));
    lp.b.push_back(std::move(rhs));
  }

  const LpSolution sol = solve_lp(lp);
  IntersectionResult out;
  if (sol.status != LpStatus::optimal) return out;
  const Rational slack = 1 - sol.x[2 * n];
  if (any_strict && slack <= 0) return out;
  RatVector witness(n);
  for (std::size_t i = 0; i < n; ++i) witness[i] = sol.x[i] - sol.x[n + i];
  out.nonempty = true;
  out.witness = std::move(witness);
  return out;
}

IntersectionResult relint_intersection_nonempty(const RationalPolyhedron& p,
                                                const RationalPolyhedron& q) {
  if (p.ambient_dim != q.ambient_dim) {
    throw std::invalid_argument("polyhedra live in different ambient dimensions");
  }
  RationalPolyhedron both = p;
  both.constraints.insert(both.constraints.end(), q.constraints.begin(), q.constraints.end());
  return find_point(both);
}

}  // namespace skeltrop

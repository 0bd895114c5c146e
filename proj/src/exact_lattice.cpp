#include "skeltrop/exact_lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace skeltrop {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long v : row) entries_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows,
                               std::size_t cols) {
  const std::size_t n = rows.empty() ? cols : rows.front().size();
  IntMatrix m(rows.size(), n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != n) {
      throw std::invalid_argument("vectors have mismatched dimensions");
    }
    for (std::size_t c = 0; c < n; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(entries_.begin() + r * cols_,
                   entries_.begin() + (r + 1) * cols_);
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src,
                                 const Integer& factor) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src,
                                 const Integer& factor) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r != c && (*this)(r, c) != 0) return false;
  return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c);
    os << ']';
  }
  os << ']';
  return os.str();
}

IntVector SmithDecomposition::elementary_divisors() const {
  IntVector out;
  const std::size_t n = std::min(diagonal.rows(), diagonal.cols());
  for (std::size_t i = 0; i < n && diagonal(i, i) != 0; ++i) out.push_back(diagonal(i, i));
  return out;
}

namespace {

// Locates the nonzero entry of smallest magnitude in the trailing block.
bool find_pivot(const IntMatrix& d, std::size_t t, std::size_t& pr, std::size_t& pc) {
  bool found = false;
  Integer best;
  for (std::size_t r = t; r < d.rows(); ++r)
    for (std::size_t c = t; c < d.cols(); ++c) {
      if (d(r, c) == 0) continue;
      Integer mag = abs(d(r, c));
      if (!found || mag < best) {
        found = true;
        best = std::move(mag);
        pr = r;
        pc = c;
      }
    }
  return found;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  IntMatrix d = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  const std::size_t steps = std::min(m.rows(), m.cols());

  for (std::size_t t = 0; t < steps; ++t) {
    std::size_t pr = 0, pc = 0;
    if (!find_pivot(d, t, pr, pc)) break;
    for (;;) {
      d.swap_rows(t, pr);
      u.swap_rows(t, pr);
      d.swap_cols(t, pc);
      v.swap_cols(t, pc);

      bool cleared = true;
      for (std::size_t r = t + 1; r < d.rows(); ++r) {
        if (d(r, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), d(r, t).get_mpz_t(), d(t, t).get_mpz_t());
        q = -q;
        d.add_row_multiple(r, t, q);
        u.add_row_multiple(r, t, q);
        if (d(r, t) != 0) cleared = false;
      }
      for (std::size_t c = t + 1; c < d.cols(); ++c) {
        if (d(t, c) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), d(t, c).get_mpz_t(), d(t, t).get_mpz_t());
        q = -q;
        d.add_col_multiple(c, t, q);
        v.add_col_multiple(c, t, q);
        if (d(t, c) != 0) cleared = false;
      }

      if (cleared) {
        // Enforce d_t | every entry of the trailing block by folding an
        // offending row into row t and reducing again.
        bool divisible = true;
        for (std::size_t r = t + 1; r < d.rows() && divisible; ++r)
          for (std::size_t c = t + 1; c < d.cols(); ++c) {
            if (!mpz_divisible_p(d(r, c).get_mpz_t(), d(t, t).get_mpz_t())) {
              d.add_row_multiple(t, r, 1);
              u.add_row_multiple(t, r, 1);
              divisible = false;
              break;
            }
          }
        if (divisible) break;
      }
      find_pivot(d, t, pr, pc);
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  return {std::move(u), std::move(d), std::move(v)};
}

bool extends_to_basis(const IntMatrix& vectors) {
  if (vectors.rows() > vectors.cols()) {
    throw std::invalid_argument("more vectors than the ambient dimension");
  }
  if (vectors.rows() == 0) return true;
  const IntVector divisors = smith_normal_form(vectors).elementary_divisors();
  if (divisors.size() != vectors.rows()) return false;
  return std::all_of(divisors.begin(), divisors.end(),
                     [](const Integer& x) { return x == 1; });
}

bool extends_to_basis(const std::vector<IntVector>& vectors) {
  return extends_to_basis(IntMatrix::from_rows(vectors));
}

IntMatrix complete_to_basis(const IntMatrix& vectors) {
  if (!extends_to_basis(vectors)) {
    throw std::invalid_argument("vectors do not extend to a lattice basis");
  }
  const std::size_t k = vectors.rows();
  const std::size_t n = vectors.cols();
  if (k == 0) return IntMatrix::identity(n);
  const SmithDecomposition snf = smith_normal_form(vectors);
  const IntMatrix u_inv = unimodular_inverse(snf.left);
  IntMatrix block = IntMatrix::identity(n);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) block(r, c) = u_inv(r, c);
  return block * unimodular_inverse(snf.right);
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      a.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<RatVector> aug(n, RatVector(2 * n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug[r][c] = m(r, c);
    aug[r][n + r] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && aug[piv][col] == 0) ++piv;
    if (piv == n) throw std::invalid_argument("matrix is singular");
    std::swap(aug[col], aug[piv]);
    const Rational inv = 1 / aug[col][col];
    for (auto& x : aug[col]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || aug[r][col] == 0) continue;
      const Rational f = aug[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) aug[r][c] -= f * aug[col][c];
    }
  }
  IntMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const Rational& x = aug[r][n + c];
      if (x.get_den() != 1) throw std::invalid_argument("matrix is not unimodular");
      out(r, c) = x.get_num();
    }
  return out;
}

std::size_t rational_rank(std::vector<RatVector> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace skeltrop

#include "skeltrop/section_model.hpp"

#include <stdexcept>

namespace skeltrop {

OrderMatrix::OrderMatrix(IntMatrix orders, std::vector<bool> horizontal_effective)
    : orders_(std::move(orders)), horizontal_(std::move(horizontal_effective)) {
  if (orders_.cols() < 1 || orders_.rows() != orders_.cols() + 1) {
    throw std::invalid_argument("order matrix must be (ell+1) x ell");
  }
  if (horizontal_.size() != orders_.rows()) {
    throw std::invalid_argument("need one horizontal_effective flag per section");
  }
  for (std::size_t r = 0; r < orders_.rows(); ++r)
    for (std::size_t c = 0; c < orders_.cols(); ++c)
      if (orders_(r, c) < 0) throw std::invalid_argument("orders must be nonnegative");
}

const Integer& OrderMatrix::order(int section, int component) const {
  if (section < 0 || section > ell() || component < 1 || component > ell()) {
    throw std::out_of_range("order index out of range");
  }
  return orders_(static_cast<std::size_t>(section), static_cast<std::size_t>(component - 1));
}

bool OrderMatrix::horizontal_effective(int section) const {
  if (section < 0 || section > ell()) throw std::out_of_range("section index out of range");
  return horizontal_[static_cast<std::size_t>(section)];
}

OrderMatrix canonical_order_matrix(const DualComplex& complex) {
  const auto ell = static_cast<std::size_t>(complex.ell());
  IntMatrix orders(ell + 1, ell);
  for (std::size_t i = 1; i <= ell; ++i)
    for (std::size_t c = 0; c < ell; ++c) orders(i, c) = (c + 1 == i) ? 0 : 1;
  return OrderMatrix(std::move(orders), std::vector<bool>(ell + 1, true));
}

std::vector<OrderViolation> validate_orders(const OrderMatrix& m, const DualComplex& complex) {
  if (m.ell() != complex.ell()) {
    throw std::invalid_argument("order matrix has ell=" + std::to_string(m.ell()) +
                                " but the complex has ell=" + std::to_string(complex.ell()));
  }
  std::vector<OrderViolation> out;
  const int ell = m.ell();
  auto cell = [](int i, int j) {
    return "ord(s_" + std::to_string(i) + ", X_" + std::to_string(j) + ")";
  };
  for (int j = 1; j <= ell; ++j)
    if (m.order(0, j) != 0) {
      out.push_back({0, j, "base_section_vanishes",
                     cell(0, j) + " must be 0: the base section vanishes on no stratum"});
    }
  for (int i = 1; i <= ell; ++i)
    for (int j = 1; j <= ell; ++j) {
      const Integer& v = m.order(i, j);
      if (i == j) {
        if (v != 0) out.push_back({i, j, "diagonal_nonzero", cell(i, j) + " must be 0"});
      } else if (complex.is_edge(i, j)) {
        if (v != 1) {
          out.push_back({i, j, "adjacent_order_not_one",
                         cell(i, j) + " must be 1 since {" + std::to_string(i) + "," +
                             std::to_string(j) + "} spans an edge, got " + v.get_str()});
        }
      } else if (v < 1) {
        out.push_back({i, j, "zero_extension",
                       cell(i, j) + " must be at least 1 (s_" + std::to_string(i) +
                           " vanishes on X_" + std::to_string(j) + ")"});
      }
    }
  return out;
}

Rational AffineFunctional::evaluate(std::span<const Rational> u) const {
  if (u.size() != coefficients.size()) throw std::invalid_argument("point has wrong length");
  Rational value = constant;
  for (std::size_t a = 0; a < u.size(); ++a) value += coefficients[a] * u[a];
  return value;
}

AffineFunctional restrict_affine(const OrderMatrix& m, int section, const Stratum& stratum) {
  if (section < 1 || section > m.ell()) throw std::out_of_range("section index out of range");
  AffineFunctional g{stratum.id, RatVector(stratum.size()), 0};
  for (std::size_t b = 0; b < stratum.size(); ++b)
    g.coefficients[b] = m.order(section, stratum.vertices[b]);
  return g;
}

Rational concavity_lower_bound(const OrderMatrix& m, int section, const Stratum& stratum,
                               std::span<const Rational> u) {
  if (section < 1 || section > m.ell()) throw std::out_of_range("section index out of range");
  if (!m.horizontal_effective(section)) {
    throw std::domain_error("horizontal part of s_" + std::to_string(section) +
                            " is not effective; no lower bound");
  }
  if (u.size() != stratum.size()) throw std::invalid_argument("point has wrong length");
  Rational sum = 0, bound = 0;
  for (std::size_t a = 0; a < u.size(); ++a) {
    if (u[a] < 0) throw std::invalid_argument("negative barycentric weight");
    sum += u[a];
    bound += u[a] * m.order(section, stratum.vertices[a]);
  }
  if (sum != 1) throw std::invalid_argument("barycentric weights do not sum to 1");
  return bound;
}

}  // namespace skeltrop

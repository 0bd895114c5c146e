#include "skeltrop/numeric.hpp"

#include <cctype>
#include <stdexcept>

namespace skeltrop {

namespace {

bool is_decimal(std::string_view text) {
  if (!text.empty() && text.front() == '-') text.remove_prefix(1);
  if (text.empty()) return false;
  for (char ch : text) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

Integer parse_integer(std::string_view text) {
  if (!is_decimal(text)) {
    throw std::invalid_argument("malformed integer '" + std::string(text) + "'");
  }
  return Integer(std::string(text), 10);
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = text.substr(slash + 1);
  if (!is_decimal(num) || !is_decimal(den) || den.front() == '-') {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  Integer d(std::string(den), 10);
  if (d == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  Rational value(Integer(std::string(num), 10), d);
  value.canonicalize();
  return value;
}

std::string format_rational(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

}  // namespace skeltrop

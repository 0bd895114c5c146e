#pragma once

// JSON input documents, fixture generation and certificate emission.
//
// Input schema (vertices are 1-indexed, orders are integers or decimal
// strings):
//
//   {
//     "schema_version": 1,
//     "complex": {
//       "ell": 3, "d": 1, "mode": "simplicial",
//       "facets": [[1, 2], [2, 3], [1, 3]]
//     },
//     "order_matrix": {"rows": [[0,0,0], ...], "horizontal_effective": [...]},
//     "check": {"mode": "both", "pairs": [[0, 4]]}
//   }
//
// In "delta" mode "facets" is replaced by explicit strata:
//
//   "strata": [{"id": 2, "vertices": [1, 2],
//               "faces": [{"subset": [1], "stratum": 0}, ...]}, ...]

#include "skeltrop/dual_complex.hpp"
#include "skeltrop/section_model.hpp"
#include "skeltrop/tropicalizer.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace skeltrop {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string field, std::size_t line, const std::string& message);
  /// JSON path of the offending value, e.g. "complex.facets[2]".
  const std::string& field() const { return field_; }
  /// 1-based line for syntax errors, 0 when unknown.
  std::size_t line() const { return line_; }

 private:
  std::string field_;
  std::size_t line_;
};

struct ComplexSpec {
  int ell = 1;
  int d = 1;
  ComplexMode mode = ComplexMode::simplicial;
  std::vector<std::vector<int>> facets;  // simplicial mode
  std::vector<Stratum> strata;           // delta mode

  friend bool operator==(const ComplexSpec&, const ComplexSpec&) = default;
};

struct CheckSection {
  std::optional<CheckMode> mode;
  std::vector<std::pair<StratumId, StratumId>> pairs;

  friend bool operator==(const CheckSection&, const CheckSection&) = default;
};

struct InputDocument {
  int schema_version = kSchemaVersion;
  ComplexSpec complex;
  std::optional<OrderMatrix> order_matrix;
  CheckSection check;

  std::shared_ptr<const DualComplex> build_complex() const;
  /// The override when present, the canonical orders otherwise.
  OrderMatrix orders(const DualComplex& complex) const;

  friend bool operator==(const InputDocument&, const InputDocument&) = default;
};

/// Throws ParseError on malformed JSON, schema violations, out-of-range
/// indices or malformed numbers.
InputDocument parse_input(std::string_view text);

/// Canonical JSON text; parse_input(serialize_input(doc)) == doc.
std::string serialize_input(const InputDocument& doc);

/// "fnv1a64:<hex>" over the canonical serialization.
std::string input_digest(const InputDocument& doc);

enum class FixtureKind { cycle, simplex_boundary, path, random };

struct FixtureSpec {
  FixtureKind kind = FixtureKind::cycle;
  int n = 3;                // cycle, path
  int d = 1;                // simplex_boundary, random
  int ell = 1;              // random
  std::uint64_t seed = 0;   // random
};

FixtureKind parse_fixture_kind(const std::string& text);

/// Deterministic document for the given parameters. Throws
/// std::invalid_argument when they are out of range.
InputDocument generate_fixture(const FixtureSpec& spec);

InputDocument cycle_fixture(int n);
InputDocument path_fixture(int n);
InputDocument simplex_boundary_fixture(int k);
InputDocument random_fixture(int ell, int d, std::uint64_t seed);

/// Canonical certificate text: records sorted by stratum id, then pair ids;
/// rationals as "p/q". Identical reports give identical bytes.
std::string emit_certificate(const FaithfulnessReport& report, const DualComplex& complex,
                             const std::string& input_digest);

/// Canonical order matrix document (ell, rows, flags).
std::string emit_order_matrix(const OrderMatrix& m);

}  // namespace skeltrop

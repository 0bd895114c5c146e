#include "skeltrop/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <random>
#include <set>

namespace skeltrop {

using nlohmann::json;
using nlohmann::ordered_json;

ParseError::ParseError(std::string field, std::size_t line, const std::string& message)
    : std::runtime_error(
          (line ? "line " + std::to_string(line) + ": " : std::string()) +
          (field.empty() ? std::string() : field + ": ") + message),
      field_(std::move(field)),
      line_(line) {}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw ParseError(field, 0, message);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing required field");
  return *it;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      fail(path.empty() ? key : path + "." + key, "unknown field");
    }
  }
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

void require_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < INT32_MIN || v > INT32_MAX) fail(path, "integer out of range");
  return static_cast<int>(v);
}

Integer as_big_int(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()), 10);
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()), 10);
  if (j.is_string()) {
    try {
      return parse_integer(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(path, e.what());
    }
  }
  fail(path, "expected an integer or a decimal string");
}

std::string at(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

std::vector<int> parse_vertex_list(const json& j, const std::string& path, int ell) {
  require_array(j, path);
  if (j.empty()) fail(path, "vertex list is empty");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const int v = as_int(j[i], at(path, i));
    if (v < 1 || v > ell) {
      fail(at(path, i), "vertex " + std::to_string(v) + " out of range 1.." + std::to_string(ell));
    }
    if (std::find(out.begin(), out.end(), v) != out.end()) {
      fail(at(path, i), "vertex " + std::to_string(v) + " repeated");
    }
    out.push_back(v);
  }
  return out;
}

ComplexSpec parse_complex(const json& j) {
  const std::string path = "complex";
  require_object(j, path);
  reject_unknown(j, {"ell", "d", "mode", "facets", "strata"}, path);
  ComplexSpec spec;
  spec.ell = as_int(require(j, "ell", path), path + ".ell");
  spec.d = as_int(require(j, "d", path), path + ".d");
  if (spec.ell < 1) fail(path + ".ell", "must be at least 1");
  if (spec.d < 1) fail(path + ".d", "must be at least 1");
  if (spec.d > 30) fail(path + ".d", "must be at most 30");

  const json& mode = require(j, "mode", path);
  if (mode == "simplicial") {
    spec.mode = ComplexMode::simplicial;
  } else if (mode == "delta") {
    spec.mode = ComplexMode::delta;
  } else {
    fail(path + ".mode", "expected \"simplicial\" or \"delta\"");
  }

  if (spec.mode == ComplexMode::simplicial) {
    if (j.contains("strata")) fail(path + ".strata", "only allowed in delta mode");
    const std::string fpath = path + ".facets";
    const json& facets = require(j, "facets", path);
    require_array(facets, fpath);
    for (std::size_t i = 0; i < facets.size(); ++i) {
      auto facet = parse_vertex_list(facets[i], at(fpath, i), spec.ell);
      if (facet.size() > static_cast<std::size_t>(spec.d) + 1) {
        fail(at(fpath, i), "facet exceeds d+1 vertices");
      }
      spec.facets.push_back(std::move(facet));
    }
    return spec;
  }

  if (j.contains("facets")) fail(path + ".facets", "only allowed in simplicial mode");
  const std::string spath = path + ".strata";
  const json& strata = require(j, "strata", path);
  require_array(strata, spath);
  std::set<std::uint32_t> ids;
  for (std::size_t i = 0; i < strata.size(); ++i) {
    const std::string sp = at(spath, i);
    const json& s = strata[i];
    require_object(s, sp);
    reject_unknown(s, {"id", "vertices", "faces"}, sp);
    const int id = as_int(require(s, "id", sp), sp + ".id");
    if (id < 0) fail(sp + ".id", "must be nonnegative");
    if (!ids.insert(static_cast<std::uint32_t>(id)).second) {
      fail(sp + ".id", "duplicate stratum id " + std::to_string(id));
    }
    Stratum stratum{StratumId{static_cast<std::uint32_t>(id)},
                    parse_vertex_list(require(s, "vertices", sp), sp + ".vertices", spec.ell),
                    {}};
    if (stratum.size() > static_cast<std::size_t>(spec.d) + 1) {
      fail(sp + ".vertices", "stratum exceeds d+1 vertices");
    }
    if (s.contains("faces")) {
      const std::string fp = sp + ".faces";
      const json& faces = s["faces"];
      require_array(faces, fp);
      for (std::size_t k = 0; k < faces.size(); ++k) {
        const std::string ep = at(fp, k);
        require_object(faces[k], ep);
        reject_unknown(faces[k], {"subset", "stratum"}, ep);
        const auto subset = parse_vertex_list(require(faces[k], "subset", ep), ep + ".subset", spec.ell);
        SlotMask mask = 0;
        for (int v : subset) {
          const auto slot = stratum.slot_of(v);
          if (!slot) fail(ep + ".subset", "vertex " + std::to_string(v) + " is not in the stratum");
          mask |= SlotMask{1} << *slot;
        }
        if (mask == stratum.full_mask()) fail(ep + ".subset", "not a proper subset");
        const int face = as_int(require(faces[k], "stratum", ep), ep + ".stratum");
        if (face < 0) fail(ep + ".stratum", "must be nonnegative");
        if (!stratum.faces.emplace(mask, StratumId{static_cast<std::uint32_t>(face)}).second) {
          fail(ep + ".subset", "subset listed twice");
        }
      }
    }
    spec.strata.push_back(std::move(stratum));
  }
  std::sort(spec.strata.begin(), spec.strata.end(),
            [](const Stratum& a, const Stratum& b) { return a.id < b.id; });
  for (const auto& s : spec.strata)
    for (const auto& [mask, face] : s.faces)
      if (!ids.contains(face.value)) {
        fail(spath, "stratum " + std::to_string(s.id.value) + " names unknown face stratum " +
                        std::to_string(face.value));
      }
  return spec;
}

OrderMatrix parse_orders(const json& j, int ell) {
  const std::string path = "order_matrix";
  require_object(j, path);
  reject_unknown(j, {"rows", "horizontal_effective"}, path);
  const json& rows = require(j, "rows", path);
  require_array(rows, path + ".rows");
  if (rows.size() != static_cast<std::size_t>(ell) + 1) {
    fail(path + ".rows", "expected ell+1 = " + std::to_string(ell + 1) + " rows");
  }
  IntMatrix orders(rows.size(), static_cast<std::size_t>(ell));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string rp = at(path + ".rows", r);
    require_array(rows[r], rp);
    if (rows[r].size() != static_cast<std::size_t>(ell)) {
      fail(rp, "expected ell = " + std::to_string(ell) + " entries");
    }
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      orders(r, c) = as_big_int(rows[r][c], at(rp, c));
      if (orders(r, c) < 0) fail(at(rp, c), "orders must be nonnegative");
    }
  }
  std::vector<bool> flags(rows.size(), true);
  if (j.contains("horizontal_effective")) {
    const std::string hp = path + ".horizontal_effective";
    const json& h = j["horizontal_effective"];
    require_array(h, hp);
    if (h.size() != rows.size()) fail(hp, "expected one flag per row");
    for (std::size_t r = 0; r < h.size(); ++r) {
      if (!h[r].is_boolean()) fail(at(hp, r), "expected a boolean");
      flags[r] = h[r].get<bool>();
    }
  }
  return OrderMatrix(std::move(orders), std::move(flags));
}

CheckSection parse_check(const json& j, const ComplexSpec& spec) {
  const std::string path = "check";
  require_object(j, path);
  reject_unknown(j, {"mode", "pairs"}, path);
  CheckSection out;
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) fail(path + ".mode", "expected a string");
    try {
      out.mode = parse_check_mode(j["mode"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(path + ".mode", e.what());
    }
  }
  if (j.contains("pairs")) {
    const std::string pp = path + ".pairs";
    require_array(j["pairs"], pp);
    // Stratum ids of a simplicial complex are assigned by the builder.
    std::set<std::uint32_t> known;
    if (spec.mode == ComplexMode::delta) {
      for (const auto& s : spec.strata) known.insert(s.id.value);
    } else {
      const auto c = DualComplex::from_facets(spec.ell, spec.d, spec.facets);
      for (const auto& s : c.strata()) known.insert(s.id.value);
    }
    for (std::size_t i = 0; i < j["pairs"].size(); ++i) {
      const json& pair = j["pairs"][i];
      const std::string ep = at(pp, i);
      if (!pair.is_array() || pair.size() != 2) fail(ep, "expected a pair of stratum ids");
      const int a = as_int(pair[0], at(ep, 0));
      const int b = as_int(pair[1], at(ep, 1));
      for (int x : {a, b})
        if (x < 0 || !known.contains(static_cast<std::uint32_t>(x))) {
          fail(ep, "unknown stratum id " + std::to_string(x));
        }
      if (a == b) fail(ep, "a pair needs two distinct strata");
      out.pairs.emplace_back(StratumId{static_cast<std::uint32_t>(a)},
                             StratumId{static_cast<std::uint32_t>(b)});
    }
  }
  return out;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

template <typename Json>
Json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

}  // namespace

InputDocument parse_input(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("", line_of(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
  require_object(root, "");
  reject_unknown(root, {"schema_version", "complex", "order_matrix", "check"}, "");

  InputDocument doc;
  doc.schema_version = as_int(require(root, "schema_version", ""), "schema_version");
  if (doc.schema_version != kSchemaVersion) {
    fail("schema_version", "unsupported version " + std::to_string(doc.schema_version));
  }
  doc.complex = parse_complex(require(root, "complex", ""));
  if (root.contains("order_matrix")) doc.order_matrix = parse_orders(root["order_matrix"], doc.complex.ell);
  if (root.contains("check")) doc.check = parse_check(root["check"], doc.complex);
  return doc;
}

std::shared_ptr<const DualComplex> InputDocument::build_complex() const {
  if (complex.mode == ComplexMode::simplicial) {
    return std::make_shared<const DualComplex>(
        DualComplex::from_facets(complex.ell, complex.d, complex.facets));
  }
  return std::make_shared<const DualComplex>(
      DualComplex::from_strata(complex.ell, complex.d, ComplexMode::delta, complex.strata));
}

OrderMatrix InputDocument::orders(const DualComplex& c) const {
  return order_matrix ? *order_matrix : canonical_order_matrix(c);
}

namespace {

ordered_json order_matrix_json(const OrderMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < m.orders().rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < m.orders().cols(); ++c)
      row.push_back(integer_json<ordered_json>(m.orders()(r, c)));
    rows.push_back(std::move(row));
  }
  ordered_json flags = ordered_json::array();
  for (bool f : m.horizontal_flags()) flags.push_back(f);
  return ordered_json{{"rows", std::move(rows)}, {"horizontal_effective", std::move(flags)}};
}

std::vector<int> mask_vertices(const Stratum& s, SlotMask mask) {
  std::vector<int> out;
  for (std::size_t a = 0; a < s.size(); ++a)
    if (mask & (SlotMask{1} << a)) out.push_back(s.vertices[a]);
  return out;
}

}  // namespace

std::string serialize_input(const InputDocument& doc) {
  ordered_json complex;
  complex["ell"] = doc.complex.ell;
  complex["d"] = doc.complex.d;
  if (doc.complex.mode == ComplexMode::simplicial) {
    complex["mode"] = "simplicial";
    complex["facets"] = doc.complex.facets;
  } else {
    complex["mode"] = "delta";
    ordered_json strata = ordered_json::array();
    for (const auto& s : doc.complex.strata) {
      ordered_json entry{{"id", s.id.value}, {"vertices", s.vertices}};
      if (!s.faces.empty()) {
        ordered_json faces = ordered_json::array();
        for (const auto& [mask, face] : s.faces)
          faces.push_back(ordered_json{{"subset", mask_vertices(s, mask)}, {"stratum", face.value}});
        entry["faces"] = std::move(faces);
      }
      strata.push_back(std::move(entry));
    }
    complex["strata"] = std::move(strata);
  }

  ordered_json root;
  root["schema_version"] = doc.schema_version;
  root["complex"] = std::move(complex);
  if (doc.order_matrix) root["order_matrix"] = order_matrix_json(*doc.order_matrix);
  if (doc.check.mode || !doc.check.pairs.empty()) {
    ordered_json check = ordered_json::object();
    if (doc.check.mode) check["mode"] = to_string(*doc.check.mode);
    if (!doc.check.pairs.empty()) {
      ordered_json pairs = ordered_json::array();
      for (auto [a, b] : doc.check.pairs) pairs.push_back({a.value, b.value});
      check["pairs"] = std::move(pairs);
    }
    root["check"] = std::move(check);
  }
  return root.dump(2) + "\n";
}

std::string input_digest(const InputDocument& doc) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char ch : serialize_input(doc)) {
    hash ^= ch;
    hash *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, hash);
  return std::string("fnv1a64:") + buf;
}

FixtureKind parse_fixture_kind(const std::string& text) {
  if (text == "cycle") return FixtureKind::cycle;
  if (text == "simplex_boundary") return FixtureKind::simplex_boundary;
  if (text == "path") return FixtureKind::path;
  if (text == "random") return FixtureKind::random;
  throw std::invalid_argument("unknown fixture kind '" + text + "'");
}

InputDocument cycle_fixture(int n) {
  if (n < 2) throw std::invalid_argument("cycle needs n >= 2");
  InputDocument doc;
  doc.complex.ell = n;
  doc.complex.d = 1;
  if (n == 2) {
    // Two edges glued along both endpoints: only a Delta-complex.
    doc.complex.mode = ComplexMode::delta;
    doc.complex.strata = {
        {StratumId{0}, {1}, {}},
        {StratumId{1}, {2}, {}},
        {StratumId{2}, {1, 2}, {{1, StratumId{0}}, {2, StratumId{1}}}},
        {StratumId{3}, {1, 2}, {{1, StratumId{0}}, {2, StratumId{1}}}},
    };
    return doc;
  }
  for (int i = 1; i < n; ++i) doc.complex.facets.push_back({i, i + 1});
  doc.complex.facets.push_back({1, n});
  return doc;
}

InputDocument path_fixture(int n) {
  if (n < 2) throw std::invalid_argument("path needs n >= 2");
  InputDocument doc;
  doc.complex.ell = n;
  doc.complex.d = 1;
  for (int i = 1; i < n; ++i) doc.complex.facets.push_back({i, i + 1});
  return doc;
}

InputDocument simplex_boundary_fixture(int k) {
  if (k < 1) throw std::invalid_argument("simplex boundary needs k >= 1");
  if (k > 29) throw std::invalid_argument("simplex boundary too large");
  InputDocument doc;
  doc.complex.ell = k + 1;
  doc.complex.d = std::max(1, k - 1);
  // All k-subsets of {1..k+1}: drop one vertex at a time.
  for (int skip = k + 1; skip >= 1; --skip) {
    std::vector<int> facet;
    for (int v = 1; v <= k + 1; ++v)
      if (v != skip) facet.push_back(v);
    doc.complex.facets.push_back(std::move(facet));
  }
  return doc;
}

InputDocument random_fixture(int ell, int d, std::uint64_t seed) {
  if (ell < 1 || d < 1) throw std::invalid_argument("random fixture needs ell >= 1 and d >= 1");
  if (d > 30) throw std::invalid_argument("random fixture needs d <= 30");
  // Raw engine output only: std distributions are implementation-defined.
  std::mt19937_64 rng(seed);
  auto below = [&](std::uint64_t bound) { return rng() % bound; };

  InputDocument doc;
  doc.complex.ell = ell;
  doc.complex.d = d;
  const std::size_t max_size = static_cast<std::size_t>(std::min(ell, d + 1));
  const std::uint64_t facet_count = 1 + below(static_cast<std::uint64_t>(ell) + 1);
  std::vector<bool> covered(static_cast<std::size_t>(ell) + 1, false);
  for (std::uint64_t f = 0; f < facet_count; ++f) {
    const std::size_t size = 1 + below(max_size);
    std::vector<int> pool(static_cast<std::size_t>(ell));
    for (int v = 0; v < ell; ++v) pool[static_cast<std::size_t>(v)] = v + 1;
    for (std::size_t i = 0; i < size; ++i) std::swap(pool[i], pool[i + below(pool.size() - i)]);
    std::vector<int> facet(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
    std::sort(facet.begin(), facet.end());
    for (int v : facet) covered[static_cast<std::size_t>(v)] = true;
    doc.complex.facets.push_back(std::move(facet));
  }
  for (int v = 1; v <= ell; ++v)
    if (!covered[static_cast<std::size_t>(v)]) doc.complex.facets.push_back({v});
  return doc;
}

InputDocument generate_fixture(const FixtureSpec& spec) {
  switch (spec.kind) {
    case FixtureKind::cycle: return cycle_fixture(spec.n);
    case FixtureKind::path: return path_fixture(spec.n);
    case FixtureKind::simplex_boundary: return simplex_boundary_fixture(spec.d);
    case FixtureKind::random: return random_fixture(spec.ell, spec.d, spec.seed);
  }
  throw std::invalid_argument("unknown fixture kind");
}

namespace {

ordered_json rational_json(const Rational& x) { return format_rational(x); }

ordered_json point_json(const RatVector& x) {
  ordered_json out = ordered_json::array();
  for (const auto& v : x) out.push_back(rational_json(v));
  return out;
}

ordered_json interval_json(const ValueInterval& iv) {
  return ordered_json{{"low", rational_json(iv.low)},
                      {"high", rational_json(iv.high)},
                      {"low_open", iv.low_open},
                      {"high_open", iv.high_open}};
}

}  // namespace

std::string emit_certificate(const FaithfulnessReport& report, const DualComplex& complex,
                             const std::string& digest) {
  ordered_json root;
  root["tool"] = "skeltrop";
  root["version"] = kToolVersion;
  root["input_digest"] = digest;
  root["mode"] = to_string(report.mode);
  root["ell"] = complex.ell();
  root["d"] = complex.dim_bound();
  root["overall"] = to_string(report.overall);
  root["pair_filter_applied"] = report.pair_filter_applied;

  ordered_json strata = ordered_json::array();
  for (const auto& cert : report.strata) {
    ordered_json edges = ordered_json::array();
    for (std::size_t r = 0; r < cert.edge_matrix.rows(); ++r) {
      ordered_json row = ordered_json::array();
      for (std::size_t c = 0; c < cert.edge_matrix.cols(); ++c)
        row.push_back(integer_json<ordered_json>(cert.edge_matrix(r, c)));
      edges.push_back(std::move(row));
    }
    ordered_json divisors = ordered_json::array();
    for (const auto& x : cert.elementary_divisors) divisors.push_back(integer_json<ordered_json>(x));
    strata.push_back(ordered_json{{"id", cert.stratum.value},
                                  {"vertices", complex.stratum(cert.stratum).vertices},
                                  {"unimodular", cert.verdict},
                                  {"rank", cert.rank},
                                  {"elementary_divisors", std::move(divisors)},
                                  {"edge_matrix", std::move(edges)}});
  }
  root["strata"] = std::move(strata);

  ordered_json pairs = ordered_json::array();
  for (const auto& ev : report.pairs) {
    ordered_json entry{{"strata", {ev.first.value, ev.second.value}}, {"face_pair", ev.face_pair}};
    if (report.mode != CheckMode::exact) {
      ordered_json cert;
      if (ev.separation) {
        cert = ordered_json{{"kind", "separation"},
                            {"separated", ev.separation->separated.value},
                            {"other", ev.separation->other.value},
                            {"coordinate", ev.separation->coordinate},
                            {"relint_range", interval_json(ev.separation->relint_range)},
                            {"other_lower_bound", rational_json(ev.separation->other_lower_bound)}};
      } else if (ev.injective_ambient) {
        cert = ordered_json{{"kind", "injectivity"}, {"ambient", ev.injective_ambient->value}};
      } else {
        cert = ordered_json{{"kind", "none"}, {"reason", ev.certificate_note}};
      }
      entry["certificate"] = std::move(cert);
    }
    if (ev.exact) {
      ordered_json exact{{"verdict", ev.exact->disjoint ? "disjoint" : "collision"},
                         {"method", ev.exact->via_injectivity ? "injectivity" : "lp"}};
      if (ev.exact->witness && !ev.exact->disjoint) {
        exact["witness"] = point_json(*ev.exact->witness);
        std::vector<TropCoord> raw;
        raw.emplace_back(Rational(0));
        for (const auto& x : *ev.exact->witness) raw.emplace_back(x);
        ordered_json projective = ordered_json::array();
        const TropicalProjectivePoint normalized = trop_normalize(raw);
        for (const auto& x : normalized.coords()) projective.push_back(rational_json(*x));
        exact["witness_projective"] = std::move(projective);
      }
      entry["exact"] = std::move(exact);
    }
    if (ev.agreement) entry["agreement"] = *ev.agreement;
    pairs.push_back(std::move(entry));
  }
  root["pairs"] = std::move(pairs);
  root["discrepancies"] = report.discrepancies;
  root["defects"] = report.defects;
  return root.dump(2) + "\n";
}

std::string emit_order_matrix(const OrderMatrix& m) {
  ordered_json root;
  root["ell"] = m.ell();
  const ordered_json body = order_matrix_json(m);
  root["rows"] = body["rows"];
  root["horizontal_effective"] = body["horizontal_effective"];
  return root.dump(2) + "\n";
}

}  // namespace skeltrop

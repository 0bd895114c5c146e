// skeltrop: certify faithful tropicalizations of skeleta from order data.
//
// Exit codes: 0 faithful / valid, 2 not faithful / invalid, 1 error.

#include "skeltrop/adjoint_bounds.hpp"
#include "skeltrop/io.hpp"
#include "skeltrop/tropicalizer.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kNegative = 2;

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int run_validate(const std::string& input) {
  const auto doc = skeltrop::parse_input(read_text(input));
  const auto complex = doc.build_complex();
  bool ok = true;
  for (const auto& v : skeltrop::validate(*complex)) {
    std::cout << "violation " << v.rule << ": " << v.message << "\n";
    ok = false;
  }
  if (ok) {
    for (const auto& v : skeltrop::validate_orders(doc.orders(*complex), *complex)) {
      std::cout << "violation " << v.rule << ": " << v.message << "\n";
      ok = false;
    }
  }
  if (!complex->is_connected()) std::cerr << "warning: the dual complex is not connected\n";
  if (ok) std::cout << "valid: " << complex->strata().size() << " strata\n";
  return ok ? kOk : kNegative;
}

int run_canonical(const std::string& input) {
  const auto doc = skeltrop::parse_input(read_text(input));
  const auto complex = doc.build_complex();
  const auto violations = skeltrop::validate(*complex);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "violation " << v.rule << ": " << v.message << "\n";
    return kError;
  }
  std::cout << skeltrop::emit_order_matrix(skeltrop::canonical_order_matrix(*complex));
  return kOk;
}

int run_check(const std::string& input, const std::string& mode, unsigned jobs,
              const std::string& output) {
  const auto doc = skeltrop::parse_input(read_text(input));
  const auto complex = doc.build_complex();
  if (!complex->is_connected()) std::cerr << "warning: the dual complex is not connected\n";
  skeltrop::CheckOptions options;
  options.mode = !mode.empty() ? skeltrop::parse_check_mode(mode)
                               : doc.check.mode.value_or(skeltrop::CheckMode::both);
  options.jobs = jobs;
  options.pair_filter = doc.check.pairs;
  const auto report = skeltrop::check_faithful(complex, doc.orders(*complex), options);
  write_text(output, skeltrop::emit_certificate(report, *complex, skeltrop::input_digest(doc)));
  return report.overall == skeltrop::Overall::faithful ? kOk : kNegative;
}

int run_bounds(int dim, const std::string& mode, int ell, const std::string& twist) {
  nlohmann::ordered_json out;
  out["d"] = dim;
  out["mode"] = mode;
  out["phi_upper_bound"] = skeltrop::phi_upper_bound({dim, ell, skeltrop::parse_bound_mode(mode)});
  out["ell"] = ell;
  out["coordinate_count"] = skeltrop::coordinate_count(ell, dim);
  if (!twist.empty()) {
    out["twist_case"] = twist;
    out["twist"] = skeltrop::corollary_twist(dim, skeltrop::parse_canonical_case(twist));
  }
  std::cout << out.dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify faithful tropicalizations of Berkovich skeleta"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(skeltrop::kToolVersion));

  std::string input;
  std::string mode;
  std::string output;
  unsigned jobs = 1;

  auto* validate_cmd = app.add_subcommand("validate", "Check a complex and its order matrix");
  validate_cmd->add_option("input", input, "Input document ('-' for stdin)")->required();

  auto* canonical_cmd = app.add_subcommand("canonical", "Print the canonical order matrix");
  canonical_cmd->add_option("input", input, "Input document ('-' for stdin)")->required();

  auto* check_cmd = app.add_subcommand("check", "Certify unimodularity and faithfulness");
  check_cmd->add_option("input", input, "Input document ('-' for stdin)")->required();
  check_cmd->add_option("--mode", mode, "certificate, exact or both")
      ->check(CLI::IsMember({"certificate", "exact", "both"}));
  check_cmd->add_option("--jobs,-j", jobs, "Worker threads for pair checks")
      ->check(CLI::Range(1u, 1024u));
  check_cmd->add_option("--output,-o", output, "Write the certificate here instead of stdout");

  auto* fixtures_cmd = app.add_subcommand("fixtures", "Fixture documents");
  fixtures_cmd->require_subcommand(1);
  auto* gen_cmd = fixtures_cmd->add_subcommand("gen", "Generate a fixture document");
  std::string kind;
  skeltrop::FixtureSpec spec;
  gen_cmd->add_option("--kind", kind, "cycle, path, simplex_boundary or random")
      ->required()
      ->check(CLI::IsMember({"cycle", "path", "simplex_boundary", "random"}));
  gen_cmd->add_option("--n", spec.n, "Vertex count for cycle and path");
  gen_cmd->add_option("--dim", spec.d, "Simplex dimension, or d for random");
  gen_cmd->add_option("--ell", spec.ell, "Vertex count for random");
  gen_cmd->add_option("--seed", spec.seed, "Seed for random");

  auto* bounds_cmd = app.add_subcommand("bounds", "Adjoint bundle thresholds");
  int dim = 1;
  int ell = 1;
  std::string bound_mode = "angehrn_siu";
  std::string twist;
  bounds_cmd->add_option("--dim", dim, "Relative dimension d")->required();
  bounds_cmd->add_option("--mode", bound_mode, "angehrn_siu or fujita")
      ->check(CLI::IsMember({"angehrn_siu", "fujita"}));
  bounds_cmd->add_option("--ell", ell, "Number of special-fiber components");
  bounds_cmd->add_option("--twist", twist, "trivial_canonical or ample_canonical")
      ->check(CLI::IsMember({"trivial_canonical", "ample_canonical"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  try {
    if (*validate_cmd) return run_validate(input);
    if (*canonical_cmd) return run_canonical(input);
    if (*check_cmd) return run_check(input, mode, jobs, output);
    if (*gen_cmd) {
      spec.kind = skeltrop::parse_fixture_kind(kind);
      std::cout << skeltrop::serialize_input(skeltrop::generate_fixture(spec));
      return kOk;
    }
    if (*bounds_cmd) return run_bounds(dim, bound_mode, ell, twist);
  } catch (const skeltrop::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

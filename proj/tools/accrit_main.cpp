#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "accrit/analyzer.hpp"
#include "accrit/curve.hpp"
#include "accrit/errors.hpp"
#include "accrit/extension.hpp"
#include "accrit/generators.hpp"
#include "accrit/metric.hpp"
#include "accrit/modification.hpp"
#include "accrit/serialization.hpp"
#include "accrit/tolerances.hpp"
#include "accrit/zigzag.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text << "\n";
}

accrit::SearchMode parse_mode(const std::string& mode) {
  return mode == "exact" ? accrit::SearchMode::Exact
                         : accrit::SearchMode::Greedy;
}

accrit::Point parse_vertex(const std::string& text) {
  accrit::Point p;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    p.push_back(std::stod(part));
  }
  if (p.empty()) throw std::runtime_error("empty vertex: " + text);
  return p;
}

std::string join_coords(const accrit::Point& p) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (std::size_t c = 0; c < p.size(); ++c) {
    if (c > 0) os << ';';
    os << p[c];
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toolkit for testing sampled curves for absolute continuity"};
  app.require_subcommand(1);
  int exit_code = 0;

  // metric-check
  std::string mc_input;
  auto* mc = app.add_subcommand(
      "metric-check", "Check a distance matrix against the metric axioms");
  mc->add_option("matrix", mc_input, "JSON file with the matrix")->required();
  mc->callback([&] {
    const auto matrix = accrit::matrix_from_json(read_file(mc_input));
    const auto report = accrit::check_metric_axioms(matrix);
    std::cout << accrit::to_json(report) << "\n";
    exit_code = report.pass ? 0 : 1;
  });

  // gen
  std::string gen_kind;
  std::string gen_out;
  std::size_t gen_samples = 1001;
  unsigned gen_level = 4;
  std::size_t gen_steps = 24;
  double gen_fraction = 0.75;
  double gen_alpha = 0.5;
  std::uint64_t gen_seed = 1;
  std::size_t gen_dim = 2;
  std::vector<std::string> gen_vertices;
  auto* gen = app.add_subcommand("gen", "Generate a sample curve file");
  gen->add_option("kind", gen_kind, "identity|polyline|cantor|circle|snowflake|walk")
      ->required()
      ->check(CLI::IsMember(
          {"identity", "polyline", "cantor", "circle", "snowflake", "walk"}));
  gen->add_option("--samples", gen_samples, "Number of samples");
  gen->add_option("--level", gen_level, "Staircase depth (cantor)");
  gen->add_option("--steps", gen_steps, "Samples per ternary cell (cantor)");
  gen->add_option("--fraction", gen_fraction, "Fraction of a turn (circle)");
  gen->add_option("--alpha", gen_alpha, "Snowflake exponent");
  gen->add_option("--seed", gen_seed, "Random seed (walk)");
  gen->add_option("--dim", gen_dim, "Ambient dimension (walk)");
  gen->add_option("--vertex", gen_vertices,
                  "Polyline vertex as comma-separated coordinates; repeat per "
                  "vertex");
  gen->add_option("--out", gen_out, "Output file (stdout when omitted)");
  gen->callback([&] {
    std::string text;
    if (gen_kind == "identity") {
      text = accrit::to_json(accrit::identity_curve(gen_samples));
    } else if (gen_kind == "polyline") {
      std::vector<accrit::Point> vertices;
      for (const auto& v : gen_vertices) vertices.push_back(parse_vertex(v));
      text = accrit::to_json(accrit::polyline_curve(vertices, gen_samples));
    } else if (gen_kind == "cantor") {
      text = accrit::to_json(accrit::cantor_curve(gen_level, gen_steps));
    } else if (gen_kind == "circle") {
      text = accrit::to_json(accrit::circle_curve(gen_fraction, gen_samples));
    } else if (gen_kind == "snowflake") {
      text = accrit::to_json(accrit::snowflaked_curve(gen_alpha, gen_samples));
    } else {
      text = accrit::to_json(
          accrit::random_walk_curve(gen_seed, gen_samples, gen_dim));
    }
    write_output(gen_out, text);
  });

  // extend
  std::string ext_fn;
  std::string ext_queries;
  std::string ext_out;
  double ext_constant = 0;
  auto* ext = app.add_subcommand(
      "extend", "Evaluate the extremal Lipschitz extensions at query points");
  ext->add_option("--fn", ext_fn, "Partial function JSON")->required();
  ext->add_option("--queries", ext_queries, "Query points JSON")->required();
  auto* ext_l = ext->add_option("--L", ext_constant,
                                "Override the file's Lipschitz constant");
  ext->add_option("--out", ext_out, "Output CSV (stdout when omitted)");
  ext->callback([&] {
    auto data = accrit::partial_fn_from_json(read_file(ext_fn));
    const double constant = ext_l->count() ? ext_constant : data.constant;
    accrit::ExtensionField field(data.function, constant);
    const auto queries = accrit::points_from_json(read_file(ext_queries));
    std::ostringstream csv;
    csv << std::setprecision(17) << "x,lower,upper,gap_slack\n";
    for (const auto& q : queries) {
      csv << join_coords(q) << ',' << field.lower(q) << ',' << field.upper(q)
          << ',' << field.gap_slack(q) << "\n";
    }
    std::string text = csv.str();
    text.pop_back();
    write_output(ext_out, text);
  });

  // witness
  std::string wit_curve;
  std::string wit_fn;
  std::string wit_out;
  double wit_constant = 2.0;
  double wit_theta = accrit::kDefaultTheta;
  double wit_eq_tol = accrit::kEqTol;
  bool wit_skip = false;
  auto* wit = app.add_subcommand(
      "witness", "Build a staged variation witness over a whole curve");
  wit->add_option("--curve", wit_curve, "Curve JSON")->required();
  wit->add_option("--fn", wit_fn, "Partial function to extend (optional)");
  wit->add_option("--L", wit_constant, "Target Lipschitz constant");
  wit->add_option("--theta", wit_theta, "Fraction of the ideal bound to aim "
                                        "for, in (0,1)");
  wit->add_option("--eq-tol", wit_eq_tol, "Coincidence tolerance");
  wit->add_flag("--skip-coarse", wit_skip,
                "Charge unusable segments to slack instead of failing");
  wit->add_option("--out", wit_out, "Output file (stdout when omitted)");
  wit->callback([&] {
    const auto curve = accrit::curve_from_json(read_file(wit_curve));
    auto support = wit_fn.empty()
                       ? accrit::PartialLipschitzFunction::empty(curve.space())
                       : accrit::partial_fn_from_json(read_file(wit_fn))
                             .function;
    const auto result = accrit::staged_witness_general(
        curve, support, wit_constant, wit_theta, wit_eq_tol, wit_skip);
    write_output(wit_out, accrit::to_json(result, curve));
  });

  // modify
  std::string mod_curve;
  std::string mod_out;
  double mod_eq_tol = accrit::kEqTol;
  auto* mod = app.add_subcommand(
      "modify", "Restrict a curve to a piecewise injective carrier");
  mod->add_option("--curve", mod_curve, "Curve JSON")->required();
  mod->add_option("--eq-tol", mod_eq_tol, "Coincidence tolerance");
  mod->add_option("--out", mod_out, "Output file (stdout when omitted)");
  mod->callback([&] {
    const auto curve = accrit::curve_from_json(read_file(mod_curve));
    const auto result =
        accrit::piecewise_injective_modification(curve, mod_eq_tol);
    const auto report =
        accrit::verify_piecewise_injective(curve, result.carrier, mod_eq_tol);
    write_output(mod_out, accrit::to_json(result, report, curve));
    exit_code = report.pass ? 0 : 1;
  });

  // analyze
  std::string ana_curve;
  std::string ana_out;
  std::string ana_mode = "greedy";
  double ana_epsilon = 0;
  double ana_theta = accrit::kDefaultTheta;
  std::size_t ana_ncap = 5;
  std::vector<double> ana_deltas;
  auto* ana = app.add_subcommand(
      "analyze",
      "Scan length budgets, search for violating families, and emit a "
      "certificate when the curve fails");
  ana->add_option("--curve", ana_curve, "Curve JSON")->required();
  ana->add_option("--epsilon", ana_epsilon, "Gap threshold")->required();
  ana->add_option("--theta", ana_theta, "Certificate margin factor in (0,1)");
  ana->add_option("--n-cap", ana_ncap, "Largest n for the 1/n budgets");
  ana->add_option("--deltas", ana_deltas,
                  "Explicit length budgets (default: 1, 1/2, ..., 1/n-cap)");
  ana->add_option("--mode", ana_mode, "Search mode")
      ->check(CLI::IsMember({"exact", "greedy"}));
  ana->add_option("--out", ana_out,
                  "Write a witness certificate here on a violation verdict");
  ana->callback([&] {
    const auto curve = accrit::curve_from_json(read_file(ana_curve));
    const auto mode = parse_mode(ana_mode);
    std::vector<double> deltas = ana_deltas;
    if (deltas.empty()) {
      for (std::size_t n = 1; n <= ana_ncap; ++n) {
        deltas.push_back(1.0 / double(n));
      }
    }
    const auto report = accrit::analyze(curve, ana_epsilon, deltas, mode);
    const auto search =
        accrit::find_violating_families(curve, ana_epsilon, ana_ncap, mode);
    std::cout << accrit::analysis_to_json(report, search, ana_theta, curve)
              << "\n";
    if (!ana_out.empty() && report.violation && search.all_found) {
      const auto cert =
          accrit::build_global_witness(curve, search, ana_epsilon, ana_theta);
      for (const auto& line : cert.log) std::cerr << line << "\n";
      write_output(ana_out, accrit::to_json(cert));
    }
  });

  // verify
  std::string ver_curve;
  std::string ver_cert;
  auto* ver = app.add_subcommand(
      "verify", "Re-check a witness certificate against its curve");
  ver->add_option("--curve", ver_curve, "Curve JSON")->required();
  ver->add_option("--cert", ver_cert, "Certificate JSON")->required();
  ver->callback([&] {
    const auto curve = accrit::curve_from_json(read_file(ver_curve));
    accrit::VerifyResult result;
    try {
      const auto cert = accrit::certificate_from_json(read_file(ver_cert));
      result = accrit::verify_certificate(curve, cert);
    } catch (const accrit::SupportTooCloseError& e) {
      result.pass = false;
      result.failures.push_back({"lipschitz", e.what()});
    }
    std::cout << accrit::to_json(result) << "\n";
    exit_code = result.pass ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}

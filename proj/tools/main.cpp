// zerodist: analyze polynomials, plot their zeros, run seeded ensembles.
//
// Exit codes: 0 success, 1 input error, 2 a certificate failed beyond tolerance.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "zerodist/analysis.hpp"

namespace {

using namespace zerodist;
using json = nlohmann::json;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kCertificateFailure = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FamilyArgs {
  std::string kind;
  std::optional<int> n;
  std::optional<long long> p;
  std::optional<double> c;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App* cmd) {
    cmd->add_option("--family", kind, "littlewood | digits_pi | fekete | lehmer | binomial_pow | shrunk_power | "
                                      "roots_of_unity");
    cmd->add_option("--N", n, "degree");
    cmd->add_option("--p", p, "odd prime (fekete)");
    cmd->add_option("--c", c, "constant c > 0 (shrunk_power)");
    cmd->add_option("--seed", seed, "generator seed (littlewood)");
  }

  FamilySpec spec() const {
    FamilySpec s;
    s.kind = parse_family_kind(kind);
    s.N = n;
    s.p = p;
    s.c = c;
    s.seed = seed;
    s.validate();
    return s;
  }
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(fmt::format("{}: {}", path, e.what()));
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

void print_summary(const AnalysisReport& r) {
  std::cout << fmt::format("input        {}\n", r.input);
  std::cout << fmt::format("degree       {} (deflation order {})\n", r.degree, r.deflation_order);
  std::cout << fmt::format("h            {:.10f}\n", r.measures.h);
  std::cout << fmt::format("H            {:.10g}\n", r.measures.H);
  std::cout << fmt::format("log M        {:.10f}\n", r.measures.log_script_M);
  std::cout << fmt::format("Mahler       {:.10f}\n", r.mahler);
  std::cout << fmt::format("discrepancy  {:.10f}\n", r.discrepancy.value);
  const ReferenceConstants& c = r.certificates.constants;
  std::cout << fmt::format("constants    8/pi {:.4f}  catalan {:.4f}  sqrt(2pi/catalan) {:.4f}  sqrt2 {:.4f}\n",
                           c.eight_over_pi, c.catalan, c.ganelius, c.sqrt2);
  for (const CertificateItem& item : r.certificates.items) {
    const char* verdict = item.pass ? "pass" : (item.gating ? "FAIL" : "note");
    std::cout << fmt::format("  [{}] {:<40} {:>16.9g} <= {:<16.9g}", verdict, item.name, item.measured, item.bound);
    if (!item.pass && item.witness) std::cout << "  " << *item.witness;
    std::cout << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-distribution statistics and equidistribution certificates for polynomials"};
  app.require_subcommand(1);

  std::string coeffs_path, spec_path, json_out, svg_out, csv_out;
  double tol = 1e-13;
  bool quiet = false;
  FamilyArgs analyze_family;
  auto* analyze_cmd = app.add_subcommand("analyze", "run the full pipeline on one polynomial");
  auto* coeffs_opt = analyze_cmd->add_option("--coeffs", coeffs_path, "coefficient JSON file, low to high");
  auto* spec_opt = analyze_cmd->add_option("--spec", spec_path, "family spec JSON file");
  analyze_family.attach(analyze_cmd);
  coeffs_opt->excludes(spec_opt);
  analyze_cmd->add_option("--tol", tol, "root-finder tolerance");
  analyze_cmd->add_option("--json", json_out, "write the report JSON here");
  analyze_cmd->add_option("--svg", svg_out, "write a zero scatter SVG here");
  analyze_cmd->add_option("--csv", csv_out, "write the zero list CSV here");
  analyze_cmd->add_flag("--quiet", quiet, "no summary on stdout");

  std::string report_path, plot_out;
  auto* plot_cmd = app.add_subcommand("plot", "draw the zero scatter of a saved report");
  plot_cmd->add_option("--report", report_path, "report JSON")->required();
  plot_cmd->add_option("--out", plot_out, "SVG path")->required();

  FamilyArgs ensemble_family;
  int count = 1;
  std::uint64_t seed_base = 0;
  int jobs = 1;
  std::string ensemble_csv_out;
  auto* ensemble_cmd = app.add_subcommand("ensemble", "analyze a family over consecutive seeds");
  ensemble_family.attach(ensemble_cmd);
  ensemble_cmd->add_option("--count", count, "number of instances")->check(CLI::PositiveNumber);
  ensemble_cmd->add_option("--seed-base", seed_base, "first seed");
  ensemble_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  ensemble_cmd->add_option("--csv", ensemble_csv_out, "write the CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*analyze_cmd) {
      AnalysisOptions options;
      options.root_tol = tol;
      AnalysisReport report;
      try {
        if (!coeffs_path.empty()) {
          report = analyze(polynomial_from_json(read_json(coeffs_path)), coeffs_path, 0, options);
        } else if (!spec_path.empty()) {
          report = analyze(family_from_json(read_json(spec_path)), options);
        } else if (!analyze_family.kind.empty()) {
          report = analyze(analyze_family.spec(), options);
        } else {
          throw InputError("give --coeffs, --spec or --family");
        }
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      } catch (const json::exception& e) {
        throw InputError(e.what());
      }
      if (!json_out.empty()) write_file(json_out, dump_report(to_json(report)));
      if (!svg_out.empty()) write_file(svg_out, render_svg(report.roots.entries, report.input));
      if (!csv_out.empty()) write_file(csv_out, zeros_csv(report.roots));
      if (!quiet) print_summary(report);
      return report.certificates.all_pass() ? kOk : kCertificateFailure;
    }

    if (*plot_cmd) {
      const json report = read_json(report_path);
      std::vector<Root> roots;
      try {
        roots = roots_from_report(report);
      } catch (const json::exception& e) {
        throw InputError(e.what());
      }
      if (roots.empty()) throw InputError("report has no roots");
      write_file(plot_out, render_svg(roots, report.value("input", std::string("zeros"))));
      return kOk;
    }

    if (*ensemble_cmd) {
      if (ensemble_family.kind.empty()) throw InputError("ensemble needs --family");
      FamilySpec templ;
      try {
        FamilyArgs probe = ensemble_family;
        if (!probe.seed) probe.seed = seed_base;
        templ = probe.spec();
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      EnsembleOptions options;
      options.jobs = jobs;
      options.analysis.certify.identities = false;
      options.analysis.certify.smoothing = false;
      const auto rows = run_ensemble(templ, count, seed_base, options);
      const std::string text = ensemble_csv(rows);
      if (ensemble_csv_out.empty())
        std::cout << text;
      else
        write_file(ensemble_csv_out, text);
      for (const EnsembleRow& r : rows) {
        if (!r.ok) std::cerr << fmt::format("seed {}: {}\n", r.seed, r.error);
        if (!r.ok || !r.certified) return kCertificateFailure;
      }
      return kOk;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zerodist/certify.hpp"
#include "zerodist/equidist.hpp"
#include "zerodist/families.hpp"
#include "zerodist/measures.hpp"
#include "zerodist/rootfind.hpp"

namespace zerodist {

inline constexpr int kReportSchemaVersion = 1;

struct AnalysisOptions {
  double root_tol = 1e-13;
  CertifyOptions certify;
};

struct StageTiming {
  std::string stage;
  double milliseconds = 0.0;
};

struct AnalysisReport {
  std::string input;
  int degree = 0;  ///< degree of the analyzed cofactor
  int deflation_order = 0;
  RootSet roots;
  MeasureReport measures;
  double mahler = 0.0;
  Discrepancy discrepancy;
  CertificateReport certificates;
  std::vector<StageTiming> timings;
};

/// normalize → deflate z^v → find_roots → measures → Schur reduction →
/// discrepancy → certificates. `prior_deflation` is added to the reported
/// deflation order (for generators that already divided out z).
AnalysisReport analyze(const Polynomial& p, std::string input, int prior_deflation = 0,
                       const AnalysisOptions& options = {});
AnalysisReport analyze(const FamilySpec& spec, const AnalysisOptions& options = {});

nlohmann::json to_json(const AnalysisReport& report);
/// Canonical text form: two-space indented, keys sorted, doubles
/// in shortest round-trip form. Non-finite values are rejected.
std::string dump_report(const nlohmann::json& j);

/// Roots read back from a report JSON object.
std::vector<Root> roots_from_report(const nlohmann::json& report);

/// {"coeffs": [[re, im], ...]} (low to high; bare numbers are read as real).
Polynomial polynomial_from_json(const nlohmann::json& j);
nlohmann::json polynomial_to_json(const Polynomial& p);

/// {"kind": "...", "N": ..., "p": ..., "c": ..., "seed": ..., "coeffs": ...}.
FamilySpec family_from_json(const nlohmann::json& j);
nlohmann::json family_to_json(const FamilySpec& spec);

/// Static SVG 1.1 zero scatter with the unit circle and axes. Throws on an
/// empty root list.
std::string render_svg(const std::vector<Root>& roots, const std::string& title);

/// Header plus one row per root entry: modulus, angle, multiplicity, re, im.
std::string zeros_csv(const RootSet& roots);

struct EnsembleRow {
  std::uint64_t seed = 0;
  int degree = 0;
  double h = 0.0;
  double H = 0.0;
  double log_script_M = 0.0;
  double D = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  bool ok = true;
  bool certified = true;
  std::string error;
};

struct EnsembleOptions {
  int jobs = 1;
  AnalysisOptions analysis;
};

/// One analysis per seed seed_base, seed_base+1, ...; rows are returned in
/// seed order whatever the number of worker threads.
std::vector<EnsembleRow> run_ensemble(const FamilySpec& templ, int count, std::uint64_t seed_base,
                                      const EnsembleOptions& options = {});
std::string ensemble_csv(const std::vector<EnsembleRow>& rows);

}  // namespace zerodist

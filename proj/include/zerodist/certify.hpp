#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zerodist/equidist.hpp"
#include "zerodist/measures.hpp"
#include "zerodist/polynomial.hpp"
#include "zerodist/rootfind.hpp"

namespace zerodist {

/// One checked inequality `measured ≤ bound` (identities use bound = 0 and
/// measured = |residual|). pass ⇔ measured ≤ bound + tolerance.
struct CertificateItem {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  double slack = 0.0;  ///< bound − measured
  double tolerance = 0.0;
  bool pass = false;
  /// Informational items are recorded but do not decide the overall verdict.
  bool gating = true;
  std::optional<std::string> witness;
};

CertificateItem make_item(std::string name, double measured, double bound, double tolerance,
                          std::optional<std::string> witness = std::nullopt, bool gating = true);

/// Comparison constants of the Erdős–Turán literature.
struct ReferenceConstants {
  double eight_over_pi;  ///< 8/π, the constant in D ≤ c√(Nh)
  double catalan;        ///< k = 1 − 1/3² + 1/5² − ...
  double ganelius;       ///< √(2π/k)
  double sqrt2;          ///< lower bound for any admissible constant
};

ReferenceConstants reference_constants();

struct CertificateReport {
  std::vector<CertificateItem> items;
  ReferenceConstants constants = reference_constants();

  bool all_pass() const;
  const CertificateItem* find(const std::string& name) const;
};

inline constexpr double kInequalityTol = 1e-7;
inline constexpr double kIdentityTol = 1e-6;

/// log 𝓜(P) ≤ 2h(P).
CertificateItem check_theorem1(const Polynomial& p, const RootSet& roots, const QuadOptions& options = {});
CertificateItem check_theorem1(const RootSet& roots, const QuadResult<double>& h);

/// 𝒟(P) ≤ (8/π)√(N h(P)).
CertificateItem check_theorem2(const Polynomial& p, const RootSet& roots, const QuadOptions& options = {});
CertificateItem check_theorem2(const RootSet& roots, const QuadResult<double>& h);

/// For ±1 coefficients: 𝒟(P) ≤ (8/π)√(N log(N+1)).
CertificateItem check_theorem2_pm1(const Polynomial& p, const RootSet& roots);

/// Number of roots outside e^{−ε} ≤ ρ ≤ e^{ε} is at most log 𝓜 / ε.
CertificateItem check_band(const RootSet& roots, double epsilon);

/// Residuals of the Jensen identity, the |log| mean identity, the (damped)
/// power-sum identity and bound for each k, and the smoothed-sum bound with
/// its majorant chain on the Schur-reduced polynomial.
std::vector<CertificateItem> check_identities(const Polynomial& p, const RootSet& roots, const std::vector<int>& k_range,
                                              const QuadOptions& options = {});

/// Parseval lower bound, the (N+1) Cauchy–Schwarz upper bound, h ≤ log H
/// and H ≥ 1. The N-constant variant of the upper bound is recorded as a
/// non-gating item.
std::vector<CertificateItem> check_coefficient_bounds(const Polynomial& p, const RootSet& roots,
                                                      const QuadOptions& options = {});

struct DeltaSchedule {
  double delta = 0.0;
  bool clamped = false;
  bool flat = false;             ///< h = 0
  double smoothing_term = 0.0;   ///< 16h/(πδ)
  double widening_term = 0.0;    ///< Nδ/π
  double total() const { return smoothing_term + widening_term; }
};

/// δ = 4√(h/N), clamped into [1e-6, π − 1e-6].
DeltaSchedule delta_schedule(double h, int n);

/// The two terms 16h/(πδ) and Nδ/π at an arbitrary δ.
DeltaSchedule proof_terms(double h, int n, double delta);

/// Smoothed-sum checks for one arc of a unit-root angle set Q with h = h(Q):
/// |Σ g(θ_j) − N ĝ(0)| ≤ 4 G h, grid max |G| ≤ 4/(πδ), and the one-sided chain
/// N(I) − N|I|/2π ≤ Σg − N|I|/2π ≤ 16h/(πδ) + Nδ/π. δ defaults to the schedule.
std::vector<CertificateItem> check_smoothing(const UnitAngleSet& q, double h_q, const Arc& arc,
                                             const std::string& label, std::optional<double> delta = std::nullopt);

struct CertifyOptions {
  QuadOptions quad;
  std::vector<int> k_range{1, 2, 3};
  bool identities = true;
  bool smoothing = true;
};

/// Runs every check in a fixed order. P must have a nonzero constant term.
CertificateReport certify_all(const Polynomial& p, const RootSet& roots, const CertifyOptions& options = {});

}  // namespace zerodist

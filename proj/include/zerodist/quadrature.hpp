#pragma once

#include <functional>
#include <span>
#include <vector>

#include "zerodist/polynomial.hpp"
#include "zerodist/rootfind.hpp"

namespace zerodist {

template <typename T>
struct QuadResult {
  T value{};
  double error_estimate = 0.0;
  int panels_used = 0;
  bool converged = true;
};

struct QuadOptions {
  double tol = 1e-9;
  int panel_budget = 50000;
  /// Uniform panels laid down before adaptive refinement starts.
  int min_panels = 16;
};

using PeriodicIntegrand = std::function<Complex(double)>;

/// ∫₀^{2π} f(θ) dθ for a 2π-periodic f by globally adaptive 7/15-point
/// Gauss–Kronrod. Panels never straddle a breakpoint. Each singular point is
/// also a breakpoint; its neighbourhood is graded geometrically and the panels
/// touching it use a u⁴ substitution that absorbs an integrable log singularity.
QuadResult<Complex> integrate_periodic(const PeriodicIntegrand& f, std::span<const double> breakpoints,
                                       std::span<const double> singular_points,
                                       const QuadOptions& options = {});

QuadResult<Complex> integrate_periodic(const PeriodicIntegrand& f, std::span<const double> breakpoints,
                                       double tol = 1e-9);

/// log|P(e^{iθ})| for a polynomial with known roots. Horner is used where its
/// value is well above its own rounding-error bound; close to the zeros the
/// factored form |a_N| ∏ |e^{iθ} − α_j|^{m_j} takes over.
class CircleLogModulus {
 public:
  CircleLogModulus(const Polynomial& p, const RootSet& roots);

  double operator()(double theta) const;
  /// Root angles at which log|P| may be singular or sharply peaked.
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  /// Root angles with modulus within 1e-3 of the circle.
  const std::vector<double>& singular_points() const { return singular_; }
  int degree() const { return poly_.degree(); }

 private:
  double factored(double theta) const;

  Polynomial poly_;
  RootSet roots_;
  double log_lead_;
  double horner_floor_;
  std::vector<double> breakpoints_;
  std::vector<double> singular_;
};

/// (1/2π) ∫ log|P(e^{iθ})| dθ.
QuadResult<double> mean_log_abs(const Polynomial& p, const RootSet& roots, const QuadOptions& options = {});

/// (1/2π) ∫ log⁺(|P(e^{iθ})| / scale) dθ. Crossings of |P| = scale are bracketed
/// on a 16N-point scan, bisected, and used as breakpoints.
QuadResult<double> mean_log_plus(const Polynomial& p, double scale, const RootSet& roots,
                                 const QuadOptions& options = {});

/// (1/2π) ∫ |log(|P(e^{iθ})| / scale)| dθ, integrated directly with the same
/// crossing breakpoints as mean_log_plus.
QuadResult<double> mean_abs_log(const Polynomial& p, double scale, const RootSet& roots,
                                const QuadOptions& options = {});

/// Angles θ at which log|P(e^{iθ})| − log(scale) changes sign.
std::vector<double> level_crossings(const CircleLogModulus& log_mod, double log_scale);

}  // namespace zerodist

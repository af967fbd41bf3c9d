#pragma once

#include "zerodist/polynomial.hpp"
#include "zerodist/quadrature.hpp"
#include "zerodist/rootfind.hpp"

namespace zerodist {

/// h(P) = (1/2π) ∫ log⁺(|P(e^{iθ})| / √|a_0|) dθ on the monic normalization.
/// Throws if a_0 = 0; deflate the zero roots first.
QuadResult<double> h_of(const Polynomial& p, const RootSet& roots, const QuadOptions& options = {});

struct CircleMaximum {
  double value = 0.0;        ///< max |P(e^{iθ})| / √|a_0| found
  double upper_bound = 0.0;  ///< certified upper bound on the true maximum
  double argmax = 0.0;
};

/// H(P) = max_{|z|=1} |P(z)| / √|a_0| on the monic normalization.
///
/// |P(e^{iθ})|² is a trigonometric polynomial of degree N, so on a grid of
/// spacing Δ the true maximum M satisfies M² ≤ g²/(1 − N²Δ²/8) near every
/// grid local maximum g (Bernstein applied to the second derivative). The
/// 64N-point scan is refined with Brent's method around the largest grid
/// maxima until every unrefined candidate is certified to be below the best
/// refined value within 1e-6 relative.
CircleMaximum H_of(const Polynomial& p);

/// log 𝓜(P) = Σ m_j |log ρ_j|. Throws if any ρ_j = 0.
double log_script_M(const RootSet& roots);

/// Mahler measure |a_N| ∏ max(1, ρ_j)^{m_j}.
double mahler(const RootSet& roots, double lead_abs);
double log_mahler(const RootSet& roots, double lead_abs);

/// |2·(1/2π)∫ log(|P|/√|a_0|) dθ − log 𝓜(P)|, the Jensen identity behind
/// 𝓜(P) ≤ exp(2h(P)). error_estimate carries the quadrature error (doubled).
QuadResult<double> theorem1_identity_residual(const Polynomial& p, const RootSet& roots,
                                              const QuadOptions& options = {});

struct MeasureReport {
  double h = 0.0;
  double H = 0.0;
  double H_upper = 0.0;
  double log_script_M = 0.0;
  double log_mahler = 0.0;
  double quadrature_error = 0.0;
  bool converged = true;
};

MeasureReport measure_all(const Polynomial& p, const RootSet& roots, const QuadOptions& options = {});

}  // namespace zerodist

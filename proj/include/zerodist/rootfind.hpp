#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "zerodist/polynomial.hpp"

namespace zerodist {

struct Root {
  double modulus = 0.0;
  double angle = 0.0;  ///< in [0, 2π)
  int multiplicity = 1;

  Complex value() const { return std::polar(modulus, angle); }
};

/// Roots of a polynomial in polar form, with a residual certificate:
/// scaled_residual(P, α) ≤ residual_bound for every listed root α.
struct RootSet {
  std::vector<Root> entries;
  double residual_bound = 0.0;

  int degree() const;
  std::vector<Complex> values() const;  ///< expanded by multiplicity
};

/// Thrown when the iteration cap is reached with roots still moving.
class RootFindError : public std::runtime_error {
 public:
  RootFindError(const std::string& what, std::vector<Complex> best, double residual)
      : std::runtime_error(what), best_iterate(std::move(best)), best_residual(residual) {}

  std::vector<Complex> best_iterate;
  double best_residual;
};

struct RootFindOptions {
  double tol = 1e-13;
  int max_sweeps = 500;
  /// Roots closer than this are always merged into one entry.
  double merge_radius = 1e-6;
};

/// All roots of P by Ehrlich–Aberth simultaneous iteration on the monic
/// normalization. Exact zero roots are split off first; numerically multiple
/// roots are merged into single entries with summed multiplicity.
RootSet find_roots(const Polynomial& p, const RootFindOptions& options);
RootSet find_roots(const Polynomial& p, double tol = 1e-13);

/// |P(z)| inside the closed unit disk, |z|^-N |P(z)| outside it. Plain |P(z)|
/// at a root of modulus ρ > 1 carries rounding noise of order ρ^N ε Σ|a_j|.
double scaled_residual(const Polynomial& p, Complex z);

/// max_j scaled_residual(P, α_j) / (1 + Σ|a_j|). Throws if the multiplicities do not add up
/// to deg P.
double verify_roots(const Polynomial& p, const RootSet& roots);

/// |∏ρ_j^{m_j} − |a_0/a_N|| / |a_0/a_N|; zero when a_0 = 0 and a zero root is present.
double root_product_defect(const Polynomial& p, const RootSet& roots);

}  // namespace zerodist

#pragma once

#include <complex>
#include <numbers>
#include <span>
#include <vector>

namespace zerodist {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle into [0, 2π) with a single fmod.
double reduce_angle(double theta);

/// A complex polynomial a_0 + a_1 z + ... + a_N z^N, coefficients stored
/// low to high. High-order zero coefficients are stripped on construction,
/// and the remaining degree must be at least 1.
class Polynomial {
 public:
  explicit Polynomial(std::vector<Complex> coeffs);

  std::span<const Complex> coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Complex leading() const { return coeffs_.back(); }
  Complex constant() const { return coeffs_.front(); }

  /// Σ|a_j|; the scale used by the rounding-error bounds on |z| = 1.
  double abs_coeff_sum() const;
  /// Σ|a_j|², the Parseval mean of |P|² on the circle.
  double abs_coeff_sum_sq() const;

  Complex operator()(Complex z) const;

 private:
  std::vector<Complex> coeffs_;
};

/// P(e^{iθ}) by Horner's rule after reducing θ.
Complex eval_on_circle(const Polynomial& p, double theta);

/// lead · ∏ (z − α_j), expanded.
Polynomial from_roots(std::span<const Complex> roots, Complex lead = 1.0);

struct MonicForm {
  Polynomial monic;
  Complex lead;
};

/// Returns (P / a_N, a_N). The leading coefficient of the result is exactly 1.
MonicForm normalize_monic(const Polynomial& p);

struct ZeroDeflation {
  Polynomial cofactor;
  int order;  ///< multiplicity of the root z = 0
};

/// Factors P = z^v · R with R(0) ≠ 0. Throws if R would be constant.
ZeroDeflation deflate_zero_roots(const Polynomial& p);

/// A closed arc {e^{iθ} : θ ∈ [start, start + length]} on the unit circle.
struct Arc {
  double start = 0.0;
  double length = kTwoPi;

  /// Validates length ∈ (0, 2π] and reduces start.
  static Arc make(double start, double length);
  static Arc full_circle() { return Arc{0.0, kTwoPi}; }

  bool is_full() const { return length >= kTwoPi; }
  bool contains(double theta) const;
};

}  // namespace zerodist

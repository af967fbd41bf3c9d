#pragma once

#include <vector>

#include "zerodist/polynomial.hpp"
#include "zerodist/quadrature.hpp"
#include "zerodist/rootfind.hpp"

namespace zerodist {

/// Distinct sorted angles in [0, 2π) with multiplicities.
struct UnitAngleSet {
  std::vector<double> angles;
  std::vector<int> multiplicities;
  int total = 0;

  /// Sorts, reduces and merges exactly equal angles.
  static UnitAngleSet from_angles(std::vector<double> angles, std::vector<int> multiplicities = {});

  std::size_t size() const { return angles.size(); }
  /// The monic polynomial ∏ (z − e^{iθ_j})^{m_j} and its root set.
  Polynomial polynomial() const;
  RootSet roots() const;
};

/// Schur reduction: keep the angle of each root, drop its modulus.
UnitAngleSet schur_reduce(const RootSet& roots);

/// Multiplicity-weighted number of angles on the closed arc.
int count_in_arc(const UnitAngleSet& a, const Arc& arc);

enum class DiscrepancySide { excess, deficit };

struct Discrepancy {
  double value = 0.0;
  double excess = 0.0;   ///< sup over closed arcs of N(I) − N|I|/2π
  double deficit = 0.0;  ///< sup over open arcs of N|I|/2π − N(I)
  /// Closed arc attaining the excess. Its length may be 0 (a single angle),
  /// in which case the supremum is only approached and `limit` is set.
  Arc witness;
  DiscrepancySide side = DiscrepancySide::excess;
  bool limit = false;
  /// Angles (with multiplicity) lying within 1e-7 of, but not on, a witness
  /// endpoint; the count may be off by this much if roots are that inaccurate.
  int boundary_uncertainty = 0;
};

/// Exact circle discrepancy max(D⁺, D⁻) in O(N) after sorting.
///
/// With c_i the mass strictly before angle i and d_i = c_i + m_i, the closed
/// arc from φ_i to φ_j (either direction of wrap) has deviation
/// (d_j − Nφ_j/2π) − (c_i − Nφ_i/2π), so D⁺ = max U − min V. The open
/// complement has the same deviation with opposite sign, which gives D⁻ from
/// the same two sequences.
Discrepancy discrepancy(const UnitAngleSet& a);

/// O(n²) enumeration of closed and open arcs with endpoints at the angles.
/// Refuses more than 512 points.
double discrepancy_bruteforce(const UnitAngleSet& a);

/// Σ m_j e^{ikθ_j}; k must be nonzero.
Complex power_sum(const UnitAngleSet& a, int k);

/// −(|k|/π) ∫₀^{2π} e^{ikθ} log|P(e^{iθ})| dθ for P with every root on the
/// unit circle (|ρ − 1| ≤ 1e-9). Equals power_sum of the root angles.
QuadResult<Complex> power_sum_integral(const Polynomial& p, const RootSet& roots, int k,
                                       const QuadOptions& options = {});

/// Σ m_j min(ρ_j, 1/ρ_j)^{|k|} e^{ikθ_j}.
Complex damped_power_sum(const RootSet& roots, int k);

/// −(|k|/π) ∫₀^{2π} e^{ikθ} log(|P(e^{iθ})| / √|a_0|) dθ on the monic normalization.
QuadResult<Complex> damped_power_sum_integral(const Polynomial& p, const RootSet& roots, int k,
                                              const QuadOptions& options = {});

/// The triangular kernel K_δ(θ) = (2π/δ²) max(δ − |θ|, 0) on (−π, π].
class SmoothingKernel {
 public:
  explicit SmoothingKernel(double delta);

  double delta() const { return delta_; }
  double value(double theta) const;
  /// K̂_δ(k) = (sin(kδ/2) / (kδ/2))², and 1 at k = 0.
  double fourier(int k) const;
  double peak() const { return kTwoPi / delta_; }

 private:
  double delta_;
};

/// g = 𝓘_δ ∗ K_δ: the indicator of the arc widened by δ on each side,
/// smoothed by K_δ. Stored as its truncated Fourier series.
class SmoothedIndicator {
 public:
  const Arc& arc() const { return arc_; }
  const Arc& widened_arc() const { return widened_; }
  double delta() const { return delta_; }
  bool full_circle() const { return full_; }
  int k_max() const { return static_cast<int>(coeffs_.size()); }

  /// ĝ(k) for |k| ≤ k_max, zero beyond.
  Complex fourier(int k) const;
  double g0() const { return g0_; }
  /// Upper bound for max |G(θ)|, G(θ) = Σ|k| ĝ(k) e^{ikθ}: (2/π²)K_δ(0) = 4/(πδ).
  double Gmax_bound() const { return 4.0 / (kPi * delta_); }

  /// Truncated series values of g and G.
  double value(double theta) const;
  double G(double theta) const;
  /// Values of g and G at the M points 2πn/M, computed exactly for the
  /// truncated series by folding coefficients into M bins.
  std::vector<double> sample_g(int m) const;
  std::vector<double> sample_G(int m) const;

  /// Σ_{|k|>k_max} |ĝ(k)| and Σ_{|k|>k_max} |k ĝ(k)|, from |ĝ(k)| ≤ K̂_δ(k)/(π|k|).
  double g_tail_bound() const { return g_tail_; }
  double G_tail_bound() const { return G_tail_; }

 private:
  friend SmoothedIndicator build_smoothed_indicator(const Arc&, double, int);
  std::vector<double> fold_and_sample(int m, bool weighted) const;

  Arc arc_;
  Arc widened_;
  double delta_ = 0.0;
  bool full_ = false;
  double g0_ = 0.0;
  std::vector<Complex> coeffs_;  // ĝ(1..k_max)
  double g_tail_ = 0.0;
  double G_tail_ = 0.0;
};

/// Truncation target for Σ_{|k|>k_max} |ĝ(k)|.
inline constexpr double kSmoothedTailTarget = 1e-9;

/// Builds g for the arc. The series is cut at the smallest k with
/// Σ_{|k|>k} |ĝ(k)| ≤ 1e-9 (from the K̂_δ decay bound), capped at k_max.
/// Requires 0 < δ < π and k_max ≥ 1.
SmoothedIndicator build_smoothed_indicator(const Arc& arc, double delta, int k_max = 1 << 22);

struct SmoothedSum {
  double value = 0.0;
  double truncation_bound = 0.0;  ///< N · Σ_{|k|>k_max} |ĝ(k)|
};

/// Σ m_j g(θ_j) through the truncated Fourier series, N ĝ(0) + 2 Re Σ_{k≥1} ĝ(k) S_k
/// with S_k the power sums of the angles.
SmoothedSum smoothed_sum(const UnitAngleSet& a, const SmoothedIndicator& g);

struct PartialSum {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// 2/π − (4/π) Σ_{ℓ=1}^{L} cos(2ℓx)/(4ℓ² − 1), the Fourier series of |sin x|.
/// tail_bound = (4/π) Σ_{ℓ>L} 1/(4ℓ² − 1) = 2/(π(2L + 1)).
PartialSum sin_abs_partial(double x, int terms);

/// (1/2π) Σ_k K̂_δ(k) |sin kφ| rewritten through the |sin| series as
/// K_δ(0)/π² − (2/π²) Σ_{ℓ≥1} K_δ(2ℓφ)/(4ℓ² − 1), summed to `terms` terms.
double kernel_sine_average(const SmoothingKernel& kernel, double phi, int terms);

}  // namespace zerodist

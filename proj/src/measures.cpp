#include "zerodist/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/math/tools/minima.hpp>

namespace zerodist {
namespace {

Polynomial checked_monic(const Polynomial& p) {
  Polynomial monic = normalize_monic(p).monic;
  if (monic.constant() == Complex(0.0, 0.0))
    throw std::invalid_argument("constant coefficient is zero; deflate the zero roots before measuring");
  return monic;
}

}  // namespace

QuadResult<double> h_of(const Polynomial& p, const RootSet& roots, const QuadOptions& options) {
  const Polynomial monic = checked_monic(p);
  return mean_log_plus(monic, std::sqrt(std::abs(monic.constant())), roots, options);
}

CircleMaximum H_of(const Polynomial& p) {
  const Polynomial monic = checked_monic(p);
  const double inv_scale = 1.0 / std::sqrt(std::abs(monic.constant()));
  const int n = monic.degree();
  const int m = 64 * n;
  const double spacing = kTwoPi / m;
  const double shrink = 1.0 - static_cast<double>(n) * n * spacing * spacing / 8.0;

  std::vector<double> grid(m);
  for (int i = 0; i < m; ++i) grid[i] = std::norm(eval_on_circle(monic, spacing * i));

  std::vector<bool> covered(m, false);
  double best_sq = 0.0, best_theta = 0.0;
  auto refine = [&](int i) {
    const double a = spacing * (i - 1), b = spacing * (i + 1);
    auto neg = [&](double t) { return -std::norm(eval_on_circle(monic, t)); };
    const auto [t, v] = boost::math::tools::brent_find_minima(neg, a, b, std::numeric_limits<double>::digits / 2);
    double val = -v, at = t;
    if (grid[i] > val) {
      val = grid[i];
      at = spacing * i;
    }
    if (val > best_sq) {
      best_sq = val;
      best_theta = at;
    }
    for (int d = -1; d <= 1; ++d) covered[(i + d + m) % m] = true;
  };

  std::vector<int> local_max;
  for (int i = 0; i < m; ++i) {
    if (grid[i] >= grid[(i + m - 1) % m] && grid[i] >= grid[(i + 1) % m]) local_max.push_back(i);
  }
  std::sort(local_max.begin(), local_max.end(), [&](int l, int r) { return grid[l] > grid[r]; });
  for (std::size_t k = 0; k < local_max.size() && k < 5; ++k) refine(local_max[k]);

  constexpr double kRelTol = 1e-6;
  double bound_sq = best_sq;
  for (;;) {
    int worst = -1;
    for (int i = 0; i < m; ++i) {
      if (!covered[i] && (worst < 0 || grid[i] > grid[worst])) worst = i;
    }
    bound_sq = best_sq;
    if (worst < 0) break;
    const double candidate = grid[worst] / shrink;
    if (candidate <= best_sq * (1.0 + kRelTol) * (1.0 + kRelTol)) {
      bound_sq = std::max(best_sq, candidate);
      break;
    }
    refine(worst);
  }
  return {std::sqrt(best_sq) * inv_scale, std::sqrt(bound_sq) * inv_scale, reduce_angle(best_theta)};
}

double log_script_M(const RootSet& roots) {
  double s = 0.0;
  for (const Root& r : roots.entries) {
    if (r.modulus == 0.0) throw std::invalid_argument("log 𝓜 is undefined with a zero root");
    s += r.multiplicity * std::abs(std::log(r.modulus));
  }
  return s;
}

double log_mahler(const RootSet& roots, double lead_abs) {
  if (!(lead_abs > 0.0)) throw std::invalid_argument("leading coefficient must be nonzero");
  double s = std::log(lead_abs);
  for (const Root& r : roots.entries)
    if (r.modulus > 1.0) s += r.multiplicity * std::log(r.modulus);
  return s;
}

double mahler(const RootSet& roots, double lead_abs) { return std::exp(log_mahler(roots, lead_abs)); }

QuadResult<double> theorem1_identity_residual(const Polynomial& p, const RootSet& roots,
                                              const QuadOptions& options) {
  const Polynomial monic = checked_monic(p);
  QuadResult<double> mean = mean_log_abs(monic, roots, options);
  const double lhs = 2.0 * (mean.value - 0.5 * std::log(std::abs(monic.constant())));
  mean.value = std::abs(lhs - log_script_M(roots));
  mean.error_estimate *= 2.0;
  return mean;
}

MeasureReport measure_all(const Polynomial& p, const RootSet& roots, const QuadOptions& options) {
  MeasureReport r;
  const QuadResult<double> h = h_of(p, roots, options);
  const CircleMaximum H = H_of(p);
  r.h = h.value;
  r.quadrature_error = h.error_estimate;
  r.converged = h.converged;
  r.H = H.value;
  r.H_upper = H.upper_bound;
  r.log_script_M = log_script_M(roots);
  r.log_mahler = log_mahler(roots, std::abs(p.leading()));
  return r;
}

}  // namespace zerodist

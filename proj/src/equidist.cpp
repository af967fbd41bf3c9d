#include "zerodist/equidist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace zerodist {

UnitAngleSet UnitAngleSet::from_angles(std::vector<double> angles, std::vector<int> multiplicities) {
  if (multiplicities.empty()) multiplicities.assign(angles.size(), 1);
  if (multiplicities.size() != angles.size())
    throw std::invalid_argument("angles and multiplicities differ in length");
  std::vector<std::pair<double, int>> items;
  items.reserve(angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i) {
    if (multiplicities[i] < 1) throw std::invalid_argument("multiplicities must be positive");
    items.emplace_back(reduce_angle(angles[i]), multiplicities[i]);
  }
  std::sort(items.begin(), items.end());
  UnitAngleSet out;
  for (const auto& [theta, m] : items) {
    if (!out.angles.empty() && out.angles.back() == theta) {
      out.multiplicities.back() += m;
    } else {
      out.angles.push_back(theta);
      out.multiplicities.push_back(m);
    }
    out.total += m;
  }
  return out;
}

Polynomial UnitAngleSet::polynomial() const {
  std::vector<Complex> r;
  r.reserve(total);
  for (std::size_t i = 0; i < angles.size(); ++i)
    for (int k = 0; k < multiplicities[i]; ++k) r.push_back(std::polar(1.0, angles[i]));
  return from_roots(r);
}

RootSet UnitAngleSet::roots() const {
  RootSet out;
  for (std::size_t i = 0; i < angles.size(); ++i) out.entries.push_back({1.0, angles[i], multiplicities[i]});
  return out;
}

UnitAngleSet schur_reduce(const RootSet& roots) {
  std::vector<double> angles;
  std::vector<int> mult;
  for (const Root& r : roots.entries) {
    if (r.modulus == 0.0) throw std::invalid_argument("zero root has no angle; deflate it first");
    angles.push_back(r.angle);
    mult.push_back(r.multiplicity);
  }
  return UnitAngleSet::from_angles(std::move(angles), std::move(mult));
}

int count_in_arc(const UnitAngleSet& a, const Arc& arc) {
  if (arc.is_full()) return a.total;
  int count = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (arc.contains(a.angles[i])) count += a.multiplicities[i];
  return count;
}

Discrepancy discrepancy(const UnitAngleSet& a) {
  if (a.total < 1) throw std::invalid_argument("discrepancy needs at least one angle");
  const double n = a.total;
  const std::size_t size = a.size();
  // U_j = d_j − Nφ_j/2π (mass through j), V_i = c_i − Nφ_i/2π (mass before i).
  double best_u = -INFINITY, best_v = INFINITY;
  std::size_t arg_u = 0, arg_v = 0;
  int before = 0;
  for (std::size_t i = 0; i < size; ++i) {
    const double expected = n * a.angles[i] / kTwoPi;
    const double u = (before + a.multiplicities[i]) - expected;
    const double v = before - expected;
    if (u > best_u) {
      best_u = u;
      arg_u = i;
    }
    if (v < best_v) {
      best_v = v;
      arg_v = i;
    }
    before += a.multiplicities[i];
  }

  Discrepancy d;
  // Closed arc [φ_i, φ_j] scores U_j − V_i; open arc (φ_i, φ_j) scores U_i − V_j.
  // Both maxima are max U − min V, attained by complementary arcs.
  d.excess = best_u - best_v;
  d.deficit = best_u - best_v;
  d.value = std::max(d.excess, d.deficit);
  d.side = d.excess >= d.deficit ? DiscrepancySide::excess : DiscrepancySide::deficit;
  d.witness.start = a.angles[arg_v];
  d.witness.length = arg_u == arg_v ? 0.0 : reduce_angle(a.angles[arg_u] - a.angles[arg_v]);
  d.limit = arg_u == arg_v;

  constexpr double kNear = 1e-7;
  const double ends[2] = {a.angles[arg_v], a.angles[arg_u]};
  for (std::size_t i = 0; i < size; ++i) {
    if (i == arg_u || i == arg_v) continue;
    for (double e : ends) {
      const double gap = std::abs(a.angles[i] - e);
      if (std::min(gap, kTwoPi - gap) <= kNear) {
        d.boundary_uncertainty += a.multiplicities[i];
        break;
      }
    }
  }
  return d;
}

double discrepancy_bruteforce(const UnitAngleSet& a) {
  const std::size_t size = a.size();
  if (a.total > 512) throw std::invalid_argument("brute-force discrepancy is limited to 512 points");
  if (size == 0) throw std::invalid_argument("discrepancy needs at least one angle");
  const double n = a.total;
  double best = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    int closed = 0;
    for (std::size_t step = 0; step < size; ++step) {
      const std::size_t j = (i + step) % size;
      closed += a.multiplicities[j];
      const double len = step == 0 ? 0.0 : reduce_angle(a.angles[j] - a.angles[i]);
      best = std::max(best, closed - n * len / kTwoPi);
      // Open arc (φ_i, φ_j); for j = i it is the circle minus one point.
      const int open = step == 0 ? a.total - a.multiplicities[i] : closed - a.multiplicities[i] - a.multiplicities[j];
      const double open_len = step == 0 ? kTwoPi : len;
      best = std::max(best, n * open_len / kTwoPi - open);
    }
  }
  return best;
}

Complex power_sum(const UnitAngleSet& a, int k) {
  if (k == 0) throw std::invalid_argument("power sums are taken for k ≠ 0");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<double>(a.multiplicities[i]) * std::polar(1.0, k * a.angles[i]);
  return s;
}

namespace {

QuadResult<Complex> weighted_log_integral(const Polynomial& monic, const RootSet& roots, int k, double shift,
                                          QuadOptions options) {
  const CircleLogModulus log_mod(monic, roots);
  options.min_panels = std::max(options.min_panels, 2 * (monic.degree() + std::abs(k)));
  auto f = [&](double t) { return std::polar(1.0, k * reduce_angle(t)) * (log_mod(t) - shift); };
  QuadResult<Complex> r = integrate_periodic(f, log_mod.breakpoints(), log_mod.singular_points(), options);
  const double factor = -std::abs(k) / kPi;
  r.value *= factor;
  r.error_estimate *= std::abs(factor);
  return r;
}

}  // namespace

QuadResult<Complex> power_sum_integral(const Polynomial& p, const RootSet& roots, int k, const QuadOptions& options) {
  if (k == 0) throw std::invalid_argument("power sums are taken for k ≠ 0");
  for (const Root& r : roots.entries) {
    if (std::abs(r.modulus - 1.0) > 1e-9)
      throw std::invalid_argument("roots off the unit circle; use damped_power_sum_integral");
  }
  return weighted_log_integral(normalize_monic(p).monic, roots, k, 0.0, options);
}

Complex damped_power_sum(const RootSet& roots, int k) {
  if (k == 0) throw std::invalid_argument("power sums are taken for k ≠ 0");
  Complex s = 0.0;
  for (const Root& r : roots.entries) {
    if (r.modulus == 0.0) throw std::invalid_argument("zero root; deflate it first");
    const double damp = std::pow(std::min(r.modulus, 1.0 / r.modulus), std::abs(k));
    s += static_cast<double>(r.multiplicity) * damp * std::polar(1.0, k * r.angle);
  }
  return s;
}

QuadResult<Complex> damped_power_sum_integral(const Polynomial& p, const RootSet& roots, int k,
                                              const QuadOptions& options) {
  if (k == 0) throw std::invalid_argument("power sums are taken for k ≠ 0");
  const Polynomial monic = normalize_monic(p).monic;
  if (monic.constant() == Complex(0.0, 0.0))
    throw std::invalid_argument("constant coefficient is zero; deflate the zero roots first");
  return weighted_log_integral(monic, roots, k, 0.5 * std::log(std::abs(monic.constant())), options);
}

SmoothingKernel::SmoothingKernel(double delta) : delta_(delta) {
  if (!(delta > 0.0 && delta < kPi)) throw std::invalid_argument("kernel width must lie in (0, π)");
}

double SmoothingKernel::value(double theta) const {
  double t = reduce_angle(theta);
  if (t > kPi) t -= kTwoPi;
  return kTwoPi / (delta_ * delta_) * std::max(delta_ - std::abs(t), 0.0);
}

double SmoothingKernel::fourier(int k) const {
  if (k == 0) return 1.0;
  const double x = 0.5 * k * delta_;
  const double s = std::sin(x) / x;
  return s * s;
}

Complex SmoothedIndicator::fourier(int k) const {
  if (k == 0) return g0_;
  const int ak = std::abs(k);
  if (ak > k_max()) return 0.0;
  const Complex c = coeffs_[ak - 1];
  return k > 0 ? c : std::conj(c);
}

double SmoothedIndicator::value(double theta) const {
  const Complex w = std::polar(1.0, reduce_angle(theta));
  Complex z = 1.0, acc = 0.0;
  for (int k = 1; k <= k_max(); ++k) {
    z = (k % 256 == 0) ? std::polar(1.0, k * reduce_angle(theta)) : z * w;
    acc += coeffs_[k - 1] * z;
  }
  return g0_ + 2.0 * acc.real();
}

double SmoothedIndicator::G(double theta) const {
  const Complex w = std::polar(1.0, reduce_angle(theta));
  Complex z = 1.0, acc = 0.0;
  for (int k = 1; k <= k_max(); ++k) {
    z = (k % 256 == 0) ? std::polar(1.0, k * reduce_angle(theta)) : z * w;
    acc += static_cast<double>(k) * coeffs_[k - 1] * z;
  }
  return 2.0 * acc.real();
}

std::vector<double> SmoothedIndicator::fold_and_sample(int m, bool weighted) const {
  if (m < 1) throw std::invalid_argument("sample count must be positive");
  std::vector<Complex> bins(m, 0.0);
  if (!weighted) bins[0] += g0_;
  for (int k = 1; k <= k_max(); ++k) {
    const Complex c = weighted ? static_cast<double>(k) * coeffs_[k - 1] : coeffs_[k - 1];
    bins[k % m] += c;
    bins[(m - k % m) % m] += std::conj(c);
  }
  std::vector<Complex> twiddle(m);
  for (int r = 0; r < m; ++r) twiddle[r] = std::polar(1.0, kTwoPi * r / m);
  std::vector<double> out(m);
  for (int n = 0; n < m; ++n) {
    Complex acc = 0.0;
    std::size_t idx = 0;
    for (int r = 0; r < m; ++r) {
      acc += bins[r] * twiddle[idx];
      idx += n;
      if (idx >= static_cast<std::size_t>(m)) idx -= m;
    }
    out[n] = acc.real();
  }
  return out;
}

std::vector<double> SmoothedIndicator::sample_g(int m) const { return fold_and_sample(m, false); }
std::vector<double> SmoothedIndicator::sample_G(int m) const { return fold_and_sample(m, true); }

SmoothedIndicator build_smoothed_indicator(const Arc& arc, double delta, int k_max) {
  if (!(delta > 0.0 && delta < kPi)) throw std::invalid_argument("δ must lie in (0, π)");
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  SmoothedIndicator g;
  g.arc_ = arc;
  g.delta_ = delta;
  const double widened = arc.length + 2.0 * delta;
  if (widened >= kTwoPi) {
    g.full_ = true;
    g.widened_ = Arc::full_circle();
    g.g0_ = 1.0;
    return g;
  }
  g.widened_ = Arc::make(arc.start - delta, widened);
  g.g0_ = widened / kTwoPi;

  // Σ_{|k|>K} |ĝ(k)| ≤ 2 Σ_{k>K} 4/(πδ²k³) ≤ 4/(πδ²K²).
  const double needed = std::ceil(2.0 / (delta * std::sqrt(kPi * kSmoothedTailTarget)));
  const int terms = static_cast<int>(std::min<double>(needed, k_max));
  g.g_tail_ = 4.0 / (kPi * delta * delta * terms * static_cast<double>(terms));
  g.G_tail_ = 8.0 / (kPi * delta * delta * terms);

  const SmoothingKernel kernel(delta);
  const double alpha = g.widened_.start;
  const double beta = alpha + widened;
  g.coeffs_.resize(terms);
  const Complex wa = std::polar(1.0, -alpha), wb = std::polar(1.0, -beta);
  Complex za = 1.0, zb = 1.0;
  for (int k = 1; k <= terms; ++k) {
    if (k % 256 == 0) {
      za = std::polar(1.0, -k * alpha);
      zb = std::polar(1.0, -k * beta);
    } else {
      za *= wa;
      zb *= wb;
    }
    const Complex indicator = (za - zb) / Complex(0.0, kTwoPi * k);
    g.coeffs_[k - 1] = indicator * kernel.fourier(k);
  }
  return g;
}

SmoothedSum smoothed_sum(const UnitAngleSet& a, const SmoothedIndicator& g) {
  SmoothedSum out;
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double theta = a.angles[i];
    const Complex w = std::polar(1.0, theta);
    Complex z = 1.0, s = 0.0;
    for (int k = 1; k <= g.k_max(); ++k) {
      z = (k % 256 == 0) ? std::polar(1.0, k * theta) : z * w;
      s += g.fourier(k) * z;
    }
    acc += a.multiplicities[i] * (g.g0() + 2.0 * s.real());
  }
  out.value = acc;
  out.truncation_bound = a.total * g.g_tail_bound();
  return out;
}

PartialSum sin_abs_partial(double x, int terms) {
  if (terms < 1) throw std::invalid_argument("need at least one term");
  double s = 0.0;
  for (int l = terms; l >= 1; --l) s += std::cos(2.0 * l * x) / (4.0 * l * l - 1.0);
  return {2.0 / kPi - 4.0 / kPi * s, 2.0 / (kPi * (2.0 * terms + 1.0))};
}

double kernel_sine_average(const SmoothingKernel& kernel, double phi, int terms) {
  double s = 0.0;
  for (int l = terms; l >= 1; --l) s += kernel.value(2.0 * l * phi) / (4.0 * l * l - 1.0);
  return kernel.peak() / (kPi * kPi) - 2.0 / (kPi * kPi) * s;
}

}  // namespace zerodist

#pragma once

// Independent reference implementations used as test oracles, and a small
// seeded property-test driver.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "zerodist/polynomial.hpp"

namespace oracle {

inline constexpr double pi = 3.14159265358979323846;

// ζ(2n) for n ≥ 1 by direct summation with an integral tail correction.
inline double zeta_even(int n) {
  const int s = 2 * n;
  constexpr int terms = 2000;
  double sum = 0.0;
  for (int k = terms; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  // Euler–Maclaurin: Σ_{k>K} k^{-s} ≈ K^{1−s}/(s−1) − K^{-s}/2 + s K^{−s−1}/12
  const double k = terms;
  return sum + std::pow(k, 1.0 - s) / (s - 1) - 0.5 * std::pow(k, -s) + s * std::pow(k, -s - 1.0) / 12.0;
}

inline const std::vector<double>& zeta_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(61, 0.0);
    for (int n = 1; n <= 60; ++n) t[n] = zeta_even(n);
    return t;
  }();
  return table;
}

// Clausen function Cl₂(θ) = Σ sin(kθ)/k², from the power series
// Cl₂(θ) = θ − θ log|θ| + Σ_{n≥1} ζ(2n)/(n(2n+1)) · θ^{2n+1}/(2π)^{2n} on |θ| ≤ π.
inline double clausen2(double theta) {
  theta = std::remainder(theta, 2.0 * pi);
  if (theta == 0.0) return 0.0;
  const double r = theta / (2.0 * pi);
  double sum = theta - theta * std::log(std::abs(theta));
  double power = theta;
  for (int n = 1; n <= 60; ++n) {
    power *= r * r;
    sum += zeta_table()[n] / (n * (2.0 * n + 1.0)) * power;
  }
  return sum;
}

// h(z − 1) = h(z^N − 1) = (1/2π)∫_{π/3}^{5π/3} log(2 sin(θ/2)) dθ = Cl₂(π/3)/π.
inline double h_roots_of_unity() { return clausen2(pi / 3.0) / pi; }

// Jensen: (1/2π)∫ log|P| = log|a_N| + Σ log⁺|α_j|.
inline double jensen_mean(const std::vector<std::complex<double>>& roots, double lead_abs) {
  double s = std::log(lead_abs);
  for (const auto& a : roots) s += std::max(0.0, std::log(std::abs(a)));
  return s;
}

// Σ sin(kx)(1 − cos kδ)/k² through Clausen values, times 2/δ²: Σ_k≥1 K̂(k) sin(kx).
inline double kernel_sine_series(double x, double delta) {
  return 2.0 / (delta * delta) * (clausen2(x) - 0.5 * (clausen2(x + delta) + clausen2(x - delta)));
}

// G(θ) = Σ_k |k| ĝ(k) e^{ikθ} for g = indicator of [α, β] smoothed by K_δ.
inline double smoothed_G(double theta, double alpha, double beta, double delta) {
  return (kernel_sine_series(theta - alpha, delta) - kernel_sine_series(theta - beta, delta)) / pi;
}

// g(θ) = (1/2π)∫ 1_{[α,β]}(θ − t) K_δ(t) dt by Gauss–Kronrod on the pieces
// where the integrand is a polynomial.
inline double smoothed_g(double theta, double alpha, double beta, double delta) {
  auto inside = [&](double x) {
    const double u = std::fmod(std::fmod(x - alpha, 2.0 * pi) + 2.0 * pi, 2.0 * pi);
    return u <= beta - alpha;
  };
  std::vector<double> cuts{-delta, 0.0, delta};
  for (int m = -2; m <= 2; ++m) {
    for (double e : {alpha, beta}) {
      const double t = theta - e + 2.0 * pi * m;
      if (t > -delta && t < delta) cuts.push_back(t);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (b - a <= 0.0 || !inside(theta - 0.5 * (a + b))) continue;
    auto kernel = [&](double t) { return 2.0 * pi / (delta * delta) * std::max(delta - std::abs(t), 0.0); };
    total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(kernel, a, b, 0);
  }
  return total / (2.0 * pi);
}

// Rabinowitz–Wagon spigot for the first n decimal digits of π.
inline std::string pi_spigot(int n) {
  const int len = 10 * n / 3 + 2;
  std::vector<long long> a(len, 2);
  std::string out;
  int nines = 0;
  int predigit = 0;
  bool first = true;
  for (int j = 0; j < n + 1; ++j) {
    long long q = 0;
    for (int i = len; i > 0; --i) {
      const long long x = 10 * a[i - 1] + q * i;
      a[i - 1] = x % (2 * i - 1);
      q = x / (2 * i - 1);
    }
    a[0] = q % 10;
    q /= 10;
    if (q == 9) {
      ++nines;
    } else if (q == 10) {
      out += static_cast<char>('0' + predigit + 1);
      out.append(nines, '0');
      predigit = 0;
      nines = 0;
    } else {
      if (!first) out += static_cast<char>('0' + predigit);
      first = false;
      predigit = static_cast<int>(q);
      out.append(nines, '9');
      nines = 0;
    }
  }
  out += static_cast<char>('0' + predigit);
  return out.substr(0, n);
}

// Exact C(2N, N) as a double for N ≤ 30 via integer arithmetic.
inline double central_binomial(int n) {
  unsigned long long c = 1;
  for (int k = 1; k <= n; ++k) c = c * (n + k) / k;
  return static_cast<double>(c);
}

// Brute-force discrepancy over all arcs between a fine set of candidate
// endpoints, counting by a direct scan.
inline double discrepancy_scan(const std::vector<double>& angles) {
  const int n = static_cast<int>(angles.size());
  double best = 0.0;
  auto count_closed = [&](double a, double len) {
    int c = 0;
    for (double t : angles) {
      const double u = std::fmod(std::fmod(t - a, 2.0 * pi) + 2.0 * pi, 2.0 * pi);
      if (u <= len) ++c;
    }
    return c;
  };
  for (double a : angles) {
    for (double b : angles) {
      const double len = std::fmod(std::fmod(b - a, 2.0 * pi) + 2.0 * pi, 2.0 * pi);
      best = std::max(best, count_closed(a, len) - n * len / (2.0 * pi));
      // open arc (a, b); with a = b it is the circle minus one point
      const double open_len = len == 0.0 ? 2.0 * pi : len;
      int open = 0;
      for (double t : angles) {
        const double u = std::fmod(std::fmod(t - a, 2.0 * pi) + 2.0 * pi, 2.0 * pi);
        if (u > 0.0 && u < open_len) ++open;
      }
      best = std::max(best, n * open_len / (2.0 * pi) - open);
    }
  }
  return best;
}

}  // namespace oracle

namespace prop {

// Runs `cases` instances of a property, each with its own engine seeded from
// (seed, case index) so a failure can be replayed in isolation.
inline void for_all(std::uint64_t seed, int cases, const std::function<void(std::mt19937_64&, int)>& body) {
  for (int i = 0; i < cases; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    body(rng, i);
  }
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Roots with moduli log-uniform in [lo, hi] and uniform angles.
inline std::vector<std::complex<double>> random_roots(std::mt19937_64& rng, int n, double lo, double hi) {
  std::vector<std::complex<double>> r;
  for (int i = 0; i < n; ++i)
    r.push_back(std::polar(std::exp(uniform(rng, std::log(lo), std::log(hi))), uniform(rng, 0.0, 2.0 * oracle::pi)));
  return r;
}

inline std::vector<double> random_angles(std::mt19937_64& rng, int n) {
  std::vector<double> a;
  for (int i = 0; i < n; ++i) a.push_back(uniform(rng, 0.0, 2.0 * oracle::pi));
  return a;
}

// n angles, each jittered by up to 30% of the spacing 2π/n around an equispaced
// grid with random rotation, so no two are closer than 0.4·2π/n. Uniform random
// angles form clusters whose expanded polynomial is too ill-conditioned in
// double precision to hold its roots on the circle.
inline std::vector<double> separated_angles(std::mt19937_64& rng, int n) {
  const double step = 2.0 * oracle::pi / n;
  const double rot = uniform(rng, 0.0, 2.0 * oracle::pi);
  std::vector<double> a;
  for (int i = 0; i < n; ++i) a.push_back(std::fmod(rot + step * (i + uniform(rng, -0.3, 0.3)), 2.0 * oracle::pi));
  return a;
}

}  // namespace prop

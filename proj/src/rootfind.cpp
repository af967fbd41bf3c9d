#include "zerodist/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace zerodist {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Eval {
  Complex newton;      // P/P'
  double residual;     // |P(z)| (scaled by |z|^-n when |z| > 1)
  double noise_floor;  // rounding-error scale of the residual
  bool exact_zero;
};

// P/P' and the residual, evaluating the reversed polynomial outside the unit
// disk so Horner stays well scaled.
Eval evaluate(std::span<const Complex> c, Complex z) {
  const int n = static_cast<int>(c.size()) - 1;
  Eval e{};
  if (std::abs(z) <= 1.0) {
    Complex p = c[n], dp = 0.0;
    double scale = std::abs(c[n]);
    const double az = std::abs(z);
    for (int j = n - 1; j >= 0; --j) {
      dp = dp * z + p;
      p = p * z + c[j];
      scale = scale * az + std::abs(c[j]);
    }
    e.residual = std::abs(p);
    e.noise_floor = scale * kEps;
    e.exact_zero = p == Complex(0.0, 0.0);
    e.newton = e.exact_zero ? Complex(0.0, 0.0) : p / dp;
  } else {
    const Complex w = 1.0 / z;
    const double aw = std::abs(w);
    Complex r = c[0], dr = 0.0;
    double scale = std::abs(c[0]);
    for (int j = 1; j <= n; ++j) {
      dr = dr * w + r;
      r = r * w + c[j];
      scale = scale * aw + std::abs(c[j]);
    }
    e.residual = std::abs(r);
    e.noise_floor = scale * kEps;
    e.exact_zero = r == Complex(0.0, 0.0);
    e.newton = e.exact_zero ? Complex(0.0, 0.0) : z / (static_cast<double>(n) - w * dr / r);
  }
  return e;
}

// Starting points on the circles of the Newton polygon of |c_j|.
std::vector<Complex> initial_guesses(std::span<const Complex> c) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<int> idx;
  std::vector<double> lg;
  for (int j = 0; j <= n; ++j) {
    if (c[j] != Complex(0.0, 0.0)) {
      idx.push_back(j);
      lg.push_back(std::log(std::abs(c[j])));
    }
  }
  // Upper convex hull of (j, log|c_j|).
  std::vector<int> hull;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    while (hull.size() >= 2) {
      const int a = hull[hull.size() - 2], b = hull.back();
      const double cross = (idx[b] - idx[a]) * (lg[k] - lg[a]) - (lg[b] - lg[a]) * (idx[k] - idx[a]);
      if (cross >= 0.0) hull.pop_back();
      else break;
    }
    hull.push_back(static_cast<int>(k));
  }
  std::vector<Complex> z;
  z.reserve(n);
  constexpr double kOffset = 0.7;
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const int lo = idx[hull[h]], hi = idx[hull[h + 1]];
    const int count = hi - lo;
    const double radius = std::exp((lg[hull[h]] - lg[hull[h + 1]]) / count);
    for (int i = 0; i < count; ++i) {
      const double angle = kTwoPi * i / count + kTwoPi * static_cast<double>(h) / n + kOffset;
      z.push_back(std::polar(radius, angle));
    }
  }
  return z;
}

// Taylor coefficients b_0..b_m of P at x (P(x + t) = Σ b_j t^j), together with
// the matching coefficients of Σ|c_j| z^j at |x|, which bound their rounding error.
void taylor_at(std::span<const Complex> c, Complex x, int m, std::vector<Complex>& b,
               std::vector<double>& scale) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<Complex> work(c.begin(), c.end());
  std::vector<double> awork(c.size());
  for (int j = 0; j <= n; ++j) awork[j] = std::abs(c[j]);
  const double ax = std::abs(x);
  b.assign(m + 1, 0.0);
  scale.assign(m + 1, 0.0);
  for (int j = 0; j <= m && j <= n; ++j) {
    for (int i = n - 1; i >= j; --i) {
      work[i] += x * work[i + 1];
      awork[i] += ax * awork[i + 1];
    }
    b[j] = work[j];
    scale[j] = awork[j];
  }
}

struct Cluster {
  Complex center;
  int multiplicity;
};

// Single-linkage components of the cluster centers at the given radius.
std::vector<std::vector<int>> components(const std::vector<Cluster>& cl, double radius) {
  const int n = static_cast<int>(cl.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(cl[i].center - cl[j].center) <= radius) parent[find(i)] = find(j);
  std::vector<std::vector<int>> groups(n);
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::erase_if(groups, [](const auto& g) { return g.empty(); });
  return groups;
}

Cluster weighted_center(const std::vector<Cluster>& cl, const std::vector<int>& group) {
  Complex sum = 0.0;
  int m = 0;
  for (int i : group) {
    sum += static_cast<double>(cl[i].multiplicity) * cl[i].center;
    m += cl[i].multiplicity;
  }
  return {sum / static_cast<double>(m), m};
}

// Newton on P^{(m-1)}, whose root at the center is simple, staying within
// radius of the starting point.
Complex refine_center(std::span<const Complex> c, const Cluster& candidate, double radius) {
  const int m = candidate.multiplicity;
  std::vector<Complex> b;
  std::vector<double> scale;
  Complex x = candidate.center;
  double last_step = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 30; ++it) {
    taylor_at(c, x, m, b, scale);
    if (b[m] == Complex(0.0, 0.0)) break;
    const Complex step = b[m - 1] / (static_cast<double>(m) * b[m]);
    const double as = std::abs(step);
    if (!(as < last_step) || std::abs(x - step - candidate.center) > radius) break;
    x -= step;
    last_step = as;
    if (as <= kEps * (1.0 + std::abs(x))) break;
  }
  return x;
}

// Accepts a group as a single root of multiplicity m when, at the refined
// center, the Taylor coefficients b_0..b_{m-1} all vanish to rounding level.
bool accept_multiple_root(std::span<const Complex> c, Cluster& candidate, double radius) {
  const int n = static_cast<int>(c.size()) - 1;
  const int m = candidate.multiplicity;
  const Complex x = refine_center(c, candidate, radius);
  std::vector<Complex> b;
  std::vector<double> scale;
  taylor_at(c, x, m, b, scale);
  const double allowance = 8.0 * n * kEps;
  for (int j = 0; j < m; ++j)
    if (std::abs(b[j]) > allowance * scale[j]) return false;
  candidate.center = x;
  return true;
}

std::vector<Cluster> group_roots(std::span<const Complex> c, const std::vector<Complex>& z,
                                 double merge_radius) {
  std::vector<Cluster> cl;
  cl.reserve(z.size());
  for (const Complex& v : z) cl.push_back({v, 1});

  auto merge_pass = [&](double radius, bool require_test) {
    std::vector<Cluster> next;
    for (const auto& group : components(cl, radius)) {
      if (group.size() == 1) {
        next.push_back(cl[group[0]]);
        continue;
      }
      Cluster merged = weighted_center(cl, group);
      if (!require_test) {
        merged.center = refine_center(c, merged, radius);
        next.push_back(merged);
      } else if (accept_multiple_root(c, merged, radius)) {
        next.push_back(merged);
      } else {
        for (int i : group) next.push_back(cl[i]);
      }
    }
    cl = std::move(next);
  };

  merge_pass(merge_radius, false);
  for (double radius : {1e-5, 1e-4, 1e-3, 1e-2, 3e-2, 1e-1, 3e-1}) {
    if (radius <= merge_radius) continue;
    merge_pass(radius, true);
  }
  return cl;
}

}  // namespace

int RootSet::degree() const {
  int n = 0;
  for (const Root& r : entries) n += r.multiplicity;
  return n;
}

std::vector<Complex> RootSet::values() const {
  std::vector<Complex> out;
  for (const Root& r : entries)
    for (int i = 0; i < r.multiplicity; ++i) out.push_back(r.value());
  return out;
}

RootSet find_roots(const Polynomial& p, double tol) {
  RootFindOptions options;
  options.tol = tol;
  return find_roots(p, options);
}

RootSet find_roots(const Polynomial& p, const RootFindOptions& options) {
  RootSet out;
  int zero_order = 0;
  std::vector<Complex> c;
  {
    const MonicForm normalized = normalize_monic(p);
    const auto all = normalized.monic.coeffs();
    while (all[zero_order] == Complex(0.0, 0.0)) ++zero_order;
    c.assign(all.begin() + zero_order, all.end());
  }
  if (zero_order > 0) out.entries.push_back({0.0, 0.0, zero_order});

  const int n = static_cast<int>(c.size()) - 1;
  std::vector<Complex> z;
  if (n == 1) {
    z.push_back(-c[0]);
  } else if (n > 1) {
    z = initial_guesses(c);
    std::vector<bool> done(n, false);
    std::vector<double> residual(n), floor(n);
    int remaining = n;
    for (int sweep = 0; sweep < options.max_sweeps && remaining > 0; ++sweep) {
      for (int i = 0; i < n; ++i) {
        if (done[i]) continue;
        const Eval e = evaluate(c, z[i]);
        residual[i] = e.residual;
        floor[i] = e.noise_floor;
        if (e.exact_zero) {
          done[i] = true;
          --remaining;
          continue;
        }
        Complex s = 0.0;
        for (int j = 0; j < n; ++j)
          if (j != i) s += 1.0 / (z[i] - z[j]);
        const Complex denom = 1.0 - e.newton * s;
        const Complex step = denom == Complex(0.0, 0.0) ? e.newton : e.newton / denom;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
          z[i] *= Complex(1.0 + 1e-8, 1e-8);
          continue;
        }
        z[i] -= step;
        const bool small_step = std::abs(step) <= options.tol * (1.0 + std::abs(z[i]));
        const bool at_noise = e.residual <= 2.0 * n * e.noise_floor;
        if (small_step || at_noise) {
          done[i] = true;
          --remaining;
        }
      }
    }
    if (remaining > 0) {
      double worst = 0.0;
      bool stuck = false;
      for (int i = 0; i < n; ++i) {
        const Eval e = evaluate(c, z[i]);
        worst = std::max(worst, e.residual);
        if (!done[i] && e.residual > 16.0 * n * e.noise_floor) stuck = true;
      }
      if (stuck) throw RootFindError("root iteration did not converge", z, worst);
    }
  }

  for (const Cluster& k : group_roots(c, z, options.merge_radius))
    out.entries.push_back({std::abs(k.center), reduce_angle(std::arg(k.center)), k.multiplicity});

  std::sort(out.entries.begin(), out.entries.end(), [](const Root& a, const Root& b) {
    return a.angle != b.angle ? a.angle < b.angle : a.modulus < b.modulus;
  });
  for (const Root& r : out.entries) out.residual_bound = std::max(out.residual_bound, scaled_residual(p, r.value()));
  return out;
}

double scaled_residual(const Polynomial& p, Complex z) {
  if (std::abs(z) <= 1.0) return std::abs(p(z));
  // |z|^-N |P(z)| via Horner on the reversed coefficients
  const auto c = p.coeffs();
  const Complex w = 1.0 / z;
  Complex r = c[0];
  for (std::size_t j = 1; j < c.size(); ++j) r = r * w + c[j];
  return std::abs(r);
}

double verify_roots(const Polynomial& p, const RootSet& roots) {
  if (roots.degree() != p.degree())
    throw std::invalid_argument("root multiplicities do not sum to the polynomial degree");
  double worst = 0.0;
  for (const Root& r : roots.entries) worst = std::max(worst, scaled_residual(p, r.value()));
  return worst / (1.0 + p.abs_coeff_sum());
}

double root_product_defect(const Polynomial& p, const RootSet& roots) {
  const double target = std::abs(p.constant() / p.leading());
  double log_prod = 0.0;
  for (const Root& r : roots.entries) {
    if (r.modulus == 0.0) return target == 0.0 ? 0.0 : 1.0;
    log_prod += r.multiplicity * std::log(r.modulus);
  }
  if (target == 0.0) return 1.0;
  return std::abs(std::expm1(log_prod - std::log(target)));
}

}  // namespace zerodist

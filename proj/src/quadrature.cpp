#include "zerodist/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace zerodist {
namespace {

// 15-point Kronrod abscissae (non-negative half) with the embedded 7-point Gauss rule.
constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

enum class Grading { none, left, right };

struct Panel {
  double a;
  double b;
  Grading grading;
  Complex value;
  double error;
  bool frozen;
};

// Gauss–Kronrod on [a, b]; a graded panel integrates in u with θ = a + (b−a)u⁴
// (or the mirror image), so the singular endpoint is approached polynomially.
void apply_rule(const PeriodicIntegrand& f, Panel& p) {
  const double h = p.b - p.a;
  auto sample = [&](double u) -> Complex {  // u ∈ [0, 1], returns f(θ) dθ/du
    switch (p.grading) {
      case Grading::none:
        return f(p.a + h * u) * h;
      // On short panels h·u⁴ can fall below an ulp of the endpoint; such a
      // node is moved one ulp inside rather than landing on the singularity.
      case Grading::left: {
        const double u2 = u * u;
        double t = p.a + h * u2 * u2;
        if (t == p.a) t = std::nextafter(p.a, p.b);
        return f(t) * (4.0 * h * u2 * u);
      }
      case Grading::right: {
        const double u2 = u * u;
        double t = p.b - h * u2 * u2;
        if (t == p.b) t = std::nextafter(p.b, p.a);
        return f(t) * (4.0 * h * u2 * u);
      }
    }
    return 0.0;
  };
  Complex kron = kWk[7] * sample(0.5);
  Complex gauss = kWg[3] * sample(0.5);
  for (int i = 0; i < 7; ++i) {
    const double dx = 0.5 * kXk[i];
    const Complex s = sample(0.5 - dx) + sample(0.5 + dx);
    kron += kWk[i] * s;
    if (i % 2 == 1) gauss += kWg[i / 2] * s;
  }
  p.value = 0.5 * kron;
  p.error = 0.5 * std::abs(kron - gauss);
}

Complex pairwise_sum(std::span<const Complex> v) {
  if (v.size() <= 8) {
    Complex s = 0.0;
    for (const Complex& x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

}  // namespace

QuadResult<Complex> integrate_periodic(const PeriodicIntegrand& f, std::span<const double> breakpoints,
                                       std::span<const double> singular_points, const QuadOptions& options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");

  struct Node {
    double x;
    bool singular;
  };
  std::vector<Node> nodes;
  for (double b : breakpoints) nodes.push_back({reduce_angle(b), false});
  for (double s : singular_points) nodes.push_back({reduce_angle(s), true});
  std::sort(nodes.begin(), nodes.end(), [](const Node& l, const Node& r) {
    return l.x != r.x ? l.x < r.x : l.singular > r.singular;
  });
  nodes.erase(std::unique(nodes.begin(), nodes.end(), [](const Node& l, const Node& r) { return l.x == r.x; }),
              nodes.end());
  if (nodes.empty()) nodes.push_back({0.0, false});

  // Close the period: the domain is [x_0, x_0 + 2π].
  const double origin = nodes.front().x;
  nodes.push_back({origin + kTwoPi, nodes.front().singular});

  // Geometric grading toward each singular node.
  std::vector<Node> graded;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i > 0 && nodes[i].singular) {
      const double gap = nodes[i].x - nodes[i - 1].x;
      for (double frac : {0.25, 1.0 / 16.0, 1.0 / 64.0}) graded.push_back({nodes[i].x - gap * frac, false});
    }
    graded.push_back(nodes[i]);
    if (i + 1 < nodes.size() && nodes[i].singular) {
      const double gap = nodes[i + 1].x - nodes[i].x;
      for (double frac : {1.0 / 64.0, 1.0 / 16.0, 0.25}) graded.push_back({nodes[i].x + gap * frac, false});
    }
  }
  std::sort(graded.begin(), graded.end(), [](const Node& l, const Node& r) { return l.x < r.x; });

  std::vector<Panel> panels;
  const double max_width = kTwoPi / std::max(1, options.min_panels);
  for (std::size_t i = 0; i + 1 < graded.size(); ++i) {
    const double a = graded[i].x, b = graded[i + 1].x;
    if (!(b > a)) continue;
    Grading g = graded[i].singular ? Grading::left : (graded[i + 1].singular ? Grading::right : Grading::none);
    const int pieces = g == Grading::none ? std::max(1, static_cast<int>(std::ceil((b - a) / max_width))) : 1;
    for (int k = 0; k < pieces; ++k) {
      const double pa = a + (b - a) * k / pieces;
      const double pb = k + 1 == pieces ? b : a + (b - a) * (k + 1) / pieces;
      panels.push_back({pa, pb, g, 0.0, 0.0, false});
    }
  }

  double total_error = 0.0;
  auto cmp = [&](std::size_t l, std::size_t r) { return panels[l].error < panels[r].error; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> queue(cmp);
  for (std::size_t i = 0; i < panels.size(); ++i) {
    apply_rule(f, panels[i]);
    total_error += panels[i].error;
    queue.push(i);
  }

  int refinements = 0;
  while (total_error > options.tol && static_cast<int>(panels.size()) < options.panel_budget && !queue.empty()) {
    const std::size_t i = queue.top();
    queue.pop();
    Panel& p = panels[i];
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b) || (p.b - p.a) < 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(p.a))) {
      p.frozen = true;
      continue;
    }
    Panel left{p.a, mid, p.grading == Grading::left ? Grading::left : Grading::none, 0.0, 0.0, false};
    Panel right{mid, p.b, p.grading == Grading::right ? Grading::right : Grading::none, 0.0, 0.0, false};
    apply_rule(f, left);
    apply_rule(f, right);
    total_error += left.error + right.error - p.error;
    p = left;
    panels.push_back(right);
    queue.push(i);
    queue.push(panels.size() - 1);
    if (++refinements % 1024 == 0) {
      total_error = 0.0;
      for (const Panel& q : panels) total_error += q.error;
    }
  }

  std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  std::vector<Complex> values;
  values.reserve(panels.size());
  total_error = 0.0;
  for (const Panel& p : panels) {
    values.push_back(p.value);
    total_error += p.error;
  }
  QuadResult<Complex> out;
  out.value = pairwise_sum(values);
  out.error_estimate = total_error;
  out.panels_used = static_cast<int>(panels.size());
  out.converged = total_error <= options.tol;
  return out;
}

QuadResult<Complex> integrate_periodic(const PeriodicIntegrand& f, std::span<const double> breakpoints, double tol) {
  QuadOptions options;
  options.tol = tol;
  return integrate_periodic(f, breakpoints, {}, options);
}

CircleLogModulus::CircleLogModulus(const Polynomial& p, const RootSet& roots)
    : poly_(p), roots_(roots), log_lead_(std::log(std::abs(p.leading()))) {
  if (roots.degree() != p.degree())
    throw std::invalid_argument("root set does not match the polynomial degree");
  horner_floor_ = 1e6 * p.degree() * std::numeric_limits<double>::epsilon() * p.abs_coeff_sum();
  for (const Root& r : roots.entries) {
    if (r.modulus == 0.0) continue;
    if (std::abs(r.modulus - 1.0) <= 1e-3) singular_.push_back(r.angle);
    else breakpoints_.push_back(r.angle);
  }
}

double CircleLogModulus::factored(double theta) const {
  double mantissa = 1.0;
  long exponent = 0;
  double extra = 0.0;  // (m − 1) log sq for multiple roots, kept apart so the product cannot underflow
  for (const Root& r : roots_.entries) {
    const double s = std::sin(0.5 * (theta - r.angle));
    const double d = 1.0 - r.modulus;
    double sq = d * d + 4.0 * r.modulus * s * s;  // |e^{iθ} − ρe^{iφ}|²
    if (sq == 0.0) return -std::numeric_limits<double>::infinity();
    if (r.multiplicity > 1) extra += (r.multiplicity - 1) * std::log(sq);
    int e = 0;
    mantissa = std::frexp(mantissa * sq, &e);
    exponent += e;
  }
  return log_lead_ + 0.5 * (std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln2 + extra);
}

double CircleLogModulus::operator()(double theta) const {
  const double v = std::abs(eval_on_circle(poly_, theta));
  if (v > horner_floor_) return std::log(v);
  return factored(theta);
}

std::vector<double> level_crossings(const CircleLogModulus& log_mod, double log_scale) {
  const int m = std::max(64, 16 * log_mod.degree());
  std::vector<double> grid(m + 1), vals(m + 1);
  for (int i = 0; i <= m; ++i) {
    grid[i] = kTwoPi * i / m;
    vals[i] = i < m ? log_mod(grid[i]) - log_scale : vals[0];
  }
  std::vector<double> out;
  for (int i = 0; i < m; ++i) {
    const bool pos_a = vals[i] > 0.0, pos_b = vals[i + 1] > 0.0;
    if (pos_a == pos_b) continue;
    double lo = grid[i], hi = grid[i + 1];
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if ((log_mod(mid) - log_scale > 0.0) == pos_a) lo = mid;
      else hi = mid;
    }
    out.push_back(reduce_angle(0.5 * (lo + hi)));
  }
  return out;
}

namespace {

QuadResult<double> mean_of(const PeriodicIntegrand& f, const CircleLogModulus& log_mod,
                           std::vector<double> extra_breaks, QuadOptions options) {
  std::vector<double> breaks = log_mod.breakpoints();
  breaks.insert(breaks.end(), extra_breaks.begin(), extra_breaks.end());
  options.min_panels = std::max(options.min_panels, 2 * log_mod.degree());
  const QuadResult<Complex> r = integrate_periodic(f, breaks, log_mod.singular_points(), options);
  return {r.value.real() / kTwoPi, r.error_estimate / kTwoPi, r.panels_used, r.converged};
}

}  // namespace

QuadResult<double> mean_log_abs(const Polynomial& p, const RootSet& roots, const QuadOptions& options) {
  const CircleLogModulus log_mod(p, roots);
  return mean_of([&](double t) { return Complex(log_mod(t), 0.0); }, log_mod, {}, options);
}

QuadResult<double> mean_log_plus(const Polynomial& p, double scale, const RootSet& roots,
                                 const QuadOptions& options) {
  if (!(scale > 0.0)) throw std::invalid_argument("log+ scale must be positive");
  const CircleLogModulus log_mod(p, roots);
  const double log_scale = std::log(scale);
  return mean_of([&](double t) { return Complex(std::max(0.0, log_mod(t) - log_scale), 0.0); }, log_mod,
                 level_crossings(log_mod, log_scale), options);
}

QuadResult<double> mean_abs_log(const Polynomial& p, double scale, const RootSet& roots,
                                const QuadOptions& options) {
  if (!(scale > 0.0)) throw std::invalid_argument("log scale must be positive");
  const CircleLogModulus log_mod(p, roots);
  const double log_scale = std::log(scale);
  return mean_of([&](double t) { return Complex(std::abs(log_mod(t) - log_scale), 0.0); }, log_mod,
                 level_crossings(log_mod, log_scale), options);
}

}  // namespace zerodist

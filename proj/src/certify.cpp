#include "zerodist/certify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace zerodist {
namespace {

constexpr double kUnitRadiusTol = 1e-9;
constexpr double kChainTol = 1e-5;
constexpr int kGridPoints = 4096;

Polynomial checked_monic(const Polynomial& p) {
  Polynomial monic = normalize_monic(p).monic;
  if (monic.constant() == Complex(0.0, 0.0)) throw std::invalid_argument("certificates need a nonzero constant term");
  return monic;
}

bool all_on_circle(const RootSet& roots) {
  return std::all_of(roots.entries.begin(), roots.entries.end(),
                     [](const Root& r) { return std::abs(r.modulus - 1.0) <= kUnitRadiusTol; });
}

bool unimodular_coefficients(const Polynomial& p) {
  const double lead = std::abs(p.leading());
  for (const Complex& c : p.coeffs())
    if (std::abs(std::abs(c) / lead - 1.0) > 1e-15) return false;
  return true;
}

// Growth of (8/π)√(N h) when h moves by at most e.
double sqrt_bound_slop(int n, double h, double e) {
  if (e <= 0.0) return 0.0;
  const double dh = h > 0.0 ? std::min(std::sqrt(e), e / (2.0 * std::sqrt(h))) : std::sqrt(e);
  return 8.0 / kPi * std::sqrt(static_cast<double>(n)) * dh;
}

std::string describe_arc(const Arc& arc) { return fmt::format("[{:.12g}, {:.12g}]", arc.start, arc.start + arc.length); }

std::string describe(const Discrepancy& d) {
  return fmt::format("arc {} {}{}", describe_arc(d.witness), d.side == DiscrepancySide::excess ? "excess" : "deficit",
                     d.limit ? " (limit)" : "");
}

CertificateItem theorem2_item(const Discrepancy& d, int n, const QuadResult<double>& h) {
  const double bound = 8.0 / kPi * std::sqrt(n * std::max(h.value, 0.0));
  return make_item("theorem2", d.value, bound, kInequalityTol + sqrt_bound_slop(n, h.value, h.error_estimate),
                   describe(d));
}

CertificateItem pm1_item(const Discrepancy& d, int n) {
  const double bound = 8.0 / kPi * std::sqrt(n * std::log(n + 1.0));
  return make_item("theorem2_pm1", d.value, bound, kInequalityTol, describe(d));
}

CertificateItem band_item(const RootSet& roots, double epsilon, double log_m) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("band width must be positive");
  const double lo = std::exp(-epsilon);
  const double hi = std::exp(epsilon);
  int outside = 0;
  for (const Root& r : roots.entries)
    if (r.modulus < lo || r.modulus > hi) outside += r.multiplicity;
  return make_item("band", outside, log_m / epsilon, kInequalityTol, fmt::format("epsilon {:.12g}", epsilon));
}

std::vector<CertificateItem> coefficient_items(const Polynomial& monic, const QuadResult<double>& h) {
  const CircleMaximum H = H_of(monic);
  const int n = monic.degree();
  const double a0 = std::abs(monic.constant());
  const double ratio = monic.abs_coeff_sum_sq() / a0;
  const double upper_sq = H.upper_bound * H.upper_bound;
  const double found_sq = H.value * H.value;
  std::vector<CertificateItem> items;
  items.push_back(make_item("coefficient_lower", ratio, upper_sq, 1e-9 * upper_sq));
  items.push_back(make_item("coefficient_upper", found_sq, (n + 1) * ratio, 1e-9 * (n + 1) * ratio));
  items.push_back(make_item("coefficient_upper_degree_constant", found_sq, n * ratio, 1e-9 * n * ratio, std::nullopt,
                            false));
  items.push_back(make_item("h_le_log_H", h.value, std::log(H.upper_bound), kInequalityTol + h.error_estimate));
  items.push_back(make_item("H_ge_1", 1.0, H.upper_bound, 1e-12));
  return items;
}

std::vector<CertificateItem> identity_items(const Polynomial& monic, const RootSet& roots,
                                            const QuadResult<double>& h, const std::vector<int>& k_range,
                                            const QuadOptions& options) {
  std::vector<CertificateItem> items;
  const QuadResult<double> jensen = theorem1_identity_residual(monic, roots, options);
  items.push_back(make_item("jensen_identity", jensen.value, 0.0, kInequalityTol + jensen.error_estimate));

  const double scale = std::sqrt(std::abs(monic.constant()));
  const QuadResult<double> mean_log = mean_log_abs(monic, roots, options);
  const QuadResult<double> abs_log = mean_abs_log(monic, scale, roots, options);
  const double centred = mean_log.value - std::log(scale);
  const double err = mean_log.error_estimate + abs_log.error_estimate + 2.0 * h.error_estimate;
  items.push_back(
      make_item("abs_log_identity", std::abs(abs_log.value - (2.0 * h.value - centred)), 0.0, kIdentityTol + err));

  const bool unit = all_on_circle(roots);
  if (unit)
    items.push_back(make_item("abs_log_equals_2h", std::abs(abs_log.value - 2.0 * h.value), 0.0,
                              kIdentityTol + abs_log.error_estimate + 2.0 * h.error_estimate));

  const UnitAngleSet angles = schur_reduce(roots);
  for (int k : k_range) {
    if (k == 0) throw std::invalid_argument("power sums need k != 0");
    const Complex direct = unit ? power_sum(angles, k) : damped_power_sum(roots, k);
    const QuadResult<Complex> integral = unit ? power_sum_integral(monic, roots, k, options)
                                              : damped_power_sum_integral(monic, roots, k, options);
    const std::string tag = fmt::format("[{}]", k);
    items.push_back(make_item((unit ? "power_sum_identity" : "damped_power_sum_identity") + tag,
                              std::abs(direct - integral.value), 0.0, kIdentityTol + integral.error_estimate));
    const Complex damped = damped_power_sum(roots, k);
    items.push_back(make_item("power_sum_bound" + tag, std::abs(damped), 4.0 * std::abs(k) * h.value,
                              kIdentityTol + 4.0 * std::abs(k) * h.error_estimate));
  }
  return items;
}

std::vector<CertificateItem> smoothing_items(const RootSet& roots, const Discrepancy& d, const QuadOptions& options) {
  const UnitAngleSet q = schur_reduce(roots);
  const QuadResult<double> h_q = h_of(q.polynomial(), q.roots(), options);
  std::vector<std::pair<Arc, std::string>> arcs;
  if (d.witness.length > 0.0) arcs.emplace_back(d.witness, "witness");
  arcs.emplace_back(Arc::make(0.0, kPi / 2.0), "quarter");
  arcs.emplace_back(Arc::make(1.0, 2.5), "fixed");
  std::vector<CertificateItem> items;
  for (const auto& [arc, label] : arcs) {
    auto part = check_smoothing(q, h_q.value, arc, label);
    items.insert(items.end(), part.begin(), part.end());
  }
  return items;
}

}  // namespace

CertificateItem make_item(std::string name, double measured, double bound, double tolerance,
                          std::optional<std::string> witness, bool gating) {
  CertificateItem item;
  item.name = std::move(name);
  item.measured = measured;
  item.bound = bound;
  item.slack = bound - measured;
  item.tolerance = tolerance;
  item.pass = measured <= bound + tolerance;
  item.gating = gating;
  item.witness = std::move(witness);
  return item;
}

ReferenceConstants reference_constants() {
  // Catalan's constant as Σ (−1)^n/(2n+1)²; pairing consecutive terms gives
  // a positive series whose tail after n pairs is below 1/(8n²).
  double catalan = 0.0;
  for (int n = 200000; n >= 0; --n) {
    const double a = 4.0 * n + 1.0;
    const double b = 4.0 * n + 3.0;
    catalan += 1.0 / (a * a) - 1.0 / (b * b);
  }
  ReferenceConstants c{};
  c.eight_over_pi = 8.0 / kPi;
  c.catalan = catalan;
  c.ganelius = std::sqrt(kTwoPi / catalan);
  c.sqrt2 = std::sqrt(2.0);
  return c;
}

bool CertificateReport::all_pass() const {
  return std::all_of(items.begin(), items.end(), [](const CertificateItem& i) { return i.pass || !i.gating; });
}

const CertificateItem* CertificateReport::find(const std::string& name) const {
  for (const CertificateItem& i : items)
    if (i.name == name) return &i;
  return nullptr;
}

CertificateItem check_theorem1(const Polynomial& p, const RootSet& roots, const QuadOptions& options) {
  return check_theorem1(roots, h_of(p, roots, options));
}

CertificateItem check_theorem1(const RootSet& roots, const QuadResult<double>& h) {
  return make_item("theorem1", log_script_M(roots), 2.0 * h.value, kInequalityTol + 2.0 * h.error_estimate);
}

CertificateItem check_theorem2(const Polynomial& p, const RootSet& roots, const QuadOptions& options) {
  return check_theorem2(roots, h_of(p, roots, options));
}

CertificateItem check_theorem2(const RootSet& roots, const QuadResult<double>& h) {
  return theorem2_item(discrepancy(schur_reduce(roots)), roots.degree(), h);
}

CertificateItem check_theorem2_pm1(const Polynomial& p, const RootSet& roots) {
  if (!unimodular_coefficients(p)) throw std::invalid_argument("coefficients are not all of modulus |a_N|");
  return pm1_item(discrepancy(schur_reduce(roots)), roots.degree());
}

CertificateItem check_band(const RootSet& roots, double epsilon) {
  return band_item(roots, epsilon, log_script_M(roots));
}

std::vector<CertificateItem> check_identities(const Polynomial& p, const RootSet& roots, const std::vector<int>& k_range,
                                              const QuadOptions& options) {
  const Polynomial monic = checked_monic(p);
  const QuadResult<double> h = h_of(monic, roots, options);
  auto items = identity_items(monic, roots, h, k_range, options);
  auto smooth = smoothing_items(roots, discrepancy(schur_reduce(roots)), options);
  items.insert(items.end(), smooth.begin(), smooth.end());
  return items;
}

std::vector<CertificateItem> check_coefficient_bounds(const Polynomial& p, const RootSet& roots,
                                                      const QuadOptions& options) {
  const Polynomial monic = checked_monic(p);
  return coefficient_items(monic, h_of(monic, roots, options));
}

DeltaSchedule proof_terms(double h, int n, double delta) {
  DeltaSchedule s;
  s.delta = delta;
  s.smoothing_term = 16.0 * h / (kPi * delta);
  s.widening_term = n * delta / kPi;
  return s;
}

DeltaSchedule delta_schedule(double h, int n) {
  if (!(h >= 0.0) || n < 1) throw std::invalid_argument("delta schedule needs h >= 0 and N >= 1");
  constexpr double lo = 1e-6;
  const double hi = kPi - 1e-6;
  const double raw = 4.0 * std::sqrt(h / n);
  DeltaSchedule s = proof_terms(h, n, std::clamp(raw, lo, hi));
  s.flat = h == 0.0;
  s.clamped = raw < lo || raw > hi;
  return s;
}

std::vector<CertificateItem> check_smoothing(const UnitAngleSet& q, double h_q, const Arc& arc,
                                             const std::string& label, std::optional<double> delta) {
  const int n = q.total;
  const DeltaSchedule terms = delta ? proof_terms(h_q, n, *delta) : delta_schedule(h_q, n);
  const SmoothedIndicator g = build_smoothed_indicator(arc, terms.delta);
  const SmoothedSum s = smoothed_sum(q, g);
  const std::string tag = "[" + label + "]";
  const std::string where = fmt::format("arc {} delta {:.12g}", describe_arc(arc), terms.delta);

  std::vector<CertificateItem> items;
  items.push_back(make_item("smoothed_sum_bound" + tag, std::abs(s.value - n * g.g0()), 4.0 * g.Gmax_bound() * h_q,
                            kChainTol + s.truncation_bound, where));

  const std::vector<double> grid = g.sample_G(std::max(kGridPoints, 8 * n));
  double gmax = 0.0;
  for (double v : grid) gmax = std::max(gmax, std::abs(v));
  items.push_back(make_item("G_max" + tag, gmax, g.Gmax_bound(), kInequalityTol + g.G_tail_bound(), where));

  const double expected = n * arc.length / kTwoPi;
  const double majorant = s.value - expected;
  items.push_back(make_item("majorant" + tag, count_in_arc(q, arc) - expected, majorant,
                            kInequalityTol + s.truncation_bound, where));
  items.push_back(make_item("smoothing_chain" + tag, majorant, terms.total(), kChainTol + s.truncation_bound, where));
  return items;
}

CertificateReport certify_all(const Polynomial& p, const RootSet& roots, const CertifyOptions& options) {
  const Polynomial monic = checked_monic(p);
  const int n = roots.degree();
  if (n != monic.degree()) throw std::invalid_argument("root multiplicities do not match the degree");
  const QuadResult<double> h = h_of(monic, roots, options.quad);
  const Discrepancy d = discrepancy(schur_reduce(roots));
  const double log_m = log_script_M(roots);

  CertificateReport report;
  report.items.push_back(check_theorem1(roots, h));
  report.items.push_back(theorem2_item(d, n, h));
  if (unimodular_coefficients(p)) report.items.push_back(pm1_item(d, n));
  report.items.push_back(band_item(roots, std::sqrt(2.0 * std::max(h.value, 1e-12) / n), log_m));
  for (auto& item : coefficient_items(monic, h)) report.items.push_back(std::move(item));
  if (options.identities)
    for (auto& item : identity_items(monic, roots, h, options.k_range, options.quad))
      report.items.push_back(std::move(item));
  if (options.smoothing)
    for (auto& item : smoothing_items(roots, d, options.quad)) report.items.push_back(std::move(item));
  return report;
}

}  // namespace zerodist

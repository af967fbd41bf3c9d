#include "zerodist/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace zerodist {

double reduce_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative number can round up to exactly 2π.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == Complex(0.0, 0.0)) coeffs_.pop_back();
  for (const Complex& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw std::invalid_argument("polynomial coefficients must be finite");
  }
  if (coeffs_.size() < 2)
    throw std::invalid_argument("polynomial must have degree at least 1");
}

double Polynomial::abs_coeff_sum() const {
  double s = 0.0;
  for (const Complex& c : coeffs_) s += std::abs(c);
  return s;
}

double Polynomial::abs_coeff_sum_sq() const {
  double s = 0.0;
  for (const Complex& c : coeffs_) s += std::norm(c);
  return s;
}

Complex Polynomial::operator()(Complex z) const {
  Complex acc = coeffs_.back();
  for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex eval_on_circle(const Polynomial& p, double theta) {
  return p(std::polar(1.0, reduce_angle(theta)));
}

namespace {

// Leja ordering: start from the largest root, then repeatedly take the root
// farthest (in product of distances) from those already taken. Multiplying the
// factors in angular order instead builds binomial-size intermediate
// coefficients, and their cancellation destroys the result.
std::vector<Complex> leja_order(std::span<const Complex> roots) {
  std::vector<Complex> rest(roots.begin(), roots.end());
  std::vector<Complex> out;
  out.reserve(rest.size());
  std::vector<double> score(rest.size(), 0.0);  // Σ log|z − chosen|
  auto first = std::max_element(rest.begin(), rest.end(),
                                [](const Complex& a, const Complex& b) { return std::abs(a) < std::abs(b); });
  std::iter_swap(first, rest.end() - 1);
  while (!rest.empty()) {
    const Complex pick = rest.back();
    rest.pop_back();
    score.pop_back();
    out.push_back(pick);
    std::size_t best = 0;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      const double d = std::abs(rest[i] - pick);
      score[i] = d == 0.0 ? -std::numeric_limits<double>::infinity() : score[i] + std::log(d);
      if (score[i] > score[best]) best = i;
    }
    if (!rest.empty()) {
      std::swap(rest[best], rest.back());
      std::swap(score[best], score.back());
    }
  }
  return out;
}

}  // namespace

Polynomial from_roots(std::span<const Complex> roots, Complex lead) {
  if (roots.empty()) throw std::invalid_argument("from_roots needs at least one root");
  if (lead == Complex(0.0, 0.0)) throw std::invalid_argument("leading coefficient must be nonzero");
  std::vector<Complex> c{Complex(1.0, 0.0)};
  c.reserve(roots.size() + 1);
  for (const Complex& alpha : leja_order(roots)) {
    c.push_back(Complex(0.0, 0.0));
    for (std::size_t j = c.size() - 1; j > 0; --j) c[j] = c[j - 1] - alpha * c[j];
    c[0] = -alpha * c[0];
  }
  for (Complex& x : c) x *= lead;
  return Polynomial(std::move(c));
}

MonicForm normalize_monic(const Polynomial& p) {
  const Complex lead = p.leading();
  std::vector<Complex> c(p.coeffs().begin(), p.coeffs().end());
  if (lead != Complex(1.0, 0.0)) {
    for (Complex& x : c) x /= lead;
    c.back() = Complex(1.0, 0.0);
  }
  return {Polynomial(std::move(c)), lead};
}

ZeroDeflation deflate_zero_roots(const Polynomial& p) {
  auto c = p.coeffs();
  std::size_t v = 0;
  while (v < c.size() && c[v] == Complex(0.0, 0.0)) ++v;
  if (v + 1 >= c.size())
    throw std::invalid_argument("polynomial is a monomial a·z^N; no nonzero roots to analyze");
  return {Polynomial(std::vector<Complex>(c.begin() + static_cast<std::ptrdiff_t>(v), c.end())),
          static_cast<int>(v)};
}

Arc Arc::make(double start, double length) {
  if (!(length > 0.0) || length > kTwoPi)
    throw std::invalid_argument("arc length must lie in (0, 2π]");
  return Arc{reduce_angle(start), length};
}

bool Arc::contains(double theta) const {
  if (is_full()) return true;
  return reduce_angle(theta - start) <= length;
}

}  // namespace zerodist

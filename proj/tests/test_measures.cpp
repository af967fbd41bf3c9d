#include <doctest.h>

#include "support.hpp"
#include "zerodist/families.hpp"
#include "zerodist/measures.hpp"

using namespace zerodist;

TEST_CASE("H((z − 1)^N) = 2^N") {
  for (int n = 1; n <= 20; ++n) {
    const CircleMaximum m = H_of(binomial_pow(n));
    const double expect = std::ldexp(1.0, n);
    CHECK(m.value == doctest::Approx(expect).epsilon(1e-9));
    CHECK(m.upper_bound >= m.value);
    CHECK(m.upper_bound <= expect * (1.0 + 1e-6));
    CHECK(std::abs(m.argmax - kPi) < 1e-4);
  }
}

TEST_CASE("H of simple polynomials") {
  CHECK(H_of(Polynomial({-1.0, 0.0, 1.0})).value == doctest::Approx(2.0).epsilon(1e-12));
  // z^N − c: max is 1 + c over √c
  const CircleMaximum m = H_of(shrunk_power(6, 0.25));
  CHECK(m.value == doctest::Approx(1.25 / 0.5).epsilon(1e-12));
  CHECK_THROWS_AS(H_of(Polynomial({0.0, 1.0, 1.0})), std::invalid_argument);
}

TEST_CASE("property: H found is within its certified band and above the Parseval mean") {
  prop::for_all(61, 100, [](std::mt19937_64& rng, int) {
    const int n = prop::uniform_int(rng, 1, 60);
    const Polynomial p = from_roots(prop::random_roots(rng, n, 0.4, 2.5));
    const CircleMaximum m = H_of(p);
    CHECK(m.upper_bound >= m.value);
    CHECK(m.upper_bound <= m.value * (1.0 + 2e-6));
    // the 64N grid never beats the reported maximum
    const double scale = std::sqrt(std::abs(p.constant() / p.leading()));
    for (int j = 0; j < 512; ++j)
      CHECK(std::abs(eval_on_circle(p, kTwoPi * j / 512) / p.leading()) / scale <= m.value * (1.0 + 1e-12));
  });
}

TEST_CASE("Parseval sandwich for (z − 1)^N with exact binomials") {
  for (int n = 1; n <= 25; ++n) {
    const Polynomial p = binomial_pow(n);
    const double s2 = p.abs_coeff_sum_sq();
    CHECK(s2 == oracle::central_binomial(n));
    const double h2 = std::ldexp(1.0, 2 * n);
    CHECK(s2 <= h2);
    CHECK(h2 <= (n + 1) * s2);
  }
}

TEST_CASE("h of the examples") {
  const Polynomial z2 = Polynomial({-1.0, 0.0, 1.0});
  CHECK(h_of(z2, find_roots(z2)).value == doctest::Approx(oracle::h_roots_of_unity()).epsilon(1e-9));
  for (int n : {1, 4, 12}) {
    // h((z − 1)^N) = N h(z − 1)
    const Polynomial p = binomial_pow(n);
    CHECK(h_of(p, find_roots(p)).value == doctest::Approx(n * oracle::h_roots_of_unity()).epsilon(1e-8));
  }
  // z^N − 2^{-N}: |P|/√|a_0| = 2^{N/2}|e^{iNθ} − 2^{-N}| ≥ 1, so h = mean log = (N/2) log 2
  for (int n : {3, 8}) {
    const Polynomial p = shrunk_power(n, std::ldexp(1.0, -n));
    CHECK(h_of(p, find_roots(p)).value == doctest::Approx(0.5 * n * std::log(2.0)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(h_of(Polynomial({0.0, 1.0, 1.0}), find_roots(Polynomial({0.0, 1.0, 1.0}))), std::invalid_argument);
}

TEST_CASE("log 𝓜 and Mahler measure") {
  const Polynomial p = shrunk_power(5, std::ldexp(1.0, -5));
  const RootSet r = find_roots(p);
  CHECK(log_script_M(r) == doctest::Approx(5.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(mahler(r, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(log_script_M(find_roots(binomial_pow(7))) < 1e-10);

  const RootSet l = find_roots(lehmer());
  CHECK(mahler(l, 1.0) == doctest::Approx(1.1762808183).epsilon(1e-9));
  CHECK(log_mahler(l, 2.0) == doctest::Approx(std::log(2.0 * 1.1762808183)).epsilon(1e-9));

  const RootSet zero = find_roots(Polynomial({0.0, 1.0, 1.0}));
  CHECK_THROWS_AS(log_script_M(zero), std::invalid_argument);
}

TEST_CASE("log 𝓜 is twice the centred mean of log|P|") {
  prop::for_all(62, 100, [](std::mt19937_64& rng, int) {
    const int n = prop::uniform_int(rng, 1, 40);
    const Polynomial p = from_roots(prop::random_roots(rng, n, 0.1, 10.0), prop::uniform(rng, 0.5, 3.0));
    const RootSet r = find_roots(p);
    const auto res = theorem1_identity_residual(p, r);
    CHECK(res.value <= 1e-7 + res.error_estimate);
  });
}

TEST_CASE("measure report bundles consistent values") {
  prop::for_all(63, 40, [](std::mt19937_64& rng, int) {
    const int n = prop::uniform_int(rng, 2, 80);
    const Polynomial p = littlewood(n, rng());
    const RootSet r = find_roots(p);
    const MeasureReport m = measure_all(p, r);
    CHECK(m.converged);
    CHECK(m.H <= n + 1.0);
    CHECK(std::exp(m.log_script_M) <= (n + 1.0) * (n + 1.0));
    CHECK(m.h <= std::log(m.H_upper) + 1e-9);
    CHECK(m.log_script_M <= 2.0 * m.h + 1e-7);
  });
}

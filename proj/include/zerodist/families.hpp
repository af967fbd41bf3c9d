#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zerodist/polynomial.hpp"

namespace zerodist {

enum class FamilyKind { littlewood, digits_pi, fekete, lehmer, binomial_pow, shrunk_power, roots_of_unity, custom };

std::string_view to_string(FamilyKind kind);
FamilyKind parse_family_kind(std::string_view name);

/// A named example polynomial plus its parameters. `custom` carries its own
/// coefficient vector.
struct FamilySpec {
  FamilyKind kind = FamilyKind::littlewood;
  std::optional<int> N;
  std::optional<long long> p;
  std::optional<double> c;
  std::optional<std::uint64_t> seed;
  std::vector<Complex> coeffs;  ///< custom only, low to high

  void validate() const;
  std::string describe() const;
};

struct FamilyMember {
  Polynomial poly;
  /// Power of z divided out by the generator itself (Fekete polynomials).
  int deflation_order = 0;
};

FamilyMember generate(const FamilySpec& spec);

/// SplitMix64 (Steele, Lea & Flood 2014): 64-bit state, one add and a
/// three-step mix per output.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

/// z^N + Σ_{j<N} ±z^j with sign j taken from the high bit of the (j+1)-th
/// SplitMix64 draw.
Polynomial littlewood(int n, std::uint64_t seed);

/// 3z^N + z^{N-1} + 4z^{N-2} + ...: the coefficient of z^{N−j} is the j-th
/// digit of π (j = 0 is the leading 3). 1 ≤ N ≤ 1023.
Polynomial digits_pi(int n);

/// The embedded π digit table, "31415...".
std::string_view pi_digit_table();

bool is_prime(long long n);

/// (a | p) by Euler's criterion, a^{(p−1)/2} mod p.
int legendre_symbol(long long a, long long p);

/// Σ_{j=1}^{p−1} (j|p) z^{j−1}: the Fekete polynomial with its j = 0 term
/// (which is zero) divided out, so deflation_order = 1 and a_0 = 1.
FamilyMember fekete(long long p);

/// x^10 + x^9 − x^7 − x^6 − x^5 − x^4 − x^3 + x + 1.
Polynomial lehmer();

/// (z − 1)^N from Pascal's rule. Throws beyond N = 1000.
Polynomial binomial_pow(int n);

/// z^N − c.
Polynomial shrunk_power(int n, double c);

/// z^N − 1.
Polynomial roots_of_unity(int n);

}  // namespace zerodist

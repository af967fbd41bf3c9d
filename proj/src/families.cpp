#include "zerodist/families.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace zerodist {
namespace {

constexpr std::string_view kPiDigits =
#include "pi_digits.inc"
    ;

static_assert(kPiDigits.size() == 1024);

constexpr std::array<std::pair<FamilyKind, std::string_view>, 8> kNames{{
    {FamilyKind::littlewood, "littlewood"},
    {FamilyKind::digits_pi, "digits_pi"},
    {FamilyKind::fekete, "fekete"},
    {FamilyKind::lehmer, "lehmer"},
    {FamilyKind::binomial_pow, "binomial_pow"},
    {FamilyKind::shrunk_power, "shrunk_power"},
    {FamilyKind::roots_of_unity, "roots_of_unity"},
    {FamilyKind::custom, "custom"},
}};

__extension__ typedef __int128 wide_int;

long long mul_mod(long long a, long long b, long long m) {
  return static_cast<long long>(static_cast<wide_int>(a) * b % m);
}

long long pow_mod(long long base, long long exp, long long m) {
  long long result = 1 % m;
  base %= m;
  if (base < 0) base += m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

int require_n(const FamilySpec& spec) {
  if (!spec.N) throw std::invalid_argument(fmt::format("family {} needs N", to_string(spec.kind)));
  return *spec.N;
}

}  // namespace

std::string_view to_string(FamilyKind kind) {
  for (const auto& [k, name] : kNames)
    if (k == kind) return name;
  return "unknown";
}

FamilyKind parse_family_kind(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  throw std::invalid_argument(fmt::format("unknown family '{}'", name));
}

void FamilySpec::validate() const {
  switch (kind) {
    case FamilyKind::littlewood:
    case FamilyKind::digits_pi:
    case FamilyKind::binomial_pow:
    case FamilyKind::roots_of_unity:
      if (require_n(*this) < 1) throw std::invalid_argument("N must be at least 1");
      break;
    case FamilyKind::shrunk_power:
      if (require_n(*this) < 1) throw std::invalid_argument("N must be at least 1");
      if (!c || !(*c > 0.0)) throw std::invalid_argument("shrunk_power needs c > 0");
      break;
    case FamilyKind::fekete:
      if (!p) throw std::invalid_argument("fekete needs p");
      if (*p < 3 || !is_prime(*p)) throw std::invalid_argument("fekete needs an odd prime p");
      break;
    case FamilyKind::lehmer:
      break;
    case FamilyKind::custom:
      if (coeffs.size() < 2) throw std::invalid_argument("custom polynomial needs at least two coefficients");
      break;
  }
}

std::string FamilySpec::describe() const {
  std::string out(to_string(kind));
  if (N) out += fmt::format(" N={}", *N);
  if (p) out += fmt::format(" p={}", *p);
  if (c) out += fmt::format(" c={}", *c);
  if (seed) out += fmt::format(" seed={}", *seed);
  return out;
}

FamilyMember generate(const FamilySpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case FamilyKind::littlewood:
      return {littlewood(*spec.N, spec.seed.value_or(0)), 0};
    case FamilyKind::digits_pi:
      return {digits_pi(*spec.N), 0};
    case FamilyKind::fekete:
      return fekete(*spec.p);
    case FamilyKind::lehmer:
      return {lehmer(), 0};
    case FamilyKind::binomial_pow:
      return {binomial_pow(*spec.N), 0};
    case FamilyKind::shrunk_power:
      return {shrunk_power(*spec.N, *spec.c), 0};
    case FamilyKind::roots_of_unity:
      return {roots_of_unity(*spec.N), 0};
    case FamilyKind::custom:
      return {Polynomial(spec.coeffs), 0};
  }
  throw std::invalid_argument("unknown family");
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Polynomial littlewood(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("N must be at least 1");
  SplitMix64 rng(seed);
  std::vector<Complex> c(n + 1);
  for (int j = 0; j < n; ++j) c[j] = (rng.next() >> 63) ? -1.0 : 1.0;
  c[n] = 1.0;
  return Polynomial(std::move(c));
}

std::string_view pi_digit_table() { return kPiDigits; }

Polynomial digits_pi(int n) {
  if (n < 1 || n >= static_cast<int>(kPiDigits.size()))
    throw std::invalid_argument(fmt::format("digits_pi supports 1 ≤ N ≤ {}", kPiDigits.size() - 1));
  std::vector<Complex> c(n + 1);
  for (int j = 0; j <= n; ++j) c[n - j] = static_cast<double>(kPiDigits[j] - '0');
  return Polynomial(std::move(c));
}

bool is_prime(long long n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (long long d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

int legendre_symbol(long long a, long long p) {
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("Legendre symbol needs an odd prime");
  const long long r = pow_mod(a, (p - 1) / 2, p);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

FamilyMember fekete(long long p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("fekete needs an odd prime p");
  if (p > 1'000'003) throw std::invalid_argument("fekete degree too large");
  std::vector<Complex> c(static_cast<std::size_t>(p - 1));
  for (long long j = 1; j < p; ++j) c[j - 1] = static_cast<double>(legendre_symbol(j, p));
  return {Polynomial(std::move(c)), 1};
}

Polynomial lehmer() {
  return Polynomial({1.0, 1.0, 0.0, -1.0, -1.0, -1.0, -1.0, -1.0, 0.0, 1.0, 1.0});
}

Polynomial binomial_pow(int n) {
  if (n < 1) throw std::invalid_argument("N must be at least 1");
  if (n > 1000) throw std::invalid_argument("(z-1)^N coefficients overflow beyond N = 1000");
  std::vector<double> row{1.0};
  for (int k = 1; k <= n; ++k) {
    row.push_back(1.0);
    for (int j = k - 1; j > 0; --j) row[j] += row[j - 1];
  }
  std::vector<Complex> c(n + 1);
  for (int j = 0; j <= n; ++j) c[j] = ((n - j) % 2 == 0 ? 1.0 : -1.0) * row[j];
  return Polynomial(std::move(c));
}

Polynomial shrunk_power(int n, double c) {
  if (n < 1) throw std::invalid_argument("N must be at least 1");
  if (!(c > 0.0)) throw std::invalid_argument("c must be positive");
  std::vector<Complex> coeffs(n + 1, 0.0);
  coeffs[0] = -c;
  coeffs[n] = 1.0;
  return Polynomial(std::move(coeffs));
}

Polynomial roots_of_unity(int n) { return shrunk_power(n, 1.0); }

}  // namespace zerodist

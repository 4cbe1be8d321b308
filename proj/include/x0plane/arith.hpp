#pragma once

// Level-dependent integer invariants of Gamma_0(N).

#include <cstdint>
#include <vector>

namespace x0plane {

/// A cusp class of Gamma_0(N): all cusps a/c sharing the denominator c.
struct CuspClass {
  std::int64_t c;     // positive divisor of N
  std::int64_t count; // phi(gcd(c, N/c)) cusps in the class
  std::int64_t width; // N / (c * gcd(c, N/c))

  friend bool operator==(const CuspClass&, const CuspClass&) = default;
};

std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t euler_phi(std::int64_t n);

/// Prime factorisation as (prime, exponent) pairs with increasing primes.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

/// All positive divisors of n in increasing order.
std::vector<std::int64_t> divisors(std::int64_t n);

/// [SL_2(Z) : Gamma_0(N)] = N * prod_{p | N} (1 + 1/p).
std::int64_t index_mu(std::int64_t level);

/// floor(k * mu(N) / 12). A form in M_k(Gamma_0(N)) whose coefficients
/// a_0..a_B all vanish is identically zero.
std::int64_t sturm_bound(std::int64_t weight, std::int64_t level);

/// One class per divisor of N, ordered by c. Sum of count*width is mu(N).
std::vector<CuspClass> cusp_classes(std::int64_t level);

} // namespace x0plane

#include "x0plane/arith.hpp"

#include <numeric>
#include <stdexcept>

namespace x0plane {

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  for (const auto& [p, e] : factorize(n)) {
    result = result / p * (p - 1);
  }
  return result;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  if (n < 1) {
    throw std::invalid_argument("factorize: argument must be positive");
  }
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n < 1) {
    throw std::invalid_argument("divisors: argument must be positive");
  }
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::int64_t index_mu(std::int64_t level) {
  std::int64_t mu = level;
  for (const auto& [p, e] : factorize(level)) {
    mu = mu / p * (p + 1);
  }
  return mu;
}

std::int64_t sturm_bound(std::int64_t weight, std::int64_t level) {
  if (weight < 0) {
    throw std::invalid_argument("sturm_bound: negative weight");
  }
  return weight * index_mu(level) / 12;
}

std::vector<CuspClass> cusp_classes(std::int64_t level) {
  std::vector<CuspClass> out;
  for (std::int64_t c : divisors(level)) {
    const std::int64_t g = gcd(c, level / c);
    out.push_back({c, euler_phi(g), level / (c * g)});
  }
  return out;
}

} // namespace x0plane

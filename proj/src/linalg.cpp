#include "x0plane/linalg.hpp"

#include <optional>

namespace x0plane {

EchelonForm fraction_free_rref(IntMatrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  EchelonForm out;
  mpz_class prev = 1;
  mpz_class t;
  std::size_t r = 0;

  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    // Smallest nonzero candidate keeps intermediate minors short.
    std::optional<std::size_t> best;
    std::size_t best_size = 0;
    for (std::size_t i = r; i < rows; ++i) {
      if (sgn(m(i, col)) == 0) continue;
      const std::size_t size = mpz_sizeinbase(m(i, col).get_mpz_t(), 2);
      if (!best || size < best_size) {
        best = i;
        best_size = size;
      }
    }
    if (!best) continue;
    m.swap_rows(r, *best);
    const mpz_class piv = m(r, col);

    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const mpz_class factor = m(i, col);
      for (std::size_t j = 0; j < cols; ++j) {
        if (j == col) continue;
        mpz_class& x = m(i, j);
        const mpz_class& y = m(r, j);
        if (sgn(x) == 0 && (sgn(factor) == 0 || sgn(y) == 0)) continue;
        x *= piv;
        if (sgn(factor) != 0 && sgn(y) != 0) {
          mpz_mul(t.get_mpz_t(), factor.get_mpz_t(), y.get_mpz_t());
          x -= t;
        }
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, col) = 0;
    }
    prev = piv;
    out.pivots.push_back(col);
    ++r;
  }

  out.pivot_value = prev;
  out.reduced = std::move(m);
  return out;
}

IntMatrix clear_denominators(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (const auto& x : m.row(i)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(i, j) = m(i, j).get_num() * (l / m(i, j).get_den());
    }
  }
  return out;
}

IntVector primitive_part(IntVector v) {
  mpz_class g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0 || g == 1) return v;
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return v;
}

std::vector<IntVector> kernel(const IntMatrix& m) {
  const EchelonForm ef = fraction_free_rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : ef.pivots) is_pivot[p] = true;

  std::vector<IntVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    IntVector v(cols);
    v[free] = ef.pivot_value;
    for (std::size_t i = 0; i < ef.pivots.size(); ++i) {
      v[ef.pivots[i]] = -ef.reduced(i, free);
    }
    basis.push_back(primitive_part(std::move(v)));
  }
  return basis;
}

std::vector<IntVector> kernel(const RatMatrix& m) { return kernel(clear_denominators(m)); }

std::size_t rank(const IntMatrix& m) { return fraction_free_rref(m).rank(); }
std::size_t rank(const RatMatrix& m) { return rank(clear_denominators(m)); }

IntVector multiply(const IntMatrix& m, std::span<const mpz_class> v) {
  if (v.size() != m.cols()) {
    throw std::invalid_argument("multiply: dimension mismatch");
  }
  IntVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      mpz_addmul(out[i].get_mpz_t(), m(i, j).get_mpz_t(), v[j].get_mpz_t());
    }
  }
  return out;
}

} // namespace x0plane

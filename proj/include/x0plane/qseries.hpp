#pragma once

// Exact truncated power series in q.
//
// A QSeries knows the coefficients at indices 0..prec()-1 and nothing
// beyond. Binary operations return a result whose precision is the minimum
// of the operand precisions; no operation extends precision on its own.
//
// Storage is a vector of integer numerators over one positive common
// denominator kept in lowest terms, so that products of integral series
// (the common case for eta quotients and Eisenstein series) never touch
// rational canonicalisation.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace x0plane {

class QSeries {
public:
  QSeries() = default;

  /// The zero series known to `prec` coefficients.
  explicit QSeries(std::size_t prec);

  static QSeries from_integers(std::vector<mpz_class> coeffs);
  static QSeries from_rationals(std::span<const mpq_class> coeffs);
  static QSeries constant(const mpq_class& value, std::size_t prec);
  /// Numerators over a common denominator; the result is reduced.
  static QSeries from_parts(std::vector<mpz_class> numerators, mpz_class denominator);

  std::size_t prec() const { return num_.size(); }

  /// Coefficient of q^n. Throws PrecisionError when n >= prec().
  mpq_class coeff(std::size_t n) const;
  std::vector<mpq_class> coefficients() const;

  const std::vector<mpz_class>& numerators() const { return num_; }
  const mpz_class& denominator() const { return den_; }
  bool is_integral() const { return den_ == 1; }

  /// Smallest n with a nonzero coefficient, or nullopt when every known
  /// coefficient vanishes ("zero to precision").
  std::optional<std::size_t> order() const;
  bool is_zero() const { return !order().has_value(); }

  /// Keep the first min(prec, prec()) coefficients.
  QSeries truncate(std::size_t prec) const;

  /// Multiply by q^k: known coefficients move up by k, precision grows by k.
  QSeries shift(std::size_t k) const;

  QSeries& operator+=(const QSeries& rhs);
  QSeries& operator-=(const QSeries& rhs);
  QSeries& operator*=(const QSeries& rhs);

  friend QSeries operator+(QSeries lhs, const QSeries& rhs) { return lhs += rhs; }
  friend QSeries operator-(QSeries lhs, const QSeries& rhs) { return lhs -= rhs; }
  friend QSeries operator*(const QSeries& lhs, const QSeries& rhs);
  QSeries operator-() const;

  /// Exact equality of precision and every coefficient.
  friend bool operator==(const QSeries& a, const QSeries& b);

  /// "c0, c1, ..." with rationals written as p/q.
  std::string to_string() const;

private:
  void reduce();

  std::vector<mpz_class> num_;
  mpz_class den_{1};
};

QSeries add(const QSeries& a, const QSeries& b);
QSeries mul(const QSeries& a, const QSeries& b);
QSeries scale(const QSeries& a, const mpq_class& r);
/// a^e at a's precision; e = 0 gives the constant 1.
QSeries pow(const QSeries& a, std::uint64_t e);
/// Truncated multiplicative inverse; requires a nonzero constant term.
QSeries reciprocal(const QSeries& a);

/// True when a and b agree on their shared precision.
bool agree_to_shared_precision(const QSeries& a, const QSeries& b);

/// prod_{n>=1} (1 - q^n) by the pentagonal number theorem.
QSeries euler_product(std::size_t prec);

/// (prod_{n>=1} (1 - q^{delta n}))^r truncated to prec.
QSeries euler_power(std::int64_t delta, std::int64_t r, std::size_t prec);

/// Bernoulli number B_n (B_1 = -1/2 convention).
mpq_class bernoulli(unsigned n);

/// Normalised Eisenstein series E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n.
/// Supports every even k >= 4; other k throw ValidationError.
QSeries eisenstein(int k, std::size_t prec);

/// f(z) -> f(d z). Output precision d * a.prec(), capped at `cap` if given.
QSeries v_operator(const QSeries& a, std::int64_t d,
                   std::optional<std::size_t> cap = std::nullopt);

} // namespace x0plane

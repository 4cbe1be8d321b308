#include "x0plane/qseries.hpp"

#include "x0plane/error.hpp"

#include <algorithm>
#include <sstream>

namespace x0plane {

QSeries::QSeries(std::size_t prec) : num_(prec) {}

QSeries QSeries::from_integers(std::vector<mpz_class> coeffs) {
  QSeries s;
  s.num_ = std::move(coeffs);
  return s;
}

QSeries QSeries::from_parts(std::vector<mpz_class> numerators, mpz_class denominator) {
  if (denominator == 0) {
    throw std::invalid_argument("QSeries: zero denominator");
  }
  QSeries s;
  s.num_ = std::move(numerators);
  s.den_ = std::move(denominator);
  if (s.den_ < 0) {
    s.den_ = -s.den_;
    for (auto& c : s.num_) c = -c;
  }
  s.reduce();
  return s;
}

QSeries QSeries::from_rationals(std::span<const mpq_class> coeffs) {
  mpz_class den = 1;
  for (const auto& c : coeffs) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  std::vector<mpz_class> num;
  num.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    num.push_back(c.get_num() * (den / c.get_den()));
  }
  return from_parts(std::move(num), std::move(den));
}

QSeries QSeries::constant(const mpq_class& value, std::size_t prec) {
  std::vector<mpq_class> c(prec);
  if (prec > 0) c[0] = value;
  return from_rationals(c);
}

mpq_class QSeries::coeff(std::size_t n) const {
  if (n >= num_.size()) throw PrecisionError();
  mpq_class q(num_[n], den_);
  q.canonicalize();
  return q;
}

std::vector<mpq_class> QSeries::coefficients() const {
  std::vector<mpq_class> out;
  out.reserve(num_.size());
  for (std::size_t n = 0; n < num_.size(); ++n) out.push_back(coeff(n));
  return out;
}

std::optional<std::size_t> QSeries::order() const {
  for (std::size_t n = 0; n < num_.size(); ++n) {
    if (sgn(num_[n]) != 0) return n;
  }
  return std::nullopt;
}

QSeries QSeries::truncate(std::size_t prec) const {
  if (prec >= num_.size()) return *this;
  std::vector<mpz_class> num(num_.begin(), num_.begin() + static_cast<std::ptrdiff_t>(prec));
  return from_parts(std::move(num), den_);
}

QSeries QSeries::shift(std::size_t k) const {
  QSeries s;
  s.num_.resize(num_.size() + k);
  std::copy(num_.begin(), num_.end(), s.num_.begin() + static_cast<std::ptrdiff_t>(k));
  s.den_ = den_;
  return s;
}

QSeries& QSeries::operator+=(const QSeries& rhs) {
  const std::size_t prec = std::min(num_.size(), rhs.num_.size());
  num_.resize(prec);
  if (den_ == rhs.den_) {
    for (std::size_t n = 0; n < prec; ++n) num_[n] += rhs.num_[n];
  } else {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), den_.get_mpz_t(), rhs.den_.get_mpz_t());
    const mpz_class ka = l / den_;
    const mpz_class kb = l / rhs.den_;
    for (std::size_t n = 0; n < prec; ++n) {
      num_[n] *= ka;
      mpz_addmul(num_[n].get_mpz_t(), rhs.num_[n].get_mpz_t(), kb.get_mpz_t());
    }
    den_ = l;
  }
  reduce();
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& rhs) { return *this += -rhs; }

QSeries QSeries::operator-() const {
  QSeries s = *this;
  for (auto& c : s.num_) c = -c;
  return s;
}

QSeries& QSeries::operator*=(const QSeries& rhs) {
  *this = *this * rhs;
  return *this;
}

QSeries operator*(const QSeries& lhs, const QSeries& rhs) {
  const std::size_t prec = std::min(lhs.prec(), rhs.prec());
  std::vector<mpz_class> out(prec);
  for (std::size_t i = 0; i < prec; ++i) {
    const mpz_srcptr a = lhs.num_[i].get_mpz_t();
    if (mpz_sgn(a) == 0) continue;
    for (std::size_t j = 0; i + j < prec; ++j) {
      const mpz_srcptr b = rhs.num_[j].get_mpz_t();
      if (mpz_sgn(b) == 0) continue;
      mpz_addmul(out[i + j].get_mpz_t(), a, b);
    }
  }
  return QSeries::from_parts(std::move(out), lhs.den_ * rhs.den_);
}

bool operator==(const QSeries& a, const QSeries& b) {
  return a.den_ == b.den_ && a.num_ == b.num_;
}

std::string QSeries::to_string() const {
  std::ostringstream os;
  for (std::size_t n = 0; n < num_.size(); ++n) {
    if (n) os << ", ";
    os << coeff(n).get_str();
  }
  return os.str();
}

void QSeries::reduce() {
  if (den_ == 1) return;
  mpz_class g = den_;
  for (const auto& c : num_) {
    if (sgn(c) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return;
  }
  if (std::all_of(num_.begin(), num_.end(), [](const mpz_class& c) { return sgn(c) == 0; })) {
    den_ = 1;
    return;
  }
  for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
}

QSeries add(const QSeries& a, const QSeries& b) { return a + b; }
QSeries mul(const QSeries& a, const QSeries& b) { return a * b; }

QSeries scale(const QSeries& a, const mpq_class& r) {
  std::vector<mpz_class> num = a.numerators();
  for (auto& c : num) c *= r.get_num();
  return QSeries::from_parts(std::move(num), a.denominator() * r.get_den());
}

QSeries pow(const QSeries& a, std::uint64_t e) {
  QSeries result = QSeries::constant(1, a.prec());
  QSeries base = a;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

QSeries reciprocal(const QSeries& a) {
  const std::size_t prec = a.prec();
  if (prec == 0) return a;
  const auto& an = a.numerators();
  if (sgn(an[0]) == 0) {
    throw std::domain_error("reciprocal: constant term vanishes");
  }
  // b_n = -(1/a_0) sum_{k=1..n} a_k b_{n-k}; integral when a_0 is a unit.
  if (a.is_integral() && (an[0] == 1 || an[0] == -1)) {
    const mpz_class& u = an[0];
    std::vector<mpz_class> b(prec);
    b[0] = u;
    for (std::size_t n = 1; n < prec; ++n) {
      mpz_class acc = 0;
      for (std::size_t k = 1; k <= n; ++k) {
        if (sgn(an[k]) == 0) continue;
        mpz_addmul(acc.get_mpz_t(), an[k].get_mpz_t(), b[n - k].get_mpz_t());
      }
      b[n] = -acc * u;
    }
    return QSeries::from_integers(std::move(b));
  }
  const std::vector<mpq_class> ac = a.coefficients();
  std::vector<mpq_class> b(prec);
  const mpq_class inv0 = 1 / ac[0];
  b[0] = inv0;
  for (std::size_t n = 1; n < prec; ++n) {
    mpq_class acc = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      if (sgn(ac[k]) == 0) continue;
      acc += ac[k] * b[n - k];
    }
    b[n] = -acc * inv0;
  }
  return QSeries::from_rationals(b);
}

bool agree_to_shared_precision(const QSeries& a, const QSeries& b) {
  const std::size_t prec = std::min(a.prec(), b.prec());
  return a.truncate(prec) == b.truncate(prec);
}

QSeries euler_product(std::size_t prec) {
  std::vector<mpz_class> c(prec);
  // sum over k in Z of (-1)^k q^{k(3k-1)/2}
  if (prec > 0) c[0] = 1;
  for (std::size_t k = 1; k * (3 * k - 1) / 2 < prec; ++k) {
    const int sign = (k % 2 == 0) ? 1 : -1;
    c[k * (3 * k - 1) / 2] += sign;
    if (k * (3 * k + 1) / 2 < prec) c[k * (3 * k + 1) / 2] += sign;
  }
  return QSeries::from_integers(std::move(c));
}

QSeries euler_power(std::int64_t delta, std::int64_t r, std::size_t prec) {
  if (delta < 1) {
    throw std::invalid_argument("euler_power: delta must be positive");
  }
  const auto d = static_cast<std::size_t>(delta);
  const std::size_t inner = (prec + d - 1) / d;
  QSeries base = euler_product(inner);
  if (r < 0) base = reciprocal(base);
  const auto e = static_cast<std::uint64_t>(r < 0 ? -r : r);
  return v_operator(pow(base, e), delta, prec);
}

mpq_class bernoulli(unsigned n) {
  // B_m = -1/(m+1) sum_{j<m} binom(m+1, j) B_j
  std::vector<mpq_class> b(n + 1);
  b[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    mpq_class acc = 0;
    mpz_class binom = 1; // binom(m+1, j)
    for (unsigned j = 0; j < m; ++j) {
      acc += binom * b[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    b[m] = -acc / (m + 1);
  }
  return b[n];
}

QSeries eisenstein(int k, std::size_t prec) {
  if (k < 4 || k % 2 != 0) {
    throw ValidationError("unsupported Eisenstein weight");
  }
  const mpq_class factor = mpq_class(-2 * k) / bernoulli(static_cast<unsigned>(k));
  std::vector<mpz_class> sigma(prec);
  for (std::size_t d = 1; d < prec; ++d) {
    mpz_class dp;
    mpz_ui_pow_ui(dp.get_mpz_t(), d, static_cast<unsigned long>(k - 1));
    for (std::size_t n = d; n < prec; n += d) sigma[n] += dp;
  }
  std::vector<mpz_class> num(prec);
  for (std::size_t n = 1; n < prec; ++n) num[n] = sigma[n] * factor.get_num();
  if (prec > 0) num[0] = factor.get_den();
  return QSeries::from_parts(std::move(num), factor.get_den());
}

QSeries v_operator(const QSeries& a, std::int64_t d, std::optional<std::size_t> cap) {
  if (d < 1) {
    throw std::invalid_argument("v_operator: d must be positive");
  }
  const auto step = static_cast<std::size_t>(d);
  std::size_t prec = a.prec() * step;
  if (cap) prec = std::min(prec, *cap);
  std::vector<mpz_class> num(prec);
  const auto& src = a.numerators();
  for (std::size_t n = 0; n * step < prec; ++n) num[n * step] = src[n];
  return QSeries::from_parts(std::move(num), a.denominator());
}

} // namespace x0plane

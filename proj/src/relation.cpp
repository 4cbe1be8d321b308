#include "x0plane/relation.hpp"

#include "x0plane/arith.hpp"
#include "x0plane/error.hpp"

#include <algorithm>
#include <sstream>

namespace x0plane {

std::vector<Monomial> monomials(int l) {
  if (l < 0) throw std::invalid_argument("monomials: negative degree");
  std::vector<Monomial> out;
  out.reserve(static_cast<std::size_t>((l + 1) * (l + 2) / 2));
  for (int x = 0; x <= l; ++x) {
    for (int y = 0; y <= l - x; ++y) out.push_back({x, y, l - x - y});
  }
  return out;
}

HomogPoly3 HomogPoly3::from_coefficients(int degree, std::span<const mpz_class> coeffs) {
  const auto monos = monomials(degree);
  if (coeffs.size() != monos.size()) {
    throw std::invalid_argument("HomogPoly3: coefficient count does not match degree");
  }
  std::vector<Term> terms;
  for (std::size_t i = 0; i < monos.size(); ++i) {
    if (sgn(coeffs[i]) != 0) terms.push_back({monos[i], coeffs[i]});
  }
  return from_terms(degree, std::move(terms));
}

HomogPoly3 HomogPoly3::from_terms(int degree, std::vector<Term> terms) {
  std::erase_if(terms, [](const Term& t) { return sgn(t.coeff) == 0; });
  if (terms.empty()) throw std::invalid_argument("HomogPoly3: zero polynomial");
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i].mono == terms[i - 1].mono) {
      throw std::invalid_argument("HomogPoly3: repeated monomial");
    }
  }
  mpz_class g = 0;
  for (const Term& t : terms) {
    if (t.mono.degree() != degree || t.mono.x < 0 || t.mono.y < 0 || t.mono.z < 0) {
      throw std::invalid_argument("HomogPoly3: monomial of wrong degree");
    }
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
  }
  if (terms.front().coeff < 0) g = -g;
  for (Term& t : terms) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), g.get_mpz_t());

  HomogPoly3 p;
  p.degree_ = degree;
  p.terms_ = std::move(terms);
  return p;
}

mpz_class HomogPoly3::coeff(const Monomial& m) const {
  for (const Term& t : terms_) {
    if (t.mono == m) return t.coeff;
  }
  return 0;
}

int HomogPoly3::max_z_degree() const {
  int z = 0;
  for (const Term& t : terms_) z = std::max(z, t.mono.z);
  return z;
}

std::string HomogPoly3::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    mpz_class c = it->coeff;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    c = abs(c);
    std::vector<std::string> vars;
    const std::pair<char, int> parts[] = {{'X', it->mono.x}, {'Y', it->mono.y}, {'Z', it->mono.z}};
    for (const auto& [name, e] : parts) {
      if (e == 0) continue;
      vars.push_back(e == 1 ? std::string(1, name) : std::string(1, name) + "^" + std::to_string(e));
    }
    bool need_star = false;
    if (c != 1 || vars.empty()) {
      os << c.get_str();
      need_star = true;
    }
    for (const auto& v : vars) {
      if (need_star) os << "*";
      os << v;
      need_star = true;
    }
    first = false;
  }
  return os.str();
}

PowerTable::PowerTable(QSeries f, QSeries g, QSeries h)
    : prec_(std::min({f.prec(), g.prec(), h.prec()})) {
  powers_[0] = {QSeries::constant(1, prec_), f.truncate(prec_)};
  powers_[1] = {QSeries::constant(1, prec_), g.truncate(prec_)};
  powers_[2] = {QSeries::constant(1, prec_), h.truncate(prec_)};
}

const QSeries& PowerTable::power(int which, int e) {
  auto& table = powers_[which];
  while (static_cast<int>(table.size()) <= e) table.push_back(table.back() * table[1]);
  return table[static_cast<std::size_t>(e)];
}

QSeries PowerTable::product(const Monomial& m) {
  const auto key = std::make_pair(m.x, m.y);
  auto it = fg_.find(key);
  if (it == fg_.end()) {
    QSeries fg = m.y == 0 ? power(0, m.x) : (m.x == 0 ? power(1, m.y) : power(0, m.x) * power(1, m.y));
    it = fg_.emplace(key, std::move(fg)).first;
  }
  if (m.z == 0) return it->second;
  return it->second * power(2, m.z);
}

RatMatrix coefficient_matrix(PowerTable& table, int l, std::size_t rows) {
  if (rows > table.prec()) throw PrecisionError();
  const auto monos = monomials(l);
  RatMatrix m(rows, monos.size());
  for (std::size_t col = 0; col < monos.size(); ++col) {
    const QSeries s = table.product(monos[col]);
    for (std::size_t n = 0; n < rows; ++n) m(n, col) = s.coeff(n);
  }
  return m;
}

RatMatrix coefficient_matrix(const QSeries& f, const QSeries& g, const QSeries& h, int l, std::size_t rows) {
  if (f.prec() < rows || g.prec() < rows || h.prec() < rows) throw PrecisionError();
  PowerTable table(f.truncate(rows), g.truncate(rows), h.truncate(rows));
  return coefficient_matrix(table, l, rows);
}

KernelResult kernel_at_degree(PowerTable& table, int l, std::size_t rows) {
  KernelResult k;
  k.degree = l;
  k.rows_used = rows;
  k.basis = kernel(coefficient_matrix(table, l, rows));
  k.dimension = k.basis.size();
  return k;
}

std::size_t relation_rows(int l, int weight, std::int64_t level, std::size_t extra_rows) {
  return static_cast<std::size_t>(sturm_bound(static_cast<std::int64_t>(l) * weight, level)) + 1 + extra_rows;
}

int degree_bound(int weight, std::int64_t level) {
  return static_cast<int>(static_cast<std::int64_t>(weight) * index_mu(level) / 12);
}

RelationResult find_min_relation(const SeriesSource& f, const SeriesSource& g, const SeriesSource& h,
                                 std::int64_t level, int weight, RelationOptions opts) {
  RelationResult result;
  result.bound = degree_bound(weight, level);
  if (result.bound < 2) {
    throw Error("m*mu(N)/12 must be at least 2 for three independent forms");
  }
  const std::size_t max_rows = relation_rows(result.bound, weight, level, opts.extra_rows);
  auto build = [&](std::size_t prec) { return PowerTable(f(prec), g(prec), h(prec)); };
  PowerTable table = build(relation_rows(std::min(result.bound, 4), weight, level, opts.extra_rows));

  for (int l = 1; l <= result.bound; ++l) {
    const std::size_t rows = relation_rows(l, weight, level, opts.extra_rows);
    if (rows > table.prec()) table = build(std::max(rows, std::min(2 * table.prec(), max_rows)));
    KernelResult k = kernel_at_degree(table, l, rows);
    result.sweep.push_back(k);
    if (k.dimension == 0) continue;
    if (l == 1) throw DependentFormsError();
    if (k.dimension > 1) throw SoundnessError("kernel dimension > 1 at minimal degree");
    result.poly = HomogPoly3::from_coefficients(l, k.basis.front());
    result.kernel = std::move(k);
    return result;
  }
  throw NoRelationError();
}

RelationResult find_min_relation(const QSeries& f, const QSeries& g, const QSeries& h,
                                 std::int64_t level, int weight, RelationOptions opts) {
  auto source = [](const QSeries& s) {
    return [&s](std::size_t prec) {
      if (s.prec() < prec) throw PrecisionError();
      return s.truncate(prec);
    };
  };
  return find_min_relation(SeriesSource(source(f)), SeriesSource(source(g)), SeriesSource(source(h)),
                           level, weight, opts);
}

RelationResult find_min_relation(const Form& f, const Form& g, const Form& h,
                                 std::int64_t level, int weight, RelationOptions opts) {
  for (const Form* form : {&f, &g, &h}) {
    if (form->level != level || form->weight != weight) {
      throw ValidationError("form '" + form->name + "' does not have level " + std::to_string(level) +
                            " and weight " + std::to_string(weight));
    }
    validate_form(*form);
  }
  auto source = [](const Form& form) { return [&form](std::size_t prec) { return q_expansion(form, prec); }; };
  return find_min_relation(SeriesSource(source(f)), SeriesSource(source(g)), SeriesSource(source(h)),
                           level, weight, opts);
}

HomogPoly3 relation_at_degree(PowerTable& table, int l, std::size_t rows) {
  const KernelResult k = kernel_at_degree(table, l, rows);
  if (k.dimension != 1) {
    throw SoundnessError("kernel dimension " + std::to_string(k.dimension) + " at degree " + std::to_string(l));
  }
  return HomogPoly3::from_coefficients(l, k.basis.front());
}

QSeries evaluate(const HomogPoly3& p, const QSeries& f, const QSeries& g, const QSeries& h) {
  PowerTable table(f, g, h);
  QSeries sum(table.prec());
  for (const auto& term : p.terms()) {
    sum += scale(table.product(term.mono), mpq_class(term.coeff));
  }
  return sum;
}

bool verify_relation(const HomogPoly3& p, const Form& f, const Form& g, const Form& h, std::size_t slack) {
  const std::size_t prec = relation_rows(p.degree(), f.weight, f.level, slack);
  return evaluate(p, q_expansion(f, prec), q_expansion(g, prec), q_expansion(h, prec)).is_zero();
}

mpq_class LambdaPolynomial::evaluate(std::span<const mpq_class> lambda) const {
  if (lambda.size() != variables) {
    throw std::invalid_argument("LambdaPolynomial: wrong number of variables");
  }
  mpq_class sum = 0;
  for (const auto& [exps, c] : terms) {
    mpq_class term = c;
    for (std::size_t j = 0; j < variables; ++j) {
      for (int e = 0; e < exps[j]; ++e) term *= lambda[j];
    }
    sum += term;
  }
  return sum;
}

LambdaPolynomial b_coefficient_polynomial(std::span<const QSeries> basis, const Monomial& alpha, std::size_t n) {
  const std::size_t s = basis.size();
  if (s < 2) throw std::invalid_argument("b_coefficient_polynomial: basis needs f and g");
  for (const QSeries& b : basis) {
    if (b.prec() <= n) throw PrecisionError();
  }
  const std::size_t prec = n + 1;
  std::vector<std::vector<QSeries>> powers(s);
  auto power = [&](std::size_t j, int e) -> const QSeries& {
    auto& table = powers[j];
    if (table.empty()) table.push_back(QSeries::constant(1, prec));
    while (static_cast<int>(table.size()) <= e) table.push_back(table.back() * basis[j].truncate(prec));
    return table[static_cast<std::size_t>(e)];
  };

  mpz_class fact_a2;
  mpz_fac_ui(fact_a2.get_mpz_t(), static_cast<unsigned long>(alpha.z));

  LambdaPolynomial out;
  out.variables = s;
  std::vector<int> parts(s, 0);
  // Enumerate compositions of alpha.z into s nonnegative parts.
  auto visit = [&](auto&& self, std::size_t j, int remaining) -> void {
    if (j + 1 == s) {
      parts[j] = remaining;
      mpz_class denom = 1;
      for (int p : parts) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(p));
        denom *= f;
      }
      QSeries prod = power(0, alpha.x + parts[0]) * power(1, alpha.y + parts[1]);
      for (std::size_t k = 2; k < s; ++k) {
        if (parts[k] > 0) prod = prod * power(k, parts[k]);
      }
      const mpq_class c = prod.coeff(n) * mpq_class(fact_a2 / denom);
      if (c != 0) out.terms[parts] = c;
      return;
    }
    for (int i = 0; i <= remaining; ++i) {
      parts[j] = i;
      self(self, j + 1, remaining - i);
    }
  };
  visit(visit, 0, alpha.z);
  return out;
}

} // namespace x0plane

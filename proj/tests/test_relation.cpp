#include "x0plane/error.hpp"
#include "x0plane/relation.hpp"

#include "doctest.h"

#include <algorithm>
#include <random>

using namespace x0plane;

namespace {

Form eta(std::string name, std::int64_t level, std::map<std::int64_t, std::int64_t> e) {
  return make_eta_form(std::move(name), level, std::move(e));
}

HomogPoly3 poly(int degree, std::vector<HomogPoly3::Term> terms) {
  return HomogPoly3::from_terms(degree, std::move(terms));
}

// Gamma_0(2), weight 12.
const Form D = eta("Delta", 2, {{1, 24}});
const Form D2 = eta("Delta2z", 2, {{2, 24}});
const Form R = eta("eta48/eta2z24", 2, {{1, 48}, {2, -24}});

// Level 1, weight 24.
const Form DD = eta("Delta^2", 1, {{1, 48}});
const Form E4_6 = make_form("E4^6", 1, {Atom{1, {EisensteinFactor{4, 1, 6}}}});
const Form DE6 = make_form("Delta*E6^2", 1, {Atom{1, {Factor{EtaQuotient{1, {{1, 24}}}}, EisensteinFactor{6, 1, 2}}}});

} // namespace

TEST_CASE("monomials follow the lexicographic order") {
  CHECK(monomials(1) == std::vector<Monomial>{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  CHECK(monomials(2) == std::vector<Monomial>{{0, 0, 2}, {0, 1, 1}, {0, 2, 0}, {1, 0, 1}, {1, 1, 0}, {2, 0, 0}});
  CHECK(monomials(6).size() == 28);
  for (int l = 1; l <= 9; ++l) {
    std::vector<Monomial> brute;
    for (int x = 0; x <= l; ++x)
      for (int y = 0; y <= l; ++y)
        for (int z = 0; z <= l; ++z)
          if (x + y + z == l) brute.push_back({x, y, z});
    std::sort(brute.begin(), brute.end(), [](const Monomial& a, const Monomial& b) {
      return std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z);
    });
    CHECK(monomials(l) == brute);
  }
}

TEST_CASE("HomogPoly3 normalisation") {
  const HomogPoly3 p = poly(2, {{{2, 0, 0}, 4}, {{0, 1, 1}, -4}});
  CHECK(p.terms().front().mono == Monomial{0, 1, 1});
  CHECK(p.coeff({0, 1, 1}) == 1);
  CHECK(p.coeff({2, 0, 0}) == -1);
  CHECK(p.to_string() == "-X^2 + Y*Z");
  CHECK(p == poly(2, {{{2, 0, 0}, 1}, {{0, 1, 1}, -1}}));
  CHECK(p.max_z_degree() == 1);
  CHECK_THROWS(poly(2, {}));
  CHECK_THROWS(poly(2, {{{1, 0, 0}, 1}}));
}

TEST_CASE("coefficient_matrix columns are monomial products") {
  const std::size_t rows = 8;
  const QSeries f = QSeries::constant(1, rows);
  const QSeries g = q_expansion(D, rows);
  const QSeries h = q_expansion(R, rows);
  const RatMatrix m1 = coefficient_matrix(f, g, h, 1, rows);
  for (std::size_t n = 0; n < rows; ++n) CHECK(m1(n, 2) == f.coeff(n));
  const RatMatrix m2 = coefficient_matrix(f, g, h, 2, rows);
  const QSeries gh = g * h;
  for (std::size_t n = 0; n < rows; ++n) CHECK(m2(n, 1) == gh.coeff(n));
  CHECK_THROWS_AS(coefficient_matrix(f, g, h.truncate(3), 2, rows), PrecisionError);
}

TEST_CASE("degree-2 kernel for (Delta, Delta(2z), eta^48/eta(2z)^24)") {
  const std::size_t rows = 7;
  PowerTable t(q_expansion(D, rows), q_expansion(D2, rows), q_expansion(R, rows));
  const KernelResult k = kernel_at_degree(t, 2, rows);
  REQUIRE(k.dimension == 1);
  CHECK(HomogPoly3::from_coefficients(2, k.basis[0]) == poly(2, {{{2, 0, 0}, 1}, {{0, 1, 1}, -1}}));
}

TEST_CASE("find_min_relation on the pinned triples") {
  SUBCASE("Gamma_0(2), weight 12") {
    const auto r = find_min_relation(D, D2, R, 2, 12);
    CHECK(r.poly == poly(2, {{{2, 0, 0}, 1}, {{0, 1, 1}, -1}}));
    CHECK(r.sweep.size() == 2);
    CHECK(r.sweep[0].dimension == 0);
    CHECK(r.kernel.dimension == 1);
    CHECK(r.kernel.rows_used == 7);
    CHECK(verify_relation(r.poly, D, D2, R, 10));
  }
  SUBCASE("Gamma_0(2), weight 24 Veronese") {
    const Form f = eta("Delta^2", 2, {{1, 48}});
    const Form g = eta("Delta(2z)^2", 2, {{2, 48}});
    const Form h = eta("eta2z^96/eta^48", 2, {{1, -48}, {2, 96}});
    const auto r = find_min_relation(f, g, h, 2, 24);
    CHECK(r.poly == poly(2, {{{0, 2, 0}, 1}, {{1, 0, 1}, -1}}));
    CHECK(verify_relation(r.poly, f, g, h, 10));
  }
  SUBCASE("level 1, weight 24") {
    const auto r = find_min_relation(DD, E4_6, DE6, 1, 24);
    const HomogPoly3 expected =
        poly(2, {{{1, 1, 0}, 1}, {{0, 0, 2}, -1}, {{1, 0, 1}, -3456}, {{2, 0, 0}, -2985984}});
    CHECK(r.poly == expected);
    // Series oracle: P(f, g, h) vanishes to three times the Sturm bound.
    const std::size_t prec = 3 * static_cast<std::size_t>(sturm_bound(48, 1)) + 1;
    const QSeries value = evaluate(expected, q_expansion(DD, prec), q_expansion(E4_6, prec), q_expansion(DE6, prec));
    CHECK(value.prec() == prec);
    CHECK(value.is_zero());
    CHECK(verify_relation(expected, DD, E4_6, DE6, 10));
  }
}

TEST_CASE("find_min_relation errors") {
  const std::vector<mpq_class> c = {2};
  const std::vector<Form> one = {D};
  const Form twice = linear_combination("2Delta", c, one);
  CHECK_THROWS_AS(find_min_relation(D, twice, D2, 2, 12), DependentFormsError);
  CHECK_THROWS_WITH(find_min_relation(D, D, D2, 2, 12), "forms not independent");
  CHECK_THROWS_AS(find_min_relation(D, D2, R, 2, 24), ValidationError);
}

TEST_CASE("verify_relation rejects a perturbed polynomial") {
  const HomogPoly3 bad = poly(2, {{{2, 0, 0}, 2}, {{0, 1, 1}, -1}});
  CHECK_FALSE(verify_relation(bad, D, D2, R, 10));
}

TEST_CASE("Sturm stability: extra rows give the same polynomial") {
  const auto r = find_min_relation(D, D2, R, 2, 12);
  const auto r16 = find_min_relation(D, D2, R, 2, 12, {16});
  CHECK(r.poly == r16.poly);
  const std::size_t rows = relation_rows(2, 12, 2, 16);
  PowerTable t(q_expansion(D, rows), q_expansion(D2, rows), q_expansion(R, rows));
  CHECK(relation_at_degree(t, 2, rows) == r.poly);
}

TEST_CASE("b_coefficient_polynomial") {
  const std::size_t prec = 12;
  const std::vector<QSeries> basis = {q_expansion(D, prec), q_expansion(D2, prec), q_expansion(R, prec)};

  SUBCASE("alpha_2 = 0 gives a constant") {
    const auto b = b_coefficient_polynomial(basis, {1, 1, 0}, 5);
    REQUIRE(b.terms.size() == 1);
    CHECK(b.terms.begin()->first == std::vector<int>{0, 0, 0});
    CHECK(b.terms.begin()->second == (basis[0] * basis[1]).coeff(5));
  }
  SUBCASE("linear case") {
    const std::size_t n = 4;
    const auto b = b_coefficient_polynomial(basis, {0, 0, 1}, n);
    CHECK(b.terms.at({1, 0, 0}) == basis[0].coeff(n));
    CHECK(b.terms.at({0, 1, 0}) == basis[1].coeff(n));
    CHECK(b.terms.at({0, 0, 1}) == basis[2].coeff(n));
  }
  SUBCASE("insufficient precision") {
    CHECK_THROWS_AS(b_coefficient_polynomial(basis, {0, 0, 2}, prec), PrecisionError);
  }
}

TEST_CASE("B-polynomial evaluation equals direct expansion") {
  // Weight-24 family on Gamma_0(2): eta(z)^{24j} eta(2z)^{48-24j}, j = -2..4.
  std::vector<Form> fam;
  for (int j : {2, 0, -2, -1, 1, 3, 4}) fam.push_back(eta("b" + std::to_string(j), 2, {{1, 24 * j}, {2, 48 - 24 * j}}));
  const std::size_t prec = 14;
  std::vector<QSeries> basis;
  for (const Form& f : fam) basis.push_back(q_expansion(f, prec));

  std::mt19937_64 rng(2718);
  std::uniform_int_distribution<int> lam(-4, 4), deg(1, 3), idx(0, 13), sz(3, 7);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t s = static_cast<std::size_t>(sz(rng));
    const std::span<const QSeries> sub(basis.data(), s);
    const int l = deg(rng);
    std::uniform_int_distribution<int> part(0, l);
    const int x = part(rng);
    const int y = std::uniform_int_distribution<int>(0, l - x)(rng);
    const Monomial alpha{x, y, l - x - y};
    const auto n = static_cast<std::size_t>(idx(rng));
    std::vector<mpq_class> lambda(s);
    for (auto& v : lambda) v = lam(rng);

    QSeries h(prec);
    for (std::size_t j = 0; j < s; ++j) h += scale(sub[j], lambda[j]);
    const QSeries direct = pow(sub[0], x) * pow(sub[1], y) * pow(h, alpha.z);
    CHECK(b_coefficient_polynomial(sub, alpha, n).evaluate(lambda) == direct.coeff(n));
    ++checked;
  }
  CHECK(checked >= 100);
}

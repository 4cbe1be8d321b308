#pragma once

// Minimal homogeneous relation P(f, g, h) = 0 among three forms of equal
// weight m on Gamma_0(N).
//
// For a trial degree l the unknowns are the coefficients a_alpha of the
// monomials X^a0 Y^a1 Z^a2 (X <-> f, Y <-> g, Z <-> h) with |alpha| = l. Row n
// of the linear system is the q^n coefficient of sum a_alpha f^a0 g^a1 h^a2.
// Each product lies in M_{lm}(Gamma_0(N)), so the rows n = 0..sturm_bound(lm, N)
// already cut out the exact solution space; the truncated kernel is the
// space of true relations of degree l.

#include "x0plane/forms.hpp"
#include "x0plane/linalg.hpp"
#include "x0plane/qseries.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace x0plane {

/// Exponent triple of X^x Y^y Z^z. The default ordering is the
/// lexicographic one in which (0,0,l) < (0,1,l-1) < ... < (l,0,0).
struct Monomial {
  int x = 0;
  int y = 0;
  int z = 0;

  int degree() const { return x + y + z; }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// All monomials of degree l in increasing lexicographic order.
std::vector<Monomial> monomials(int l);

/// Integer homogeneous polynomial in X, Y, Z, normalised to content 1 with
/// its first nonzero coefficient (in monomial order) positive.
class HomogPoly3 {
public:
  struct Term {
    Monomial mono;
    mpz_class coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  HomogPoly3() = default;

  /// Coefficients listed in the order of monomials(degree).
  static HomogPoly3 from_coefficients(int degree, std::span<const mpz_class> coeffs);
  static HomogPoly3 from_terms(int degree, std::vector<Term> terms);

  int degree() const { return degree_; }
  /// Nonzero terms in increasing monomial order.
  const std::vector<Term>& terms() const { return terms_; }
  mpz_class coeff(const Monomial& m) const;
  /// Largest Z exponent with a nonzero coefficient.
  int max_z_degree() const;

  /// e.g. "X^2 - Y*Z"; terms printed from the largest monomial down.
  std::string to_string() const;

  friend bool operator==(const HomogPoly3&, const HomogPoly3&) = default;

private:
  int degree_ = 0;
  std::vector<Term> terms_;
};

struct KernelResult {
  int degree = 0;
  std::size_t dimension = 0;
  std::vector<IntVector> basis; // indexed like monomials(degree)
  std::size_t rows_used = 0;
};

/// Memoised powers of three series at a fixed precision.
class PowerTable {
public:
  PowerTable(QSeries f, QSeries g, QSeries h);

  std::size_t prec() const { return prec_; }
  const QSeries& power(int which, int e);
  /// f^x g^y h^z at the table precision.
  QSeries product(const Monomial& m);

private:
  std::size_t prec_;
  std::vector<QSeries> powers_[3];
  std::map<std::pair<int, int>, QSeries> fg_;
};

/// Entry (n, alpha) = q^n coefficient of f^a0 g^a1 h^a2, n < rows.
RatMatrix coefficient_matrix(PowerTable& table, int l, std::size_t rows);
RatMatrix coefficient_matrix(const QSeries& f, const QSeries& g, const QSeries& h, int l, std::size_t rows);

/// Kernel of the degree-l system on the first `rows` coefficients.
KernelResult kernel_at_degree(PowerTable& table, int l, std::size_t rows);

/// Number of rows used for degree l: sturm_bound(l*m, N) + 1 + extra.
std::size_t relation_rows(int l, int weight, std::int64_t level, std::size_t extra_rows);

/// Largest admissible degree floor(m * mu(N) / 12).
int degree_bound(int weight, std::int64_t level);

/// Produces a series to at least the requested precision.
using SeriesSource = std::function<QSeries(std::size_t prec)>;

struct RelationOptions {
  std::size_t extra_rows = 0;
};

struct RelationResult {
  HomogPoly3 poly;
  KernelResult kernel;              // at the minimal degree
  std::vector<KernelResult> sweep;  // degrees 1..poly.degree(), in order
  int bound = 0;                    // floor(m mu / 12)
};

/// Sweeps l = 1, 2, ... and returns the first degree with a nontrivial
/// kernel. l = 1 doubles as the independence test. Throws
/// DependentFormsError, NoRelationError, or SoundnessError when the kernel at
/// the minimal degree is not one-dimensional.
RelationResult find_min_relation(const SeriesSource& f, const SeriesSource& g, const SeriesSource& h,
                                 std::int64_t level, int weight, RelationOptions opts = {});
RelationResult find_min_relation(const QSeries& f, const QSeries& g, const QSeries& h,
                                 std::int64_t level, int weight, RelationOptions opts = {});
RelationResult find_min_relation(const Form& f, const Form& g, const Form& h,
                                 std::int64_t level, int weight, RelationOptions opts = {});

/// The normalised polynomial spanning a one-dimensional kernel at degree l
/// using `rows` rows; throws SoundnessError for any other dimension.
HomogPoly3 relation_at_degree(PowerTable& table, int l, std::size_t rows);

/// sum a_alpha f^a0 g^a1 h^a2 at the shared precision of the inputs.
QSeries evaluate(const HomogPoly3& p, const QSeries& f, const QSeries& g, const QSeries& h);

/// True iff P(f, g, h) vanishes to precision sturm_bound(l m, N) + 1 + slack.
bool verify_relation(const HomogPoly3& p, const Form& f, const Form& g, const Form& h, std::size_t slack);

/// Polynomial in lambda_0..lambda_{s-1} with rational coefficients.
struct LambdaPolynomial {
  std::size_t variables = 0;
  std::map<std::vector<int>, mpq_class> terms; // exponent vector -> coefficient

  mpq_class evaluate(std::span<const mpq_class> lambda) const;
};

/// B_{alpha,n}(lambda) = sum_{|i| = a2} multinomial(a2; i) b_n(alpha, i) lambda^i,
/// where b_n(alpha, i) is the q^n coefficient of
/// f^{a0+i0} g^{a1+i1} f_2^{i2} ... f_{s-1}^{i_{s-1}} and basis = (f, g, f_2, ...).
/// Evaluated at lambda it gives the q^n coefficient of f^a0 g^a1 h^a2 with
/// h = sum lambda_j f_j.
LambdaPolynomial b_coefficient_polynomial(std::span<const QSeries> basis, const Monomial& alpha, std::size_t n);

} // namespace x0plane

#pragma once

// Symbolic modular forms on Gamma_0(N) with trivial character.
//
// A Form is a rational linear combination of atoms; an atom is a product of
// factors, each either an eta quotient prod eta(delta z)^{r_delta} or an
// Eisenstein power E_k(d z)^p. Eta quotients are certified with Ligozat's
// criteria and carry exact orders at every cusp class. Eisenstein factors
// carry no cusp data beyond what the q-expansion at infinity shows, except
// at level 1 where infinity is the only cusp.

#include "x0plane/arith.hpp"
#include "x0plane/qseries.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace x0plane {

struct EtaQuotient {
  std::int64_t level = 1;
  std::map<std::int64_t, std::int64_t> exponents; // delta -> r_delta

  /// Twice the weight: sum of r_delta.
  std::int64_t weight_twice() const;
  /// sum delta * r_delta; the order at infinity is this over 24.
  std::int64_t infinity_exponent_24() const;

  friend bool operator==(const EtaQuotient&, const EtaQuotient&) = default;
};

struct EisensteinFactor {
  int k = 4;
  std::int64_t d = 1;
  int power = 1;

  friend bool operator==(const EisensteinFactor&, const EisensteinFactor&) = default;
};

using Factor = std::variant<EtaQuotient, EisensteinFactor>;

struct Atom {
  mpq_class coeff = 1;
  std::vector<Factor> factors;

  friend bool operator==(const Atom& a, const Atom& b) {
    return a.coeff == b.coeff && a.factors == b.factors;
  }
};

/// Order at a cusp class, in the local parameter of X_0(N).
struct CuspOrder {
  CuspClass cusp;
  mpq_class order;
};
using CuspOrderTable = std::vector<CuspOrder>;

struct EtaCertificate {
  int weight = 0;
  CuspOrderTable orders; // ordered like cusp_classes(level)
};

struct Form {
  std::string name;
  std::int64_t level = 1;
  int weight = 0;
  std::vector<Atom> atoms;

  /// A single eta-quotient atom with coefficient 1.
  bool eta_only() const;
  /// The eta quotient when eta_only() holds.
  const EtaQuotient& as_eta() const;

  friend bool operator==(const Form& a, const Form& b) {
    return a.name == b.name && a.level == b.level && a.weight == b.weight && a.atoms == b.atoms;
  }
};

/// (N / (24 gcd(c^2, N))) * sum_{delta | N} gcd(c, delta)^2 r_delta / delta.
mpq_class cusp_order(const EtaQuotient& e, std::int64_t c);

/// Weight and order table, or ValidationError with one of
/// "non-integral weight", "Ligozat congruence failed",
/// "character not certified trivial", "not holomorphic at cusp c=...".
EtaCertificate validate_eta(const EtaQuotient& e);

int weight_of(const Factor& f);

/// Checks every factor, weight consistency and Eisenstein levels. Returns
/// the common weight.
int validate_form(const Form& f);

QSeries q_expansion(const EtaQuotient& e, std::size_t prec);
QSeries q_expansion(const EisensteinFactor& e, std::size_t prec);
QSeries q_expansion(const Atom& a, std::size_t prec);
QSeries q_expansion(const Form& f, std::size_t prec);

/// Exact orders at every cusp class when they are computable: the form is a
/// certified eta quotient, or the level is 1 and the expansion is nonzero.
std::optional<CuspOrderTable> exact_cusp_orders(const Form& f);

/// Lower bounds for the order at each cusp class, valid for any form: the
/// minimum over atoms of the summed eta-factor orders (Eisenstein factors are
/// holomorphic, bound 0), tightened by exact data when available.
std::vector<mpq_class> cusp_order_lower_bounds(const Form& f);

/// Rank test on the coefficient rows 0..sturm_bound(weight, level).
bool independent(std::span<const Form> forms, std::int64_t level, int weight);
/// Rank test on explicit series, using the first `rows` coefficients.
bool independent_series(std::span<const QSeries> series, std::size_t rows);

// Builders used by configs, tests and the explorer.
Form make_eta_form(std::string name, std::int64_t level, std::map<std::int64_t, std::int64_t> exponents);
Form make_form(std::string name, std::int64_t level, std::vector<Atom> atoms);
/// sum coeffs[i] * forms[i], atoms concatenated with scaled coefficients;
/// zero coefficients are dropped.
Form linear_combination(std::string name, std::span<const mpq_class> coeffs, std::span<const Form> forms);

} // namespace x0plane

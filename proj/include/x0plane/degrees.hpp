#pragma once

// Degree of the plane model, degree of the map, and the invariant
// eta_m = m mu/12 - sum_cusps min(ord f, ord g, ord h), computed along two
// independent routes:
//
//   relation route : deg C = deg P, deg_y Q = max Z-exponent of P,
//                    d = (pole degree of g/f) / deg_y Q;
//   cusp route     : eta_m from Ligozat orders, expected to equal d * deg C.
//
// Interior points of the upper half-plane contribute nothing to eta_m as long
// as one of the three forms is an eta quotient, since eta quotients do not
// vanish there. The exact mode requires all three to be eta quotients.

#include "x0plane/forms.hpp"
#include "x0plane/relation.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"

namespace x0plane {

enum class DegreeMode { exact, lemma_route_only };

std::string to_string(DegreeMode mode);

struct DegreeReport {
  std::int64_t deg_C = 0;
  std::int64_t d = 0;
  std::optional<std::int64_t> eta; // exact mode only
  std::int64_t pole_degree = 0;
  std::int64_t deg_y_Q = 0;
  mpq_class area_term = 0;
  std::optional<mpq_class> cusp_min_sum; // when every cusp order is known
  DegreeMode mode = DegreeMode::lemma_route_only;
  std::map<std::string, bool> checks;
  HomogPoly3 relation;

  bool all_checks_passed() const;
};

/// m * mu(N) / 12.
mpq_class area_term(int weight, std::int64_t level);

/// sum over cusp classes of count * min of the three orders.
mpq_class cusp_min_sum(const CuspOrderTable& f, const CuspOrderTable& g, const CuspOrderTable& h);

/// Requires three eta quotients ("non-eta form in exact mode" otherwise).
std::int64_t eta_invariant(const Form& f, const Form& g, const Form& h, int weight, std::int64_t level);

/// Degree of the pole divisor of g/f: sum count * max(0, ord f - ord g).
std::int64_t pole_degree(const Form& f, const Form& g);
std::int64_t pole_degree(const CuspOrderTable& f, const CuspOrderTable& g);

/// Degree in y of Q(x, y) = P(1, x, y).
int deg_y(const HomogPoly3& p);

/// pole_degree / deg_y(P); throws SoundnessError("divisibility violated").
std::int64_t map_degree(const HomogPoly3& p, std::int64_t pole);
std::int64_t map_degree(const HomogPoly3& p, const Form& f, const Form& g);

DegreeReport degree_report(const Form& f, const Form& g, const Form& h, std::int64_t level, int weight,
                           RelationOptions opts = {});

/// Field names as in DegreeReport; integers and rationals as decimal strings.
nlohmann::json to_json(const DegreeReport& report);

} // namespace x0plane

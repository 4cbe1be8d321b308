#include "x0plane/degrees.hpp"

#include "x0plane/error.hpp"

#include <algorithm>

namespace x0plane {

namespace {

std::int64_t to_int64(const mpq_class& q, const char* what) {
  if (q.get_den() != 1 || !q.get_num().fits_slong_p()) {
    throw SoundnessError(std::string(what) + " is not an integer: " + q.get_str());
  }
  return q.get_num().get_si();
}

} // namespace

std::string to_string(DegreeMode mode) {
  return mode == DegreeMode::exact ? "exact" : "lemma-route-only";
}

bool DegreeReport::all_checks_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& kv) { return kv.second; });
}

mpq_class area_term(int weight, std::int64_t level) {
  mpq_class a(weight * index_mu(level), 12);
  a.canonicalize();
  return a;
}

mpq_class cusp_min_sum(const CuspOrderTable& f, const CuspOrderTable& g, const CuspOrderTable& h) {
  if (f.size() != g.size() || f.size() != h.size()) {
    throw std::invalid_argument("cusp_min_sum: tables of different levels");
  }
  mpq_class sum = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    sum += f[i].cusp.count * std::min({f[i].order, g[i].order, h[i].order});
  }
  return sum;
}

std::int64_t eta_invariant(const Form& f, const Form& g, const Form& h, int weight, std::int64_t level) {
  if (!f.eta_only() || !g.eta_only() || !h.eta_only()) throw Error("non-eta form in exact mode");
  const mpq_class eta = area_term(weight, level) -
                        cusp_min_sum(*exact_cusp_orders(f), *exact_cusp_orders(g), *exact_cusp_orders(h));
  const std::int64_t v = to_int64(eta, "eta_m");
  if (v <= 0) throw SoundnessError("eta_m is not positive");
  return v;
}

std::int64_t pole_degree(const CuspOrderTable& f, const CuspOrderTable& g) {
  if (f.size() != g.size()) throw std::invalid_argument("pole_degree: tables of different levels");
  mpq_class sum = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const mpq_class diff = f[i].order - g[i].order;
    if (diff > 0) sum += f[i].cusp.count * diff;
  }
  const std::int64_t v = to_int64(sum, "pole degree");
  if (v <= 0) throw SoundnessError("g/f has no poles");
  return v;
}

std::int64_t pole_degree(const Form& f, const Form& g) {
  if (!f.eta_only()) throw Error("f not an eta quotient");
  const auto g_orders = exact_cusp_orders(g);
  if (!g_orders) throw Error("cusp orders unavailable for g");
  return pole_degree(*exact_cusp_orders(f), *g_orders);
}

int deg_y(const HomogPoly3& p) { return p.max_z_degree(); }

std::int64_t map_degree(const HomogPoly3& p, std::int64_t pole) {
  const int dy = deg_y(p);
  if (dy <= 0 || pole % dy != 0) throw SoundnessError("divisibility violated");
  return pole / dy;
}

std::int64_t map_degree(const HomogPoly3& p, const Form& f, const Form& g) {
  return map_degree(p, pole_degree(f, g));
}

DegreeReport degree_report(const Form& f, const Form& g, const Form& h, std::int64_t level, int weight,
                           RelationOptions opts) {
  DegreeReport r;
  const RelationResult rel = find_min_relation(f, g, h, level, weight, opts);
  r.relation = rel.poly;
  r.deg_C = rel.poly.degree();
  r.deg_y_Q = deg_y(rel.poly);
  r.pole_degree = pole_degree(f, g);
  r.d = map_degree(rel.poly, r.pole_degree);
  r.area_term = area_term(weight, level);

  const auto tf = exact_cusp_orders(f);
  const auto tg = exact_cusp_orders(g);
  const auto th = exact_cusp_orders(h);
  if (tf && tg && th) r.cusp_min_sum = cusp_min_sum(*tf, *tg, *th);

  r.checks["lemma21"] = r.d * r.deg_y_Q == r.pole_degree;

  if (f.eta_only() && g.eta_only() && h.eta_only()) {
    r.mode = DegreeMode::exact;
    r.eta = eta_invariant(f, g, h, weight, level);
    r.checks["thm1"] = r.d * r.deg_C == *r.eta;
    r.checks["bound"] = r.deg_y_Q <= r.deg_C && r.deg_C <= *r.eta;
    return r;
  }

  r.mode = DegreeMode::lemma_route_only;
  // With one eta quotient among the three, interior points add nothing, so
  // the cusp sum alone determines eta_m; record the comparison.
  if (r.cusp_min_sum && (f.eta_only() || g.eta_only() || h.eta_only())) {
    r.checks["thm1_info"] = r.d * r.deg_C == r.area_term - *r.cusp_min_sum;
  }
  const auto lf = cusp_order_lower_bounds(f);
  const auto lg = cusp_order_lower_bounds(g);
  const auto lh = cusp_order_lower_bounds(h);
  const auto classes = cusp_classes(level);
  mpq_class lower = 0;
  for (std::size_t i = 0; i < classes.size(); ++i) lower += classes[i].count * std::min({lf[i], lg[i], lh[i]});
  r.checks["bound"] = r.deg_y_Q <= r.deg_C && r.d * r.deg_C <= r.area_term - lower;
  return r;
}

nlohmann::json to_json(const DegreeReport& r) {
  nlohmann::json j;
  j["deg_C"] = std::to_string(r.deg_C);
  j["d"] = std::to_string(r.d);
  j["eta"] = r.eta ? nlohmann::json(std::to_string(*r.eta)) : nlohmann::json(nullptr);
  j["pole_degree"] = std::to_string(r.pole_degree);
  j["deg_y_Q"] = std::to_string(r.deg_y_Q);
  j["area_term"] = r.area_term.get_str();
  j["cusp_min_sum"] = r.cusp_min_sum ? nlohmann::json(r.cusp_min_sum->get_str()) : nlohmann::json(nullptr);
  j["mode"] = to_string(r.mode);
  j["checks"] = r.checks;
  j["relation"] = r.relation.to_string();
  return j;
}

} // namespace x0plane

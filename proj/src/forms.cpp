#include "x0plane/forms.hpp"

#include "x0plane/error.hpp"
#include "x0plane/linalg.hpp"

#include <algorithm>
#include <string>

namespace x0plane {

namespace {

bool divides(std::int64_t d, std::int64_t n) { return d > 0 && n % d == 0; }

std::int64_t valuation(std::int64_t p, std::int64_t n) {
  std::int64_t v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

} // namespace

std::int64_t EtaQuotient::weight_twice() const {
  std::int64_t s = 0;
  for (const auto& [delta, r] : exponents) s += r;
  return s;
}

std::int64_t EtaQuotient::infinity_exponent_24() const {
  std::int64_t s = 0;
  for (const auto& [delta, r] : exponents) s += delta * r;
  return s;
}

bool Form::eta_only() const {
  return atoms.size() == 1 && atoms[0].coeff == 1 && atoms[0].factors.size() == 1 &&
         std::holds_alternative<EtaQuotient>(atoms[0].factors[0]);
}

const EtaQuotient& Form::as_eta() const {
  if (!eta_only()) throw Error("form '" + name + "' is not a single eta quotient");
  return std::get<EtaQuotient>(atoms[0].factors[0]);
}

mpq_class cusp_order(const EtaQuotient& e, std::int64_t c) {
  const std::int64_t n = e.level;
  if (!divides(c, n)) {
    throw std::invalid_argument("cusp_order: c must divide the level");
  }
  mpq_class sum = 0;
  for (const auto& [delta, r] : e.exponents) {
    const std::int64_t g = gcd(c, delta);
    sum += mpq_class(g * g * r, delta);
  }
  const std::int64_t g2 = gcd(c * c, n);
  mpq_class order = sum * mpq_class(n, 24 * g2);
  order.canonicalize();
  return order;
}

EtaCertificate validate_eta(const EtaQuotient& e) {
  const std::int64_t n = e.level;
  if (n < 1) throw ValidationError("level must be positive");
  for (const auto& [delta, r] : e.exponents) {
    if (!divides(delta, n)) {
      throw ValidationError("eta index " + std::to_string(delta) + " does not divide level " +
                            std::to_string(n));
    }
  }
  const std::int64_t twice = e.weight_twice();
  if (twice % 2 != 0) throw ValidationError("non-integral weight");

  std::int64_t at_zero = 0;
  for (const auto& [delta, r] : e.exponents) at_zero += (n / delta) * r;
  if (e.infinity_exponent_24() % 24 != 0 || at_zero % 24 != 0) {
    throw ValidationError("Ligozat congruence failed");
  }

  const std::int64_t weight = twice / 2;
  bool square = weight % 2 == 0;
  for (const auto& [p, unused] : factorize(n)) {
    std::int64_t v = 0;
    for (const auto& [delta, r] : e.exponents) v += r * valuation(p, delta);
    if (v % 2 != 0) square = false;
  }
  if (!square) throw ValidationError("character not certified trivial");

  EtaCertificate cert;
  cert.weight = static_cast<int>(weight);
  for (const CuspClass& cls : cusp_classes(n)) {
    mpq_class ord = cusp_order(e, cls.c);
    if (ord < 0) {
      throw ValidationError("not holomorphic at cusp c=" + std::to_string(cls.c));
    }
    if (ord.get_den() != 1) throw ValidationError("Ligozat congruence failed");
    cert.orders.push_back({cls, std::move(ord)});
  }
  return cert;
}

int weight_of(const Factor& f) {
  return std::visit(
      [](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, EtaQuotient>) {
          return static_cast<int>(x.weight_twice() / 2);
        } else {
          return x.k * x.power;
        }
      },
      f);
}

int validate_form(const Form& f) {
  if (f.level < 1) throw ValidationError("level must be positive");
  for (const Atom& atom : f.atoms) {
    int w = 0;
    for (const Factor& factor : atom.factors) {
      if (const auto* eta = std::get_if<EtaQuotient>(&factor)) {
        if (eta->level != f.level) {
          throw ValidationError("eta quotient level differs from form level");
        }
        w += validate_eta(*eta).weight;
      } else {
        const auto& eis = std::get<EisensteinFactor>(factor);
        if (eis.k < 4 || eis.k % 2 != 0) throw ValidationError("unsupported Eisenstein weight");
        if (!divides(eis.d, f.level)) {
          throw ValidationError("Eisenstein scaling d=" + std::to_string(eis.d) +
                                " does not divide level");
        }
        if (eis.power < 0) throw ValidationError("negative Eisenstein power");
        w += eis.k * eis.power;
      }
    }
    if (w != f.weight) {
      throw ValidationError("form '" + f.name + "': atom of weight " + std::to_string(w) +
                            ", expected " + std::to_string(f.weight));
    }
  }
  if (f.weight <= 0 || f.weight % 2 != 0) {
    throw ValidationError("form '" + f.name + "': weight must be even and positive");
  }
  return f.weight;
}

QSeries q_expansion(const EtaQuotient& e, std::size_t prec) {
  const std::int64_t e24 = e.infinity_exponent_24();
  if (e24 % 24 != 0) throw ValidationError("Ligozat congruence failed");
  if (e24 < 0) throw ValidationError("not holomorphic at cusp c=" + std::to_string(e.level));
  const auto offset = static_cast<std::size_t>(e24 / 24);
  if (offset >= prec) return QSeries(prec);
  const std::size_t inner = prec - offset;
  QSeries s = QSeries::constant(1, inner);
  for (const auto& [delta, r] : e.exponents) {
    if (r == 0) continue;
    s = s * euler_power(delta, r, inner);
  }
  return s.shift(offset);
}

QSeries q_expansion(const EisensteinFactor& e, std::size_t prec) {
  const auto d = static_cast<std::size_t>(e.d);
  const QSeries base = v_operator(eisenstein(e.k, (prec + d - 1) / d), e.d, prec);
  return pow(base, static_cast<std::uint64_t>(e.power));
}

QSeries q_expansion(const Atom& a, std::size_t prec) {
  QSeries s = QSeries::constant(a.coeff, prec);
  for (const Factor& factor : a.factors) {
    std::visit([&](const auto& x) { s = s * q_expansion(x, prec); }, factor);
  }
  return s;
}

QSeries q_expansion(const Form& f, std::size_t prec) {
  validate_form(f);
  QSeries s(prec);
  for (const Atom& atom : f.atoms) s += q_expansion(atom, prec);
  return s;
}

std::optional<CuspOrderTable> exact_cusp_orders(const Form& f) {
  if (f.eta_only()) return validate_eta(f.as_eta()).orders;
  if (f.level != 1) return std::nullopt;
  const auto rows = static_cast<std::size_t>(sturm_bound(f.weight, 1) + 1);
  const auto ord = q_expansion(f, rows).order();
  if (!ord) return std::nullopt;
  return CuspOrderTable{{CuspClass{1, 1, 1}, mpq_class(static_cast<long>(*ord))}};
}

std::vector<mpq_class> cusp_order_lower_bounds(const Form& f) {
  const auto classes = cusp_classes(f.level);
  if (auto exact = exact_cusp_orders(f)) {
    std::vector<mpq_class> out;
    for (auto& entry : *exact) out.push_back(entry.order);
    return out;
  }
  std::vector<mpq_class> out(classes.size(), 0);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    std::optional<mpq_class> lowest;
    for (const Atom& atom : f.atoms) {
      mpq_class ord = 0;
      for (const Factor& factor : atom.factors) {
        if (const auto* eta = std::get_if<EtaQuotient>(&factor)) ord += cusp_order(*eta, classes[i].c);
      }
      if (!lowest || ord < *lowest) lowest = ord;
    }
    if (lowest) out[i] = *lowest;
  }
  return out;
}

bool independent_series(std::span<const QSeries> series, std::size_t rows) {
  RatMatrix m(series.size(), rows);
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series[i].prec() < rows) throw PrecisionError();
    for (std::size_t n = 0; n < rows; ++n) m(i, n) = series[i].coeff(n);
  }
  return rank(m) == series.size();
}

bool independent(std::span<const Form> forms, std::int64_t level, int weight) {
  const auto rows = static_cast<std::size_t>(sturm_bound(weight, level) + 1);
  std::vector<QSeries> series;
  for (const Form& f : forms) {
    if (f.level != level || f.weight != weight) {
      throw std::invalid_argument("independent: forms must share level and weight");
    }
    series.push_back(q_expansion(f, rows));
  }
  return independent_series(series, rows);
}

Form make_eta_form(std::string name, std::int64_t level, std::map<std::int64_t, std::int64_t> exponents) {
  EtaQuotient eta{level, std::move(exponents)};
  const int w = static_cast<int>(eta.weight_twice() / 2);
  return Form{std::move(name), level, w, {Atom{1, {Factor{std::move(eta)}}}}};
}

Form make_form(std::string name, std::int64_t level, std::vector<Atom> atoms) {
  int w = 0;
  if (!atoms.empty()) {
    for (const Factor& factor : atoms.front().factors) w += weight_of(factor);
  }
  return Form{std::move(name), level, w, std::move(atoms)};
}

Form linear_combination(std::string name, std::span<const mpq_class> coeffs, std::span<const Form> forms) {
  if (coeffs.size() != forms.size() || forms.empty()) {
    throw std::invalid_argument("linear_combination: need one coefficient per form");
  }
  Form out{std::move(name), forms[0].level, forms[0].weight, {}};
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (forms[i].level != out.level || forms[i].weight != out.weight) {
      throw std::invalid_argument("linear_combination: forms must share level and weight");
    }
    if (coeffs[i] == 0) continue;
    for (const Atom& atom : forms[i].atoms) {
      const mpq_class c = atom.coeff * coeffs[i];
      auto same = std::find_if(out.atoms.begin(), out.atoms.end(),
                               [&](const Atom& a) { return a.factors == atom.factors; });
      if (same != out.atoms.end()) {
        same->coeff += c;
      } else {
        out.atoms.push_back(Atom{c, atom.factors});
      }
    }
  }
  std::erase_if(out.atoms, [](const Atom& a) { return a.coeff == 0; });
  return out;
}

} // namespace x0plane

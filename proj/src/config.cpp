#include "x0plane/config.hpp"

#include "x0plane/error.hpp"

#include <toml.hpp>

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace x0plane {

mpq_class parse_rational(std::string_view s) {
  const std::string text(s);
  const auto slash = text.find('/');
  try {
    const mpz_class num(text.substr(0, slash), 10);
    const mpz_class den = slash == std::string::npos ? mpz_class(1) : mpz_class(text.substr(slash + 1), 10);
    if (den == 0) throw ConfigError("zero denominator in '" + text + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ConfigError("not a rational number: '" + text + "'");
  }
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void allow_keys(const toml::table& t, const std::string& where, std::initializer_list<std::string_view> keys) {
  for (const auto& [k, v] : t) {
    if (std::find(keys.begin(), keys.end(), k.str()) == keys.end()) {
      fail(where, "unknown key '" + std::string(k.str()) + "'");
    }
  }
}

std::int64_t get_int(const toml::node& n, const std::string& where) {
  const auto v = n.value_exact<std::int64_t>();
  if (!v) fail(where, "expected an integer");
  return *v;
}

mpq_class get_rational(const toml::node& n, const std::string& where) {
  if (const auto i = n.value_exact<std::int64_t>()) return mpq_class(static_cast<long>(*i));
  if (const auto s = n.value_exact<std::string>()) {
    try {
      return parse_rational(*s);
    } catch (const ConfigError& e) {
      fail(where, e.what());
    }
  }
  fail(where, "expected an integer or a \"p/q\" string");
}

const toml::array& get_array(const toml::node& n, const std::string& where) {
  const auto* a = n.as_array();
  if (!a) fail(where, "expected an array");
  return *a;
}

const toml::table& get_table(const toml::node& n, const std::string& where) {
  const auto* t = n.as_table();
  if (!t) fail(where, "expected a table");
  return *t;
}

std::string get_string(const toml::node& n, const std::string& where) {
  const auto s = n.value_exact<std::string>();
  if (!s) fail(where, "expected a string");
  return *s;
}

EtaQuotient parse_eta(const toml::node& n, std::int64_t level, const std::string& where) {
  EtaQuotient e{level, {}};
  for (const auto& pair : get_array(n, where)) {
    const auto& p = get_array(pair, where);
    if (p.size() != 2) fail(where, "eta entries are [delta, r] pairs");
    const std::int64_t delta = get_int(*p.get(0), where);
    const std::int64_t r = get_int(*p.get(1), where);
    if (delta <= 0) fail(where, "eta index must be positive");
    if (!e.exponents.emplace(delta, r).second) fail(where, "eta index " + std::to_string(delta) + " repeated");
  }
  return e;
}

EisensteinFactor parse_eisenstein(const toml::node& n, const std::string& where) {
  const auto& t = get_table(n, where);
  allow_keys(t, where, {"k", "d", "power"});
  EisensteinFactor e;
  if (!t.contains("k")) fail(where, "missing k");
  e.k = static_cast<int>(get_int(*t.get("k"), where));
  if (t.contains("d")) e.d = get_int(*t.get("d"), where);
  if (t.contains("power")) e.power = static_cast<int>(get_int(*t.get("power"), where));
  return e;
}

Atom parse_atom(const toml::table& t, std::int64_t level, const std::string& where) {
  Atom a;
  if (t.contains("coeff")) a.coeff = get_rational(*t.get("coeff"), where + ".coeff");
  if (a.coeff == 0) fail(where, "zero coefficient");
  if (t.contains("eta")) a.factors.emplace_back(parse_eta(*t.get("eta"), level, where + ".eta"));
  if (t.contains("eisenstein")) {
    for (const auto& e : get_array(*t.get("eisenstein"), where + ".eisenstein")) {
      a.factors.emplace_back(parse_eisenstein(e, where + ".eisenstein"));
    }
  }
  if (a.factors.empty()) fail(where, "needs eta or eisenstein factors");
  return a;
}

Form parse_form(const std::string& name, const toml::node& n, std::optional<std::int64_t> default_level) {
  const std::string where = "forms." + name;
  const auto& t = get_table(n, where);
  allow_keys(t, where, {"level", "eta", "eisenstein", "coeff", "atoms"});
  std::optional<std::int64_t> level = default_level;
  if (t.contains("level")) level = get_int(*t.get("level"), where + ".level");
  if (!level) fail(where, "no level given");
  std::vector<Atom> atoms;
  if (t.contains("atoms")) {
    if (t.contains("eta") || t.contains("eisenstein") || t.contains("coeff")) {
      fail(where, "use either atoms or eta/eisenstein/coeff");
    }
    for (const auto& atom : get_array(*t.get("atoms"), where + ".atoms")) {
      const auto& at = get_table(atom, where + ".atoms");
      allow_keys(at, where + ".atoms", {"coeff", "eta", "eisenstein"});
      atoms.push_back(parse_atom(at, *level, where + ".atoms"));
    }
    if (atoms.empty()) fail(where, "empty atoms list");
  } else {
    atoms.push_back(parse_atom(t, *level, where));
  }
  return make_form(name, *level, std::move(atoms));
}

void check_name(const ProjectConfig& c, const std::string& name, const std::string& where) {
  if (!c.forms.count(name)) fail(where, "unknown form '" + name + "'");
}

toml::array eta_array(const EtaQuotient& e) {
  toml::array a;
  for (const auto& [delta, r] : e.exponents) a.push_back(toml::array{delta, r});
  return a;
}

toml::table atom_table(const Atom& atom) {
  toml::table t;
  if (atom.coeff != 1) t.insert_or_assign("coeff", atom.coeff.get_str());
  EtaQuotient merged;
  bool has_eta = false;
  toml::array eis;
  for (const Factor& f : atom.factors) {
    if (const auto* e = std::get_if<EtaQuotient>(&f)) {
      has_eta = true;
      for (const auto& [delta, r] : e->exponents) merged.exponents[delta] += r;
    } else {
      const auto& x = std::get<EisensteinFactor>(f);
      eis.push_back(toml::table{{"k", x.k}, {"d", x.d}, {"power", x.power}});
    }
  }
  if (has_eta) t.insert_or_assign("eta", eta_array(merged));
  if (!eis.empty()) t.insert_or_assign("eisenstein", std::move(eis));
  return t;
}

} // namespace

const Form& ProjectConfig::form(const std::string& name) const {
  const auto it = forms.find(name);
  if (it == forms.end()) throw ConfigError("unknown form '" + name + "'");
  return it->second;
}

std::array<Form, 3> ProjectConfig::triple() const {
  if (!roles.f || !roles.g || !roles.h) throw ConfigError("roles f, g and h must be set");
  return {form(*roles.f), form(*roles.g), form(*roles.h)};
}

std::int64_t ProjectConfig::level_of(const std::vector<const Form*>& fs) const {
  if (fs.empty()) throw ConfigError("no forms given");
  const std::int64_t n = fs.front()->level;
  for (const Form* f : fs) {
    if (f->level != n) throw ConfigError("forms '" + fs.front()->name + "' and '" + f->name + "' differ in level");
  }
  if (level && *level != n) throw ConfigError("forms have level " + std::to_string(n) + ", config says " + std::to_string(*level));
  return n;
}

FamilyConfig ProjectConfig::family() const {
  if (!explorer) throw ConfigError("missing [explorer] table");
  if (roles.basis.size() < 3) throw ConfigError("roles.basis needs at least three forms");
  if (roles.f && *roles.f != roles.basis[0]) throw ConfigError("roles.basis must start with f");
  if (roles.g && *roles.g != roles.basis[1]) throw ConfigError("roles.basis must list g second");
  FamilyConfig fc;
  std::vector<const Form*> ptrs;
  for (const auto& name : roles.basis) {
    fc.basis.push_back(form(name));
    ptrs.push_back(&form(name));
  }
  fc.level = level_of(ptrs);
  fc.weight = weight.value_or(fc.basis.front().weight);
  fc.box = explorer->box;
  fc.samples = explorer->samples;
  fc.seed = explorer->seed;
  fc.zero_constraints = explorer->zero_constraints;
  fc.determines_function_field = explorer->determines_function_field;
  fc.threshold = explorer->threshold;
  return fc;
}

ProjectConfig parse_config(std::string_view text, std::string_view source) {
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << source << ':' << e.source().begin.line << ": " << e.description();
    throw ConfigError(msg.str());
  }
  allow_keys(root, "config", {"level", "weight", "forms", "roles", "explorer", "output"});

  ProjectConfig c;
  if (root.contains("level")) c.level = get_int(*root.get("level"), "level");
  if (root.contains("weight")) c.weight = static_cast<int>(get_int(*root.get("weight"), "weight"));

  if (root.contains("forms")) {
    for (const auto& [k, v] : get_table(*root.get("forms"), "forms")) {
      const std::string name(k.str());
      c.forms.emplace(name, parse_form(name, v, c.level));
    }
  }

  if (root.contains("roles")) {
    const auto& t = get_table(*root.get("roles"), "roles");
    allow_keys(t, "roles", {"f", "g", "h", "basis"});
    for (auto [key, slot] : {std::pair{"f", &c.roles.f}, std::pair{"g", &c.roles.g}, std::pair{"h", &c.roles.h}}) {
      if (!t.contains(key)) continue;
      *slot = get_string(*t.get(key), std::string("roles.") + key);
      check_name(c, **slot, std::string("roles.") + key);
    }
    std::set<std::string> fgh;
    std::size_t named = 0;
    for (const auto* r : {&c.roles.f, &c.roles.g, &c.roles.h}) {
      if (*r) {
        fgh.insert(**r);
        ++named;
      }
    }
    if (fgh.size() != named) fail("roles", "f, g, h must be distinct names");
    if (t.contains("basis")) {
      std::set<std::string> seen;
      for (const auto& n : get_array(*t.get("basis"), "roles.basis")) {
        const std::string name = get_string(n, "roles.basis");
        check_name(c, name, "roles.basis");
        if (!seen.insert(name).second) fail("roles.basis", "'" + name + "' listed twice");
        c.roles.basis.push_back(name);
      }
    }
  }

  if (root.contains("explorer")) {
    const auto& t = get_table(*root.get("explorer"), "explorer");
    allow_keys(t, "explorer", {"box", "samples", "seed", "zero_constraints", "determines_function_field", "threshold"});
    ExplorerSection e;
    if (t.contains("box")) e.box = get_int(*t.get("box"), "explorer.box");
    if (t.contains("samples")) {
      const std::int64_t s = get_int(*t.get("samples"), "explorer.samples");
      if (s <= 0) fail("explorer.samples", "must be positive");
      e.samples = static_cast<std::size_t>(s);
    }
    if (t.contains("seed")) {
      const toml::node& n = *t.get("seed");
      if (const auto s = n.value_exact<std::string>()) {
        try {
          std::size_t used = 0;
          e.seed = std::stoull(*s, &used);
          if (used != s->size() || s->front() == '-') throw std::invalid_argument("seed");
        } catch (const std::exception&) {
          fail("explorer.seed", "not an unsigned 64-bit integer");
        }
      } else {
        const std::int64_t v = get_int(n, "explorer.seed");
        if (v < 0) fail("explorer.seed", "must be non-negative");
        e.seed = static_cast<std::uint64_t>(v);
      }
    }
    if (t.contains("zero_constraints")) {
      for (const auto& n : get_array(*t.get("zero_constraints"), "explorer.zero_constraints")) {
        const std::int64_t j = get_int(n, "explorer.zero_constraints");
        if (j < 0) fail("explorer.zero_constraints", "indices must be non-negative");
        e.zero_constraints.push_back(static_cast<std::size_t>(j));
      }
    }
    if (t.contains("determines_function_field")) {
      const auto b = t.get("determines_function_field")->value_exact<bool>();
      if (!b) fail("explorer.determines_function_field", "expected a boolean");
      e.determines_function_field = *b;
    }
    if (t.contains("threshold")) e.threshold = get_rational(*t.get("threshold"), "explorer.threshold");
    c.explorer = e;
  }

  if (root.contains("output")) {
    const auto& t = get_table(*root.get("output"), "output");
    allow_keys(t, "output", {"csv", "summary"});
    if (t.contains("csv")) c.output.csv = get_string(*t.get("csv"), "output.csv");
    if (t.contains("summary")) c.output.summary = get_string(*t.get("summary"), "output.summary");
  }
  return c;
}

ProjectConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

std::string to_toml(const ProjectConfig& c) {
  toml::table root;
  if (c.level) root.insert_or_assign("level", *c.level);
  if (c.weight) root.insert_or_assign("weight", *c.weight);

  toml::table forms;
  for (const auto& [name, f] : c.forms) {
    toml::table t;
    if (!c.level || *c.level != f.level) t.insert_or_assign("level", f.level);
    if (f.atoms.size() == 1) {
      for (auto&& [k, v] : atom_table(f.atoms.front())) t.insert_or_assign(k, v);
    } else {
      toml::array atoms;
      for (const Atom& a : f.atoms) atoms.push_back(atom_table(a));
      t.insert_or_assign("atoms", std::move(atoms));
    }
    forms.insert_or_assign(name, std::move(t));
  }
  if (!forms.empty()) root.insert_or_assign("forms", std::move(forms));

  toml::table roles;
  if (c.roles.f) roles.insert_or_assign("f", *c.roles.f);
  if (c.roles.g) roles.insert_or_assign("g", *c.roles.g);
  if (c.roles.h) roles.insert_or_assign("h", *c.roles.h);
  if (!c.roles.basis.empty()) {
    toml::array basis;
    for (const auto& b : c.roles.basis) basis.push_back(b);
    roles.insert_or_assign("basis", std::move(basis));
  }
  if (!roles.empty()) root.insert_or_assign("roles", std::move(roles));

  if (c.explorer) {
    const ExplorerSection& e = *c.explorer;
    toml::table t;
    t.insert_or_assign("box", e.box);
    t.insert_or_assign("samples", static_cast<std::int64_t>(e.samples));
    if (e.seed <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
      t.insert_or_assign("seed", static_cast<std::int64_t>(e.seed));
    } else {
      t.insert_or_assign("seed", std::to_string(e.seed));
    }
    if (!e.zero_constraints.empty()) {
      toml::array z;
      for (std::size_t j : e.zero_constraints) z.push_back(static_cast<std::int64_t>(j));
      t.insert_or_assign("zero_constraints", std::move(z));
    }
    t.insert_or_assign("determines_function_field", e.determines_function_field);
    t.insert_or_assign("threshold", e.threshold.get_str());
    root.insert_or_assign("explorer", std::move(t));
  }

  toml::table out;
  if (c.output.csv) out.insert_or_assign("csv", *c.output.csv);
  if (c.output.summary) out.insert_or_assign("summary", *c.output.summary);
  if (!out.empty()) root.insert_or_assign("output", std::move(out));

  std::ostringstream s;
  s << root << '\n';
  return s.str();
}

} // namespace x0plane

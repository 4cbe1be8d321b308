#include "x0plane/cli.hpp"

#include "x0plane/config.hpp"
#include "x0plane/degrees.hpp"
#include "x0plane/error.hpp"
#include "x0plane/explorer.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>

#include "json.hpp"

namespace x0plane {

namespace {

struct Options {
  std::string config;
  std::string out;
  std::size_t workers = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::size_t slack = 8;
  std::string form;
  std::size_t prec = 10;
  std::string format = "text";
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path);
  f << text;
  if (!f) throw ConfigError("cannot write " + path);
}

// Sends text to --out when given, else to stdout.
void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
  } else {
    write_file(o.out, text);
  }
}

nlohmann::json coeff_json(const mpz_class& c) {
  if (c.fits_slong_p()) return c.get_si();
  return c.get_str();
}

int cmd_expand(const Options& o, const ProjectConfig& c, std::ostream& out) {
  const Form& f = c.form(o.form);
  validate_form(f);
  const QSeries s = q_expansion(f, o.prec);
  if (o.format == "json") {
    nlohmann::json j;
    j["form"] = f.name;
    j["level"] = f.level;
    j["weight"] = f.weight;
    j["prec"] = o.prec;
    j["coefficients"] = nlohmann::json::array();
    for (const mpq_class& x : s.coefficients()) j["coefficients"].push_back(x.get_str());
    emit(o, out, j.dump(2) + "\n");
  } else {
    emit(o, out, s.to_string() + "\n");
  }
  return exit_code::ok;
}

struct Triple {
  std::array<Form, 3> forms;
  std::int64_t level;
  int weight;
};

Triple triple(const ProjectConfig& c) {
  Triple t{c.triple(), 0, 0};
  t.level = c.level_of({&t.forms[0], &t.forms[1], &t.forms[2]});
  t.weight = c.weight.value_or(t.forms[0].weight);
  return t;
}

int cmd_relation(const Options& o, const ProjectConfig& c, std::ostream& out, std::ostream& err) {
  const Triple t = triple(c);
  const RelationResult r = find_min_relation(t.forms[0], t.forms[1], t.forms[2], t.level, t.weight, {o.slack});
  nlohmann::json j;
  j["degree"] = r.poly.degree();
  j["monomials"] = nlohmann::json::array();
  for (const auto& term : r.poly.terms()) {
    j["monomials"].push_back({term.mono.x, term.mono.y, term.mono.z, coeff_json(term.coeff)});
  }
  j["polynomial"] = r.poly.to_string();
  j["kernel_dimensions"] = nlohmann::json::array();
  for (const auto& k : r.sweep) j["kernel_dimensions"].push_back(k.dimension);
  j["rows_used"] = r.kernel.rows_used;
  emit(o, out, j.dump() + "\n");
  if (!verify_relation(r.poly, t.forms[0], t.forms[1], t.forms[2], o.slack + 16)) {
    err << "relation does not survive 16 extra rows\n";
    return exit_code::inconsistent;
  }
  return exit_code::ok;
}

int cmd_degrees(const Options& o, const ProjectConfig& c, std::ostream& out, std::ostream& err) {
  const Triple t = triple(c);
  const DegreeReport r = degree_report(t.forms[0], t.forms[1], t.forms[2], t.level, t.weight, {o.slack});
  emit(o, out, to_json(r).dump(2) + "\n");
  if (!r.all_checks_passed()) {
    for (const auto& [name, ok] : r.checks) {
      if (!ok) err << "check failed: " << name << '\n';
    }
    return exit_code::inconsistent;
  }
  return exit_code::ok;
}

int cmd_explore(const Options& o, const ProjectConfig& c, std::ostream& out, std::ostream& err) {
  FamilyConfig fc = c.family();
  if (o.seed_set) fc.seed = o.seed;
  fc.workers = o.workers;
  fc.slack = o.slack;
  const FamilyRun run = run_family(fc);

  const std::string csv_path = !o.out.empty() ? o.out : c.output.csv.value_or("");
  if (!csv_path.empty()) {
    std::ostringstream csv;
    write_csv(csv, run.records);
    write_file(csv_path, csv.str());
    err << "wrote " << run.records.size() << " records to " << csv_path << '\n';
  }
  const std::string summary = to_json(run.summary).dump(2) + "\n";
  if (o.out.empty() && c.output.summary) write_file(*c.output.summary, summary);
  out << summary;

  int code = exit_code::ok;
  for (const auto& r : run.records) {
    if (r.checks_passed) continue;
    err << "sample " << r.index << ": " << (r.ok() ? "check failed" : r.error) << '\n';
    code = exit_code::inconsistent;
  }
  if (!run.summary.divisor_check || run.summary.census_X.count(1)) code = exit_code::inconsistent;
  if (run.summary.genericity == false) err << "genericity threshold not reached\n";
  return code;
}

int cmd_validate(const Options& o, const ProjectConfig& c, std::ostream& out, std::ostream& err) {
  std::ostringstream table;
  table << "form\tlevel\tweight\tcusp_sum\tarea\tinfinity_order\tok\n";
  int code = exit_code::ok;
  for (const auto& [name, f] : c.forms) {
    table << name << '\t' << f.level << '\t';
    try {
      const int weight = validate_form(f);
      const mpq_class area = area_term(weight, f.level);
      table << weight << '\t';
      const auto orders = exact_cusp_orders(f);
      if (!orders) {
        table << "-\t" << area.get_str() << "\t-\ttrue\n";
        continue;
      }
      mpq_class sum = 0;
      for (const auto& co : *orders) sum += co.cusp.count * co.order;
      const std::size_t prec = static_cast<std::size_t>(sturm_bound(weight, f.level)) + 2;
      const auto inf = q_expansion(f, prec).order();
      const bool inf_ok = inf && mpq_class(static_cast<long>(*inf)) == orders->back().order;
      // Eta quotients have no zeros inside the upper half-plane, so their
      // cusp orders account for the whole valence; other forms may fall short.
      const bool ok = (f.eta_only() ? sum == area : sum <= area) && inf_ok;
      table << sum.get_str() << '\t' << area.get_str() << '\t' << (inf ? std::to_string(*inf) : "-") << '\t'
            << (ok ? "true" : "false") << '\n';
      if (!ok) {
        err << name << ": valence check failed\n";
        code = exit_code::inconsistent;
      }
    } catch (const ValidationError& e) {
      table << "-\t-\t-\t-\tfalse\n";
      err << name << ": " << e.what() << '\n';
      if (code == exit_code::ok) code = exit_code::invalid;
    }
  }
  emit(o, out, table.str());
  if (code != exit_code::ok) return code;

  auto check_independent = [&](const std::vector<std::string>& names, const char* what) {
    std::vector<Form> forms;
    std::vector<const Form*> ptrs;
    for (const auto& n : names) forms.push_back(c.form(n));
    for (const auto& f : forms) ptrs.push_back(&f);
    const std::int64_t level = c.level_of(ptrs);
    if (!independent(forms, level, c.weight.value_or(forms.front().weight))) {
      err << what << ": forms not independent\n";
      return false;
    }
    return true;
  };
  if (c.roles.f && c.roles.g && c.roles.h && !check_independent({*c.roles.f, *c.roles.g, *c.roles.h}, "roles f, g, h")) {
    return exit_code::dependent;
  }
  if (!c.roles.basis.empty() && !check_independent(c.roles.basis, "roles.basis")) return exit_code::dependent;
  return exit_code::ok;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Plane models of X_0(N) from triples of modular forms", "x0plane"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--config", o.config, "TOML configuration file")->required();
  app.add_option("--out", o.out, "Output path (CSV for explore)");
  app.add_option("--workers", o.workers, "Worker threads for explore (0: one per processor)");
  auto* seed = app.add_option("--seed", o.seed, "Overrides the explorer seed");
  app.add_option("--slack", o.slack, "Extra rows beyond the Sturm bound")->capture_default_str();

  auto* expand = app.add_subcommand("expand", "Print the q-expansion of a form");
  expand->add_option("form", o.form, "Form name")->required();
  expand->add_option("--prec", o.prec, "Number of coefficients")->capture_default_str()->check(CLI::PositiveNumber);
  expand->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  auto* relation = app.add_subcommand("relation", "Minimal relation P(f, g, h) = 0 as JSON");
  auto* degrees = app.add_subcommand("degrees", "Degree report for f, g, h as JSON");
  auto* explore = app.add_subcommand("explore", "Sample h over the basis; CSV records and JSON summary");
  auto* validate = app.add_subcommand("validate", "Validate every form; valence and independence checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_code::invalid;
  }
  o.seed_set = seed->count() > 0;

  try {
    const ProjectConfig c = load_config(o.config);
    if (*expand) return cmd_expand(o, c, out);
    if (*relation) return cmd_relation(o, c, out, err);
    if (*degrees) return cmd_degrees(o, c, out, err);
    if (*explore) return cmd_explore(o, c, out, err);
    if (*validate) return cmd_validate(o, c, out, err);
  } catch (const DependentFormsError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::dependent;
  } catch (const NoRelationError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::no_relation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::invalid;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::invalid;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::inconsistent;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::other;
  }
  return exit_code::other;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run_cli(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

} // namespace x0plane

#include "x0plane/explorer.hpp"

#include "x0plane/degrees.hpp"
#include "x0plane/error.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <ostream>
#include <thread>

namespace x0plane {

std::int64_t bounded_draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % range + 1) % range;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return lo + static_cast<std::int64_t>(x % range);
}

namespace {

void check_config(const FamilyConfig& c) {
  if (c.box <= 0) throw ValidationError("empty sample box");
  if (c.basis.size() < 3) throw ValidationError("basis needs at least three forms");
  if (c.samples == 0) throw ValidationError("samples must be positive");
  const std::size_t s = c.basis.size();
  for (std::size_t j : c.zero_constraints) {
    if (j >= s) throw ValidationError("zero constraint index " + std::to_string(j) + " out of range");
  }
  bool free_tail = false;
  for (std::size_t j = 2; j < s; ++j) {
    free_tail = free_tail || std::find(c.zero_constraints.begin(), c.zero_constraints.end(), j) ==
                                 c.zero_constraints.end();
  }
  if (!free_tail) throw ValidationError("zero constraints leave h in the span of f and g");
}

} // namespace

std::vector<std::vector<std::int64_t>> sample_lambdas(const FamilyConfig& config) {
  check_config(config);
  const std::size_t s = config.basis.size();
  std::vector<bool> zeroed(s, false);
  for (std::size_t j : config.zero_constraints) zeroed[j] = true;

  std::mt19937_64 rng(config.seed);
  std::vector<std::vector<std::int64_t>> out;
  out.reserve(config.samples);
  while (out.size() < config.samples) {
    std::vector<std::int64_t> v(s, 0);
    for (std::size_t j = 0; j < s; ++j) {
      if (!zeroed[j]) v[j] = bounded_draw(rng, -config.box, config.box);
    }
    if (std::any_of(v.begin() + 2, v.end(), [](std::int64_t x) { return x != 0; })) out.push_back(std::move(v));
  }
  return out;
}

namespace {

struct FamilyContext {
  const FamilyConfig& config;
  std::vector<QSeries> series;
  std::vector<std::vector<mpq_class>> lower; // cusp-order lower bounds per basis form
  std::int64_t pole = 0;
  mpq_class area = 0;
};

SampleRecord run_sample(const FamilyContext& ctx, std::size_t index, const std::vector<std::int64_t>& lambda) {
  SampleRecord rec;
  rec.index = index;
  rec.lambda = lambda;
  rec.pole_degree = ctx.pole;
  const FamilyConfig& c = ctx.config;
  try {
    QSeries h(ctx.series[0].prec());
    for (std::size_t j = 0; j < lambda.size(); ++j) {
      if (lambda[j] != 0) h += scale(ctx.series[j], mpq_class(static_cast<long>(lambda[j])));
    }
    const RelationResult rel = find_min_relation(ctx.series[0], ctx.series[1], h, c.level, c.weight, {c.slack});
    rec.relation = rel.poly;
    rec.relation_coeff_count = rel.poly.terms().size();
    rec.deg_C = rel.poly.degree();
    rec.deg_y_Q = deg_y(rel.poly);

    rec.checks["divisibility"] = rec.deg_y_Q > 0 && ctx.pole % rec.deg_y_Q == 0;
    if (!rec.checks["divisibility"]) throw SoundnessError("divisibility violated");
    rec.d = ctx.pole / rec.deg_y_Q;
    rec.checks["lemma21"] = rec.d * rec.deg_y_Q == ctx.pole;

    mpq_class lower = 0;
    const auto classes = cusp_classes(c.level);
    for (std::size_t i = 0; i < classes.size(); ++i) {
      mpq_class m = std::min(ctx.lower[0][i], ctx.lower[1][i]);
      std::optional<mpq_class> mh;
      for (std::size_t j = 0; j < lambda.size(); ++j) {
        if (lambda[j] != 0 && (!mh || ctx.lower[j][i] < *mh)) mh = ctx.lower[j][i];
      }
      if (mh && *mh < m) m = *mh;
      lower += classes[i].count * m;
    }
    rec.checks["bound"] = rec.deg_y_Q <= rec.deg_C && rec.d * rec.deg_C <= ctx.area - lower;

    const RelationResult again =
        find_min_relation(ctx.series[0], ctx.series[1], h, c.level, c.weight, {c.slack + 16});
    rec.checks["sturm_stable"] = again.poly == rel.poly;
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  rec.checks_passed = rec.ok() && std::all_of(rec.checks.begin(), rec.checks.end(),
                                              [](const auto& kv) { return kv.second; });
  return rec;
}

} // namespace

FamilyRun run_family(const FamilyConfig& config) {
  const auto lambdas = sample_lambdas(config);
  for (const Form& b : config.basis) {
    if (b.level != config.level || validate_form(b) != config.weight) {
      throw ValidationError("basis form '" + b.name + "' does not have level " + std::to_string(config.level) +
                            " and weight " + std::to_string(config.weight));
    }
  }

  FamilyContext ctx{config, {}, {}, pole_degree(config.basis[0], config.basis[1]),
                    area_term(config.weight, config.level)};
  const int bound = degree_bound(config.weight, config.level);
  const std::size_t prec = relation_rows(bound, config.weight, config.level, config.slack + 16);
  for (const Form& b : config.basis) {
    ctx.series.push_back(q_expansion(b, prec));
    ctx.lower.push_back(cusp_order_lower_bounds(b));
  }
  const std::vector<QSeries> fg = {ctx.series[0], ctx.series[1]};
  if (!independent_series(fg, relation_rows(1, config.weight, config.level, 0))) {
    throw DependentFormsError();
  }

  FamilyRun run;
  run.records.resize(lambdas.size());
  std::size_t workers = config.workers ? config.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, lambdas.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < lambdas.size();) run.records[i] = run_sample(ctx, i, lambdas[i]);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  run.summary = summarize(run.records);
  if (config.determines_function_field && config.zero_constraints.empty()) {
    run.summary.genericity = run.summary.frac_birational_at_L_max >= config.threshold;
  }
  return run;
}

FamilySummary summarize(const std::vector<SampleRecord>& records) {
  FamilySummary s;
  s.samples = records.size();
  for (const auto& r : records) {
    s.all_checks_passed = s.all_checks_passed && r.checks_passed;
    if (!r.ok()) {
      ++s.failures;
      continue;
    }
    ++s.census_X[r.deg_C];
    ++s.census_Z[r.d];
    s.L_max = std::max(s.L_max, r.deg_C);
    auto [it, fresh] = s.min_d_per_X.try_emplace(r.deg_C, r.d);
    if (!fresh) it->second = std::min(it->second, r.d);
    s.divisor_check = s.divisor_check && r.d > 0 && r.pole_degree % r.d == 0;
  }
  if (s.failures == s.samples) throw Error("no successful samples");
  std::size_t at_max = 0, birational = 0;
  for (const auto& r : records) {
    if (!r.ok() || r.deg_C != s.L_max) continue;
    ++at_max;
    if (r.d == 1) ++birational;
  }
  s.frac_L_max = mpq_class(at_max, s.samples);
  s.frac_L_max.canonicalize();
  s.frac_birational_at_L_max = mpq_class(birational, s.samples);
  s.frac_birational_at_L_max.canonicalize();
  return s;
}

void write_csv(std::ostream& out, const std::vector<SampleRecord>& records) {
  out << "index,lambda,deg_C,d,pole_degree,deg_y_Q,checks_passed\n";
  for (const auto& r : records) {
    out << r.index << ',';
    for (std::size_t j = 0; j < r.lambda.size(); ++j) out << (j ? ";" : "") << r.lambda[j];
    out << ',' << r.deg_C << ',' << r.d << ',' << r.pole_degree << ',' << r.deg_y_Q << ','
        << (r.checks_passed ? "true" : "false") << '\n';
  }
}

namespace {

// Correctly rounded for the small counts used here; mpq get_d truncates.
double as_double(const mpq_class& q) { return q.get_num().get_d() / q.get_den().get_d(); }

} // namespace

nlohmann::json to_json(const FamilySummary& s) {
  auto keyed = [](const auto& m) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : m) j[std::to_string(k)] = v;
    return j;
  };
  nlohmann::json j;
  j["samples"] = s.samples;
  j["failures"] = s.failures;
  j["census_X"] = keyed(s.census_X);
  j["census_Z"] = keyed(s.census_Z);
  j["L_max"] = s.L_max;
  j["frac_L_max"] = as_double(s.frac_L_max);
  j["frac_birational_at_L_max"] = as_double(s.frac_birational_at_L_max);
  j["min_d_per_X"] = keyed(s.min_d_per_X);
  j["divisor_check"] = s.divisor_check;
  j["all_checks_passed"] = s.all_checks_passed;
  j["genericity"] = s.genericity ? nlohmann::json(*s.genericity) : nlohmann::json(nullptr);
  return j;
}

} // namespace x0plane

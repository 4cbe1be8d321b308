#pragma once

// Random probing of a family h = sum lambda_j b_j with b_0 = f, b_1 = g fixed.
// Each sample gets (deg C, d) from the relation route; the census over many
// samples approximates the strata by plane-model degree and map degree.

#include "x0plane/forms.hpp"
#include "x0plane/relation.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

namespace x0plane {

struct FamilyConfig {
  std::int64_t level = 1;
  int weight = 0;
  std::vector<Form> basis; // basis[0] = f, basis[1] = g
  std::int64_t box = 5;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  std::vector<std::size_t> zero_constraints;
  bool determines_function_field = false;
  mpq_class threshold{1, 2};
  std::size_t slack = 8;   // extra rows beyond the Sturm bound
  std::size_t workers = 0; // 0: hardware concurrency
};

struct SampleRecord {
  std::size_t index = 0;
  std::vector<std::int64_t> lambda;
  std::int64_t deg_C = 0;
  std::int64_t d = 0;
  std::int64_t pole_degree = 0;
  std::int64_t deg_y_Q = 0;
  std::size_t relation_coeff_count = 0;
  bool checks_passed = false;
  std::map<std::string, bool> checks;
  HomogPoly3 relation;
  std::string error; // empty on success

  bool ok() const { return error.empty(); }
  friend bool operator==(const SampleRecord&, const SampleRecord&) = default;
};

struct FamilySummary {
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::map<std::int64_t, std::size_t> census_X;
  std::map<std::int64_t, std::size_t> census_Z;
  std::int64_t L_max = 0;
  mpq_class frac_L_max = 0;
  mpq_class frac_birational_at_L_max = 0;
  std::map<std::int64_t, std::int64_t> min_d_per_X;
  bool divisor_check = true;
  bool all_checks_passed = true;
  std::optional<bool> genericity; // set when the family asserts it
};

/// Uniform integer in [lo, hi] by rejection from the raw mt19937_64 stream,
/// so the draws do not depend on the standard library's distributions.
std::int64_t bounded_draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

/// The first `config.samples` lambda vectors. Each has entries in [-box, box],
/// zeros at the constrained indices, and some nonzero entry at index >= 2.
/// Duplicates and scalar multiples are not filtered.
std::vector<std::vector<std::int64_t>> sample_lambdas(const FamilyConfig& config);

struct FamilyRun {
  std::vector<SampleRecord> records; // ordered by index
  FamilySummary summary;
};

FamilyRun run_family(const FamilyConfig& config);

/// Aggregates records; throws Error("no successful samples") when none succeeded.
FamilySummary summarize(const std::vector<SampleRecord>& records);

/// Header: index,lambda,deg_C,d,pole_degree,deg_y_Q,checks_passed
void write_csv(std::ostream& out, const std::vector<SampleRecord>& records);
nlohmann::json to_json(const FamilySummary& summary);

} // namespace x0plane

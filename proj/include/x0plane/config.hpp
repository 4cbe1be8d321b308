#pragma once

// Project configuration in TOML. Rationals are written as "p/q" strings so
// that no value passes through a float.
//
//   level = 2
//   [forms.Delta]            eta = [[1, 24]]
//   [forms.E4cubed]          eisenstein = [{ k = 4, d = 1, power = 3 }]
//   [forms.mix]              atoms = [{ coeff = "1/2", eta = [[1, 24]] }, ...]
//   [roles]                  f = "...", g = "...", h = "...", basis = [...]
//   [explorer]               box, samples, seed, zero_constraints,
//                            determines_function_field, threshold = "7/10"
//   [output]                 csv = "...", summary = "..."
//
// A form may carry its own `level`, overriding the top-level one.

#include "x0plane/explorer.hpp"
#include "x0plane/forms.hpp"

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace x0plane {

struct Roles {
  std::optional<std::string> f, g, h;
  std::vector<std::string> basis;
  friend bool operator==(const Roles&, const Roles&) = default;
};

struct ExplorerSection {
  std::int64_t box = 5;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  std::vector<std::size_t> zero_constraints;
  bool determines_function_field = false;
  mpq_class threshold{1, 2};
  friend bool operator==(const ExplorerSection&, const ExplorerSection&) = default;
};

struct OutputSection {
  std::optional<std::string> csv;
  std::optional<std::string> summary;
  friend bool operator==(const OutputSection&, const OutputSection&) = default;
};

struct ProjectConfig {
  std::optional<std::int64_t> level;
  std::optional<int> weight;
  std::map<std::string, Form> forms;
  Roles roles;
  std::optional<ExplorerSection> explorer;
  OutputSection output;

  const Form& form(const std::string& name) const;
  /// f, g, h from the roles table.
  std::array<Form, 3> triple() const;
  /// Level of the given forms (all must agree, and match `level` if set).
  std::int64_t level_of(const std::vector<const Form*>& forms) const;
  /// Explorer family from roles.basis and the explorer table.
  FamilyConfig family() const;

  friend bool operator==(const ProjectConfig&, const ProjectConfig&) = default;
};

/// Throws ConfigError with the offending key in the message.
ProjectConfig parse_config(std::string_view text, std::string_view source = "config");
ProjectConfig load_config(const std::filesystem::path& path);
std::string to_toml(const ProjectConfig& config);

mpq_class parse_rational(std::string_view s);

} // namespace x0plane

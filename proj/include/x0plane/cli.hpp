#pragma once

// Command-line front end. stdout carries machine-readable output only;
// diagnostics go to stderr.
//
// Exit codes: 0 ok, 1 other error, 2 invalid input (form or config),
// 3 forms not independent, 4 no relation up to bound, 5 consistency check
// failed.

#include <iosfwd>
#include <string>
#include <vector>

namespace x0plane {

namespace exit_code {
constexpr int ok = 0;
constexpr int other = 1;
constexpr int invalid = 2;
constexpr int dependent = 3;
constexpr int no_relation = 4;
constexpr int inconsistent = 5;
} // namespace exit_code

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace x0plane

#include "x0plane/cli.hpp"

#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

using namespace x0plane;

namespace {

const std::filesystem::path config_dir = X0PLANE_CONFIG_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string cfg(const char* name) { return (config_dir / name).string(); }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "x0plane_test_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

} // namespace

TEST_CASE("expand") {
  auto r = run({"--config", cfg("triple_a.toml"), "expand", "Delta", "--prec", "4"});
  CHECK(r.code == 0);
  CHECK(r.out == "0, 1, -24, 252\n");
  r = run({"--config", cfg("triple_c.toml"), "expand", "E4", "--prec", "3"});
  CHECK(r.out == "1, 240, 2160\n");
  r = run({"--config", cfg("triple_c.toml"), "expand", "E4", "--prec", "3", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("coefficients") == nlohmann::json::array({"1", "240", "2160"}));
  CHECK(j.at("weight") == 4);
}

TEST_CASE("expand rejects an invalid eta quotient") {
  const auto path = scratch("bad.toml");
  std::ofstream(path) << "level = 1\n[forms.bad]\neta = [[1, 1]]\n";
  const auto r = run({"--config", path.string(), "expand", "bad", "--prec", "4"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(r.err.find("non-integral weight") != std::string::npos);
}

TEST_CASE("relation") {
  auto r = run({"--config", cfg("triple_a.toml"), "relation"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("degree") == 2);
  // X^2 - YZ, normalised so that the Y*Z coefficient (first in monomial order) is positive.
  CHECK(j.at("monomials") == nlohmann::json::parse("[[0,1,1,1],[2,0,0,-1]]"));
  CHECK(j.at("kernel_dimensions") == nlohmann::json::parse("[0,1]"));

  r = run({"--config", cfg("triple_b.toml"), "relation"});
  j = nlohmann::json::parse(r.out);
  CHECK(j.at("monomials") == nlohmann::json::parse("[[0,2,0,1],[1,0,1,-1]]"));

  r = run({"--config", cfg("triple_c.toml"), "relation"});
  j = nlohmann::json::parse(r.out);
  CHECK(j.at("monomials") == nlohmann::json::parse("[[0,0,2,1],[1,0,1,3456],[1,1,0,-1],[2,0,0,2985984]]"));

  r = run({"--config", cfg("dependent.toml"), "relation"});
  CHECK(r.code == 3);
  CHECK(r.out.empty());
  CHECK(r.err.find("forms not independent") != std::string::npos);
}

TEST_CASE("--out redirects stdout to a file") {
  const auto path = scratch("relation.json");
  const auto r = run({"--config", cfg("triple_a.toml"), "--out", path.string(), "relation"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(nlohmann::json::parse(slurp(path)).at("degree") == 2);
}

TEST_CASE("degrees") {
  auto r = run({"--config", cfg("triple_a.toml"), "degrees"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("deg_C") == "2");
  CHECK(j.at("d") == "1");
  CHECK(j.at("eta") == "2");
  CHECK(j.at("pole_degree") == "1");

  r = run({"--config", cfg("triple_c.toml"), "degrees"});
  CHECK(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j.at("deg_y_Q") == "2");
  CHECK(j.at("mode") == "lemma-route-only");
}

TEST_CASE("explore") {
  const auto csv = scratch("w12.csv");
  auto r = run({"--config", cfg("family_w12.toml"), "--out", csv.string(), "--workers", "2", "explore"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("L_max") == 2);
  CHECK(j.at("census_Z") == nlohmann::json::parse(R"({"1": 100})"));
  CHECK(j.at("genericity") == true);
  const std::string text = slurp(csv);
  CHECK(std::count(text.begin(), text.end(), '\n') == 101);
  CHECK(text.rfind("index,lambda,deg_C,d,pole_degree,deg_y_Q,checks_passed\n", 0) == 0);

  const auto other = scratch("w12_seed.csv");
  r = run({"--config", cfg("family_w12.toml"), "--out", other.string(), "--seed", "7", "explore"});
  CHECK(r.code == 0);
  CHECK(slurp(other) != text);
}

TEST_CASE("validate") {
  auto r = run({"--config", cfg("eta_catalog.toml"), "validate"});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') >= 51);
  CHECK(r.out.find("false") == std::string::npos);

  r = run({"--config", cfg("dependent.toml"), "validate"});
  CHECK(r.code == 3);
  r = run({"--config", cfg("triple_c.toml"), "validate"});
  CHECK(r.code == 0);
}

TEST_CASE("usage errors") {
  CHECK(run({"relation"}).code == 2);
  CHECK(run({"--config", cfg("triple_a.toml")}).code == 2);
  CHECK(run({"--config", cfg("triple_a.toml"), "bogus"}).code == 2);
  CHECK(run({"--config", cfg("missing.toml"), "relation"}).code == 2);
  CHECK(run({"--config", cfg("triple_a.toml"), "expand", "nope"}).code == 2);
  CHECK(run({"--config", cfg("triple_a.toml"), "explore"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

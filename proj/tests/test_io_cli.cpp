#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "horoflow/cli.hpp"
#include "horoflow/io.hpp"
#include "horoflow/presets.hpp"

using namespace horoflow;
namespace fs = std::filesystem;

namespace {

const std::string kExamples = HOROFLOW_EXAMPLES_DIR;

std::string example(const std::string& name) { return kExamples + "/" + name; }

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "horoflow");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& content) {
  const fs::path dir = fs::temp_directory_path() / "horoflow_tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << content;
  return p;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("group spec parsing") {
  const GroupSpec par = parse_group_spec(std::string(R"({"generators": [[[1,1],[0,1]]]})"));
  REQUIRE(par.generators.size() == 1);
  CHECK(par.generators[0].approx_equal(Mobius::unipotent(1.0), 0.0));
  CHECK(par.max_word_length == 10);

  const GroupSpec hyp =
      parse_group_spec(std::string(R"({"family": {"kind": "cyclic-hyperbolic", "lambda": 4}})"));
  REQUIRE(hyp.generators.size() == 1);
  CHECK(hyp.generators[0].approx_equal(Mobius::from_coefficients(2.0, 0.0, 0.0, 0.5), 1e-15));

  CHECK_THROWS_AS(parse_group_spec(std::string(R"({"generators": [[[1,0],[0,2]]]})")), InvalidGenerator);
  CHECK_THROWS_AS(parse_group_spec(std::string(R"({"generators": [[[1,0],[0,1]]]})")), InvalidGenerator);
  CHECK_THROWS_AS(parse_group_spec(std::string("{not json")), ParseError);
  CHECK_THROWS_AS(parse_group_spec(std::string("{}")), ParseError);
  CHECK_THROWS_AS(parse_group_spec(std::string(
                      R"({"generators": [[[1,1],[0,1]]], "family": {"kind": "cyclic-parabolic"}})")),
                  ParseError);
  CHECK_THROWS_AS(parse_group_spec(std::string(R"({"generators": [[[1,1],[0,1]]], "extra": 1})")),
                  ParseError);
  CHECK_THROWS_AS(parse_group_spec(std::string(R"({"family": {"kind": "torus"}})")), ParseError);
  CHECK_THROWS_AS(parse_group_spec(std::string(R"({"generators": [[[1,1],[0,1]]], "max_word_length": -1})")),
                  ParseError);
  CHECK_THROWS_AS(parse_group_spec(std::string(R"({"generators": [[[1,1]]]})")), ParseError);
  CHECK_THROWS_AS(load_group_spec("/nonexistent/group.json"), ParseError);

  for (const char* name : {"parabolic.json", "hyperbolic.json", "schottky.json", "flute.json", "mixed.json"}) {
    const GroupSpec spec = load_group_spec(example(name));
    CHECK_NOTHROW(spec.validate());
  }
  const GroupSpec mixed = load_group_spec(example("mixed.json"));
  const GroupSpec preset = presets::parabolic_schottky();
  REQUIRE(mixed.generators.size() == preset.generators.size());
  for (std::size_t k = 0; k < mixed.generators.size(); ++k)
    CHECK(mixed.generators[k].approx_equal(preset.generators[k], 1e-15));
}

TEST_CASE("group spec round trip") {
  const GroupSpec specs[] = {presets::cyclic_parabolic(), presets::cyclic_hyperbolic(4.0),
                             presets::schottky_pair(presets::default_schottky_circles()),
                             presets::flute_truncated({1.0, 2.0, 3.0}), presets::parabolic_schottky()};
  for (const GroupSpec& spec : specs) {
    const GroupSpec back = parse_group_spec(group_spec_to_json(spec).dump());
    REQUIRE(back.generators.size() == spec.generators.size());
    for (std::size_t k = 0; k < spec.generators.size(); ++k)
      CHECK(back.generators[k].approx_equal(spec.generators[k], kDetTol));
    CHECK(back.max_word_length == spec.max_word_length);
    CHECK(back.dedup_tol == spec.dedup_tol);
  }
}

TEST_CASE("boundary points and reals") {
  CHECK(parse_boundary_point("inf").is_infinity());
  CHECK(parse_boundary_point("infinity").is_infinity());
  CHECK(parse_boundary_point("-2.5") == BoundaryPoint::finite(-2.5));
  CHECK_THROWS_AS(parse_boundary_point("2.5x"), InvalidArgument);
  CHECK_THROWS_AS(parse_boundary_point(""), InvalidArgument);

  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_real(std::numbers::pi)) == std::numbers::pi);
  CHECK(format_real(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_real(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(to_json(BoundaryPoint::infinity()) == "inf");
}

TEST_CASE("verify subcommand") {
  const auto r = invoke({"verify", "--samples", "2000", "--seed", "7", "--tol", "1e-9"});
  REQUIRE(r.status == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["tool"] == kToolVersion);
  CHECK(doc["config"]["seed"] == 7);
  CHECK(doc["result"]["all_passed"] == true);
  for (const auto& check : doc["result"]["checks"]) {
    CHECK(check["passed"] == true);
    CHECK(check["max_residual"].get<double>() < 1e-9);
  }
  const auto& sub = doc["result"]["displacement_substitution"];
  CHECK(sub["matching"] == "ln|b|");
  CHECK(sub["t_ln_abs_b_max_residual"].get<double>() < 1e-9);
}

TEST_CASE("inj subcommand") {
  const auto r = invoke({"inj", "--group", example("parabolic.json"), "--tmax", "10", "--step", "0.1"});
  REQUIRE(r.status == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 102);
  CHECK(rows[0] == std::vector<std::string>{"t", "inj_estimate"});
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double t = std::stod(rows[k][0]);
    CHECK(t == doctest::Approx(0.1 * static_cast<double>(k - 1)));
    CHECK(std::stod(rows[k][1]) == doctest::Approx(std::asinh(std::exp(-t) / 2.0)).epsilon(1e-9));
  }

  const auto clipped =
      invoke({"inj", "--group", example("parabolic.json"), "--tmin", "5", "--tmax", "10", "--step", "0.5"});
  REQUIRE(clipped.status == 0);
  CHECK(csv_rows(clipped.out).size() == 12);
}

TEST_CASE("orbit subcommand") {
  const auto r = invoke({"orbit", "--flow", "horocycle", "--tmin", "-2", "--tmax", "2", "--step", "0.5"});
  REQUIRE(r.status == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] == std::vector<std::string>{"s_or_t", "re", "im"});
  for (std::size_t k = 1; k < rows.size(); ++k) {
    CHECK(std::stod(rows[k][1]) == doctest::Approx(std::stod(rows[k][0])));
    CHECK(std::stod(rows[k][2]) == doctest::Approx(1.0));
  }
  const auto g = invoke({"orbit", "--flow", "geodesic", "--tmin", "0", "--tmax", "1", "--step", "0.5"});
  REQUIRE(g.status == 0);
  CHECK(std::stod(csv_rows(g.out)[3][2]) == doctest::Approx(std::exp(1.0)));
}

TEST_CASE("classify and diagnose subcommands") {
  const auto c = invoke({"classify", "--group", example("hyperbolic.json"), "--point", "1", "--depth", "10"});
  REQUIRE(c.status == 0);
  CHECK(nlohmann::json::parse(c.out)["result"]["verdict"] == "discrete-evidence");

  const auto p = invoke({"diagnose", "--group", example("parabolic.json")});
  REQUIRE(p.status == 0);
  CHECK(nlohmann::json::parse(p.out)["result"]["verdict"] == "recurrence-evidence");

  const auto h = invoke({"diagnose", "--group", example("hyperbolic.json")});
  REQUIRE(h.status == 0);
  const auto doc = nlohmann::json::parse(h.out);
  CHECK(doc["result"]["verdict"] == "inconclusive");
  CHECK(doc["result"]["sequence"].is_null());
}

TEST_CASE("exit codes") {
  CHECK(invoke({}).status == 2);
  CHECK(invoke({"bogus"}).status == 2);
  CHECK(invoke({"verify", "--tol", "0"}).status == 2);
  CHECK(invoke({"classify"}).status == 2);
  CHECK(invoke({"classify", "--group", example("parabolic.json"), "--depth", "0"}).status == 2);
  CHECK(invoke({"orbit", "--tmin", "1", "--tmax", "1"}).status == 2);
  CHECK(invoke({"orbit", "--flow", "sideways"}).status == 2);
  CHECK(invoke({"diagnose", "--group", example("parabolic.json"), "--band", "2", "1"}).status == 2);
  CHECK(invoke({"--version"}).status == 0);

  const auto bad_det = temp_file("det2.json", R"({"generators": [[[1,0],[0,2]]]})");
  const auto r = invoke({"classify", "--group", bad_det.string()});
  CHECK(r.status == 1);
  CHECK(r.err.find("generator 0") != std::string::npos);
  CHECK(invoke({"classify", "--group", "/nonexistent/group.json"}).status == 1);
  CHECK(invoke({"classify", "--group", example("parabolic.json"), "--point", "abc"}).status == 1);
  CHECK(invoke({"inj", "--group", example("parabolic.json"), "--depth", "1", "--frame", "1", "0", "0", "2"})
            .status == 1);
}

TEST_CASE("determinism and thread independence") {
  const std::vector<std::vector<std::string>> commands = {
      {"verify", "--samples", "500", "--seed", "11"},
      {"classify", "--group", example("schottky.json"), "--point", "0.3"},
      {"orbit", "--frame", "2", "1", "1", "1", "--tmax", "3"},
      {"inj", "--group", example("flute.json"), "--tmax", "4", "--step", "0.25"},
      {"diagnose", "--group", example("mixed.json")}};
  for (const auto& cmd : commands) {
    ::setenv("HOROFLOW_THREADS", "1", 1);
    const auto serial = invoke(cmd);
    ::setenv("HOROFLOW_THREADS", "4", 1);
    const auto parallel = invoke(cmd);
    const auto again = invoke(cmd);
    REQUIRE(serial.status == 0);
    CHECK(serial.out == parallel.out);
    CHECK(parallel.out == again.out);
  }
  ::unsetenv("HOROFLOW_THREADS");

  const fs::path a = fs::temp_directory_path() / "horoflow_tests" / "a.json";
  const fs::path b = fs::temp_directory_path() / "horoflow_tests" / "b.json";
  fs::create_directories(a.parent_path());
  REQUIRE(invoke({"verify", "--samples", "300", "--seed", "3", "-o", a.string()}).status == 0);
  REQUIRE(invoke({"verify", "--samples", "300", "--seed", "3", "-o", b.string()}).status == 0);
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  const std::string sa((std::istreambuf_iterator<char>(fa)), {});
  const std::string sb((std::istreambuf_iterator<char>(fb)), {});
  CHECK(!sa.empty());
  CHECK(sa == sb);
}

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/csv.hpp"
#include "json.hpp"
#include "scar/cli.hpp"
#include "scar/error.hpp"

using namespace scar;
using namespace scar::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream o, e;
  const int code = run(args, o, e);
  return {code, o.str(), e.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("scar_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, BasisReport) {
  const Result r = invoke({"basis", "--L", "10"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["dim"], 123);
  EXPECT_EQ(j["lucas"], 123);
  EXPECT_EQ(j["sectors"][2], 35);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({}).code, kUsage);
  EXPECT_EQ(invoke({"fsa", "--bogus"}).code, kUsage);
  EXPECT_EQ(invoke({"reproduce", "no-such-target"}).code, kUsage);
  EXPECT_EQ(invoke({"fsa", "--L", "13", "--initial", "z2"}).code, kConfigError);
  EXPECT_EQ(invoke({"fsa", "--L", "12", "--initial", "vacuum", "--term", "z2pert=0.1"}).code, kConfigError);
  EXPECT_EQ(invoke({"fsa", "--L", "12", "--initial", "z2", "--scheme", "vacuum"}).code, kConfigError);
  EXPECT_EQ(invoke({"basis", "--L", "40"}).code, kConfigError);
  EXPECT_EQ(invoke({"basis"}).code, kConfigError);
  EXPECT_EQ(invoke({"spectrum", "--L", "24"}).code, kCapacityError);
  EXPECT_EQ(invoke({"basis", "--help"}).code, kOk);
}

TEST(Cli, FsaCsvLayout) {
  const Result r = invoke({"fsa", "--L", "10", "--initial", "z2"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 11u);  // header + one row per forward step
  EXPECT_EQ(rows[0], "n,beta,delta,eps,delta_av");
  EXPECT_EQ(rows[1].substr(0, 2), "1,");
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST(Cli, OutputDirectoryAndSecondaryArtifacts) {
  const fs::path dir = scratch("fsa");
  const Result r = invoke({"fsa", "--L", "12", "--initial", "vacuum", "--term", "sigma3=0.31", "--out", dir.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_TRUE(fs::exists(dir / "fsa.csv"));
  const auto j = nlohmann::json::parse(slurp(dir / "fsa_summary.json"));
  EXPECT_EQ(j["closed_after"], 7);
  EXPECT_EQ(j["scheme"], "vacuum");
  fs::remove_all(dir);
}

TEST(Cli, ConfigFileWithFlagOverrides) {
  const fs::path dir = scratch("config");
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "run.json");
    f << R"({"L": 10, "initial": "z2", "terms": {"z2pert": 0.1}, "time": {"dt": 0.5, "t_max": 2}})";
  }
  Result r = invoke({"evolve", "--config", (dir / "run.json").string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(lines(r.out).size(), 6u);
  r = invoke({"evolve", "--config", (dir / "run.json").string(), "--t-max", "1", "--L", "12"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(lines(r.out).size(), 4u);
  {
    std::ofstream f(dir / "bad.json");
    f << R"({"L": 10, "colour": "red"})";
  }
  EXPECT_EQ(invoke({"evolve", "--config", (dir / "bad.json").string()}).code, kConfigError);
  fs::remove_all(dir);
}

TEST(Cli, LanczosAndComplexityColumns) {
  Result r = invoke({"lanczos", "--L", "10", "--initial", "z2", "--steps", "5"});
  ASSERT_EQ(r.code, kOk) << r.err;
  auto rows = lines(r.out);
  EXPECT_EQ(rows[0], "n,alpha,beta");
  EXPECT_EQ(rows.size(), 6u);
  r = invoke({"complexity", "--L", "10", "--initial", "z2", "--t-max", "1", "--dt", "0.5"});
  ASSERT_EQ(r.code, kOk) << r.err;
  rows = lines(r.out);
  EXPECT_EQ(rows[0], "t,return_probability,density,nnn_correlator,C_lanczos,leak_lanczos,C_fsa,leak_fsa");
  EXPECT_EQ(rows.size(), 4u);
}

TEST(Cli, OptimizeScanAndQfit) {
  const fs::path dir = scratch("opt");
  Result r = invoke({"optimize", "--L", "1000", "--objective", "neg_error3", "--lo", "0", "--hi", "1"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const double h = nlohmann::json::parse(r.out)["best"][0].get<double>();
  EXPECT_GT(h, 0.28);
  EXPECT_LT(h, 0.30);
  r = invoke({"optimize", "--L", "1000", "--initial", "vacuum", "--objective", "neg_error_n", "--free", "sigma3",
              "--lo", "0", "--hi", "1"});
  EXPECT_EQ(r.code, kConfigError);  // numeric FSA is limited to L <= 30
  r = invoke({"optimize", "--L", "12", "--initial", "vacuum", "--objective", "neg_error_n", "--free", "sigma3", "--lo",
              "0", "--hi", "1", "--out", dir.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_TRUE(fs::exists(dir / "trace.csv"));
  r = invoke({"qfit", "--L", "12", "--initial", "z3", "--scheme", "z3exact"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NEAR(nlohmann::json::parse(r.out)["q"].get<double>(), 1.0, 1e-3);
  fs::remove_all(dir);
}

TEST(Cli, ReproduceWritesTargetFiles) {
  const fs::path dir = scratch("repro");
  const Result r = invoke({"reproduce", "fsa-errors-z2", "--L", "10", "--out", dir.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(lines(slurp(dir / "third_step.csv"))[0], "L,beta3,beta3_formula,eps3,eps3_formula");
  EXPECT_EQ(lines(slurp(dir / "third_step.csv")).size(), 4u);  // L = 6, 8, 10
  fs::remove_all(dir);
}

TEST(Config, JsonRoundTrip) {
  RunConfig c = config_from_json(R"({"command": "fsa", "L": 14, "initial": "vacuum", "scheme": "vacuum",
      "terms": {"sigma3": 0.31}, "time": {"dt": 0.1, "t_max": 5}, "threads": 2, "seed": 9})");
  EXPECT_EQ(c.model.L, 14);
  EXPECT_EQ(c.model.strength("sigma3"), 0.31);
  EXPECT_EQ(c.resolved_scheme(), Scheme::vacuum);
  const RunConfig back = config_from_json(config_to_json(c));
  EXPECT_EQ(back.model.terms, c.model.terms);
  EXPECT_EQ(back.dt, 0.1);
  EXPECT_EQ(back.seed, 9u);
  EXPECT_THROW(config_from_json(R"({"L": "ten"})"), ConfigError);
  EXPECT_THROW(config_from_json(R"({"terms": {"zz": 1}})"), ConfigError);
  EXPECT_THROW(config_from_json("[1, 2"), ConfigError);
  EXPECT_EQ(default_scheme(StateTag::z2prime), Scheme::z2);
}

TEST(Config, TermAssignments) {
  ModelConfig m;
  apply_term(m, "sigma5=-0.25");
  EXPECT_EQ(m.strength("sigma5"), -0.25);
  EXPECT_THROW(apply_term(m, "sigma5"), ConfigError);
  EXPECT_THROW(apply_term(m, "sigma6=1"), ConfigError);
  EXPECT_THROW(apply_term(m, "sigma5=1x"), ConfigError);
}

TEST(Csv, RoundTripFormatting) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) EXPECT_EQ(std::stod(format_double(x)), x);
  std::ostringstream os;
  CsvWriter w(os, {"a", "b", "c"});
  w.row({1LL, 0.5, std::string("x")});
  EXPECT_EQ(os.str(), "a,b,c\n1,0.5,x\n");
  EXPECT_THROW(w.row({1LL}), std::exception);
}

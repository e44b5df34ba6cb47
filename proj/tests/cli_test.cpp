#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "gtest/gtest.h"
#include "json.hpp"

namespace wedge::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("wedgecode_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

TEST(Classify, BlockInstantiationQ16) {
  const auto r = run_cli({"classify", "--ell-prime", "2", "--d", "2"});
  EXPECT_EQ(r.code, kSuccess) << r.err;
  EXPECT_TRUE(contains(r.out, "bad=49 closed_form=49")) << r.out;
  EXPECT_TRUE(contains(r.out, "naive_bound=48"));
  EXPECT_TRUE(contains(r.out, "block_criterion_mismatches=0"));
}

TEST(Classify, SingleCosetFamily) {
  const auto r = run_cli({"classify", "--ell", "4", "--subgroup-order", "15"});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_TRUE(contains(r.out, "q=16 ell=4 h=15 t=1")) << r.out;
  EXPECT_TRUE(contains(r.out, "bad=31 naive_bound=16"));
}

TEST(Classify, BlockInstantiationQ64) {
  const auto r = run_cli({"classify", "--ell-prime", "3", "--d", "2"});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_TRUE(contains(r.out, "bad=343 closed_form=343")) << r.out;
}

TEST(Classify, OracleModeAgreesAndWritesCsv) {
  const auto dir = scratch("oracle");
  const auto r = run_cli({"classify", "--ell", "3", "--subgroup-order", "7", "--oracle",
                          "--out-dir", dir.string()});
  EXPECT_EQ(r.code, kSuccess) << r.err;
  EXPECT_TRUE(contains(r.out, "oracle_disagreements=0"));
  const std::string csv = slurp(dir / "classify.csv");
  EXPECT_TRUE(contains(csv, "a,b,bad,criterion_used\n0,0,0,oracle\n"));
  EXPECT_TRUE(contains(csv, "\n7,7,1,oracle\n"));
}

TEST(Classify, OracleBudgetExceededIsResourceGuard) {
  const auto r = run_cli({"classify", "--ell", "4", "--subgroup-order", "5", "--oracle",
                          "--budget", "100"});
  EXPECT_EQ(r.code, kResourceGuard);
  EXPECT_TRUE(contains(r.err, "oracle infeasible"));
}

TEST(Classify, OutputIsByteIdenticalAcrossRuns) {
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  run_cli({"classify", "--ell-prime", "2", "--d", "2", "--out-dir", a.string()});
  run_cli({"classify", "--ell-prime", "2", "--d", "2", "--out-dir", b.string()});
  EXPECT_EQ(slurp(a / "classify.csv"), slurp(b / "classify.csv"));
  EXPECT_FALSE(fs::exists(a / "classify.csv.tmp"));
}

TEST(Build, Q16H5) {
  const auto dir = scratch("build16");
  const auto r = run_cli({"build", "--ell", "4", "--subgroup-order", "5", "--binary",
                          "--out-dir", dir.string()});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  EXPECT_TRUE(contains(r.out, "N=256 q=16 t=3 K=208 redundancy=48 bad_monomial_bound=49"))
      << r.out;
  EXPECT_TRUE(contains(r.out, "binary_dimension=208 binary_redundancy=48"));

  const auto desc = nlohmann::json::parse(slurp(dir / "code.json"));
  EXPECT_EQ(desc.at("ell"), 4);
  EXPECT_EQ(desc.at("subgroup_order"), 5);
  EXPECT_EQ(desc.at("coordinate_order"), "row-major-poly-basis");

  const std::string gen = slurp(dir / "generator.txt");
  EXPECT_EQ(gen.substr(0, gen.find('\n')), "# q=16 rows=207 cols=256");
  const std::string parity = slurp(dir / "parity.txt");
  EXPECT_EQ(parity.substr(0, parity.find('\n')), "# q=16 rows=768 cols=256");
  const std::string trace = slurp(dir / "trace_generators.txt");
  EXPECT_EQ(trace.substr(0, trace.find('\n')), "# q=2 rows=208 cols=256");

  const auto again = scratch("build16_again");
  run_cli({"build", "--ell", "4", "--subgroup-order", "5", "--binary", "--out-dir",
           again.string()});
  for (const char* f : {"code.json", "generator.txt", "parity.txt", "trace_generators.txt"}) {
    EXPECT_EQ(slurp(dir / f), slurp(again / f)) << f;
  }
}

TEST(Build, SmallestParameters) {
  const auto dir = scratch("build4");
  const auto r = run_cli({"build", "--ell", "2", "--subgroup-order", "3", "--out-dir",
                          dir.string()});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_TRUE(contains(r.out, "N=16 q=4 t=1 K=10 redundancy=6")) << r.out;
}

TEST(Build, MemoryGuardExitCode) {
  const auto r = run_cli({"build", "--ell", "10", "--subgroup-order", "1023"});
  EXPECT_EQ(r.code, kResourceGuard);
}

TEST(Verify, PassesAtQ16) {
  const auto r = run_cli({"verify", "--ell", "4", "--subgroup-order", "5", "--seed", "1",
                          "--trials", "100"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("q"), 16);
  EXPECT_EQ(j.at("h"), 5);
  EXPECT_EQ(j.at("t"), 3);
  EXPECT_EQ(j.at("trials"), 100);
  EXPECT_EQ(j.at("checks"), 100 * 256 * 3);
  EXPECT_EQ(j.at("seed"), 1);
  EXPECT_TRUE(j.at("failures").empty());
  EXPECT_EQ(j.at("passed"), true);
  EXPECT_EQ(j.at("parallel_reads").at("consistent"), true);
}

TEST(Verify, BinaryMode) {
  const auto r = run_cli({"verify", "--ell", "4", "--subgroup-order", "5", "--binary",
                          "--trials", "50"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out).at("alphabet"), "binary");
}

TEST(Verify, InjectedFaultFails) {
  const auto r = run_cli({"verify", "--ell", "4", "--subgroup-order", "5", "--trials", "20",
                          "--inject-fault"});
  EXPECT_EQ(r.code, kVerificationFailure);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j.at("failures").empty());
  EXPECT_EQ(j.at("passed"), false);
}

TEST(Table, FigureRows) {
  const auto r = run_cli({"table"});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_TRUE(contains(r.out, "2\t0.2500\t0.7018\t0.7500\t.702\n")) << r.out;
  EXPECT_TRUE(contains(r.out, "3\t0.1667\t0.6511\t0.6667\t.651\n"));
  EXPECT_TRUE(contains(r.out, "4\t0.1250\t0.6193\t0.6250\t.619\n"));
  EXPECT_TRUE(contains(r.out, "0.5000 as d -> infinity"));
}

TEST(Plan, DyadicExamples) {
  auto r = run_cli({"plan", "--alpha", "1/4", "--n", "2"});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_TRUE(contains(r.out, "q=16 ell=4 h=5 t=3 N=256 redundancy_bound=48")) << r.out;
  r = run_cli({"plan", "--alpha", "1/4", "--n", "3"});
  EXPECT_TRUE(contains(r.out, "q=64 ell=6 h=9 t=7")) << r.out;
  r = run_cli({"plan", "--alpha", "3/8", "--n", "1"});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_TRUE(contains(r.out, "a=1 b=2")) << r.out;
  EXPECT_TRUE(contains(r.out, "q=16 ell=4 h=3 t=5"));
  EXPECT_TRUE(contains(r.out, "divides=yes feasible=yes"));
  r = run_cli({"plan", "--alpha", "1/4", "--n", "13"});
  EXPECT_EQ(r.code, kUsageError);
  EXPECT_TRUE(contains(r.out, "feasible=no"));
}

TEST(Usage, BadArgumentsExitWithTwo) {
  EXPECT_EQ(run_cli({}).code, kUsageError);
  EXPECT_EQ(run_cli({"classify"}).code, kUsageError);
  EXPECT_EQ(run_cli({"classify", "--ell", "4", "--subgroup-order", "5", "--d", "2"}).code,
            kUsageError);
  EXPECT_EQ(run_cli({"classify", "--ell", "4", "--subgroup-order", "4"}).code, kUsageError);
  EXPECT_EQ(run_cli({"plan", "--alpha", "1/3"}).code, kUsageError);
  EXPECT_EQ(run_cli({"plan", "--alpha", "3/4"}).code, kUsageError);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kUsageError);
}

TEST(Binary, ProcessExitCodes) {
  const std::string bin = WEDGECODE_BIN;
  EXPECT_EQ(std::system((bin + " table > /dev/null").c_str()), 0);
  const int status = std::system((bin + " classify > /dev/null 2>&1").c_str());
  EXPECT_EQ(WEXITSTATUS(status), kUsageError);
}

}  // namespace
}  // namespace wedge::cli

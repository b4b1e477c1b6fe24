#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"
#include "parse.hpp"
#include "report.hpp"
#include "suite.hpp"

using namespace normderiv;
using normderiv::cli::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string data_dir = NORMDERIV_DATA_DIR;

}  // namespace

TEST(Eval, L1Example) {
  const auto r = run({"eval", "--norm", "l1", "--dim", "3", "--x", "1,0,0", "--y", "1,1,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j["command"], "eval");
  EXPECT_EQ(j["results"]["rho_minus"].get<double>(), -1);
  EXPECT_EQ(j["results"]["rho_plus"].get<double>(), 3);
  EXPECT_EQ(j["results"]["rho"].get<double>(), 1);
  EXPECT_EQ(j["results"]["rho_star"].get<double>(), -3);
  EXPECT_NEAR(j["results"]["numeric"]["rho_plus"]["value"].get<double>(), 3, 1e-6);
  EXPECT_FALSE(cli::validate_report(j).has_value());
}

TEST(Eval, NegativeVectorEntries) {
  const auto r = run({"eval", "--norm", "linf", "--dim", "2", "--x", "-1,1", "--y", "-1,-1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["inputs"]["x"][0].get<double>(), -1);
}

TEST(Orth, LinfExample) {
  const std::vector<std::string> base = {"orth", "--norm", "linf", "--dim", "2", "--x", "1,1", "--y", "1,-1"};
  auto args = base;
  args.insert(args.end(), {"--flavor", "rho"});
  auto r = run(args);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.json()["results"]["verdict"]["holds"].get<bool>());
  args = base;
  args.insert(args.end(), {"--flavor", "rho_star"});
  r = run(args);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(r.json()["results"]["verdict"]["holds"].get<bool>());
}

TEST(Orth, ExpectationMismatchExitsOne) {
  const auto r = run({"orth", "--norm", "l1", "--dim", "3", "--x", "1,0,0", "--y", "1,1,1", "--flavor", "rho_star",
                      "--expect", "true"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("expected_verdict"), std::string::npos);
  EXPECT_FALSE(cli::validate_report(r.json()).has_value());
}

TEST(Orth, BirkhoffIncludesOracleAndSection) {
  const auto r = run({"orth", "--norm", "l1", "--dim", "3", "--x", "1,0,0", "--y", "1,1,1", "--flavor", "B", "--u",
                      "1,0,0", "--v", "0,1,0", "--resolution", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_TRUE(j["results"]["birkhoff_oracle"]["holds"].get<bool>());
  EXPECT_EQ(j["results"]["section"]["profile"].size(), 8u);
}

TEST(Decompose, L1Example) {
  const auto r = run({"decompose", "--norm", "l1", "--dim", "3", "--x", "1,0,0", "--lambda", "1", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_TRUE(j["results"]["holds"].get<bool>());
  EXPECT_EQ(j["results"]["y"].size(), 3u);
  const auto& res = j["residuals"];
  const auto& tol = j["tolerances"];
  const double abs_tol = tol["abs_tol"], rel_tol = tol["rel_tol"];
  EXPECT_LE(res["residual_first"].get<double>(), abs_tol + rel_tol * res["scale_first"].get<double>());
  EXPECT_LE(res["residual_second"].get<double>(), abs_tol + rel_tol * res["scale_second"].get<double>());
}

TEST(Decompose, NonexistentCaseExitsOne) {
  const auto r = run({"decompose", "--norm", "linf", "--dim", "2", "--x", "1,0.5", "--lambda", "0.5"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.json()["results"]["holds"].get<bool>());
}

TEST(MapAnalyze, DiagonalOnL2) {
  const auto r = run({"map-analyze", "--norm", "l2", "--dim", "2", "--matrix", "1,0;0,2", "--expect-similarity",
                      "false", "--expect-preserves", "false"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_NEAR(j["results"]["op_norm_est"].get<double>(), 2, 0.04);
  EXPECT_FALSE(j["results"]["preserves_rho_star"]["witness"].is_null());
}

TEST(MapAnalyze, RejectsShapeMismatch) {
  const auto r = run({"map-analyze", "--norm", "l2", "--dim", "3", "--matrix", "1,0;0,2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--matrix"), std::string::npos);
}

TEST(Smoothness, ExpectationsAndPolyhedralFile) {
  auto r = run({"smoothness", "--norm", "l1", "--dim", "3", "--n", "100", "--expect", "nonsmooth"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["results"]["witness"]["gap"].get<double>(), 4);
  r = run({"smoothness", "--norm", "poly:" + data_dir + "/hexagon.csv", "--dim", "2", "--n", "100", "--expect",
           "smooth"});
  EXPECT_EQ(r.code, 1);
}

TEST(Geometry, L2InnerBound) {
  const auto r = run({"geometry", "--norm", "l2", "--dim", "2", "--n", "64", "--inner-weights", "1,1", "--delta", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_LE(j["results"]["parallelogram"]["delta_min_feasible"].get<double>(), 1e-9);
  EXPECT_TRUE(j["results"]["inner_bound"]["bound"]["holds"].get<bool>());
}

TEST(CompareNorms, ScaledL2) {
  const auto r = run({"compare-norms", "--norm", "l2", "--norm2", "wlp:2:4,4", "--dim", "2", "--n", "200"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_NEAR(j["results"]["alpha"].get<double>(), 17, 1e-9);
  EXPECT_FALSE(j["results"]["printed_bound"]["holds"].get<bool>());
  EXPECT_TRUE(j["results"]["proportional"]["holds"].get<bool>());
}

TEST(Usage, MalformedInputsExitTwoNamingTheFlag) {
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases = {
      {{"eval", "--norm", "l7x", "--dim", "2", "--x", "1,0", "--y", "0,1"}, "--norm"},
      {{"eval", "--norm", "l1", "--dim", "2", "--x", "1,a", "--y", "0,1"}, "--x"},
      {{"eval", "--norm", "l1", "--dim", "2", "--x", "1,0,0", "--y", "0,1"}, "--x"},
      {{"eval", "--norm", "lp:0.5", "--dim", "2", "--x", "1,0", "--y", "0,1"}, "--norm"},
      {{"eval", "--norm", "l1", "--dim", "2", "--x", "1,0", "--y", "0,1", "--abs-tol", "-1"}, "--abs-tol"},
      {{"orth", "--norm", "l1", "--dim", "2", "--x", "1,0", "--y", "0,1", "--flavor", "Q"}, "--flavor"},
      {{"decompose", "--norm", "l1", "--dim", "2", "--x", "1,0", "--lambda", "-1"}, "--lambda"},
      {{"eval", "--norm", "poly:/nonexistent.csv", "--dim", "2", "--x", "1,0", "--y", "0,1"}, "--norm"},
      {{"suite", "--profile", "huge"}, "--profile"},
  };
  for (const auto& [args, flag] : cases) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 2) << args[2];
    EXPECT_NE(r.err.find(flag), std::string::npos) << r.err;
    EXPECT_TRUE(r.out.empty());
  }
  EXPECT_EQ(run({"eval", "--norm", "l1"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST(Usage, SmoothOnlyFlavorOnPolyhedralSpace) {
  const auto r = run({"orth", "--norm", "l1", "--dim", "2", "--x", "1,0", "--y", "0,1", "--flavor", "s"});
  EXPECT_EQ(r.code, 2);
}

TEST(Usage, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("decompose"), std::string::npos);
}

TEST(Report, DeterministicAndRoundTrips) {
  const std::vector<std::string> args = {"smoothness", "--norm", "lp:3", "--dim", "3", "--n", "64", "--seed", "2",
                                         "--omit-timing"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = a.json();
  EXPECT_FALSE(j.contains("wall_time_s"));
  EXPECT_EQ(cli::dump_report(j), a.out);
}

TEST(Report, KeyOrderAndPrecision) {
  const auto r = run({"eval", "--norm", "l2", "--dim", "2", "--x", "0.1,0.2", "--y", "0.3,0.7"});
  ASSERT_EQ(r.code, 0);
  const auto j = r.json();
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  const std::vector<std::string> expected = {"command",    "inputs", "results", "residuals",
                                             "tolerances", "seed",   "checks",  "wall_time_s"};
  EXPECT_EQ(keys, expected);
  EXPECT_EQ(j["results"]["rho"].get<double>(), 0.1 * 0.3 + 0.2 * 0.7);
}

TEST(Report, ValidatorRejectsMalformed) {
  Json j = Json::parse(run({"eval", "--norm", "l1", "--dim", "2", "--x", "1,0", "--y", "0,1"}).out);
  EXPECT_FALSE(cli::validate_report(j).has_value());
  Json bad = j;
  bad["extra"] = 1;
  EXPECT_TRUE(cli::validate_report(bad).has_value());
  bad = j;
  bad["checks"][0]["passed"] = "yes";
  EXPECT_TRUE(cli::validate_report(bad).has_value());
  bad = j;
  bad.erase("tolerances");
  EXPECT_TRUE(cli::validate_report(bad).has_value());
}

TEST(Parse, NormGrammar) {
  EXPECT_EQ(cli::parse_norm("lp:3", 3).label(), "lp:3/R3");
  EXPECT_EQ(cli::parse_norm("wlp:2:1,4,9", 3).label(), "wlp:2:1,4,9/R3");
  EXPECT_EQ(cli::parse_norm("poly:hexagon.csv", 2, "--norm", data_dir).label(), "poly[3x2]/R2");
  EXPECT_THROW(cli::parse_norm("wlp:2:1,4", 3), cli::usage_error);
  EXPECT_THROW(cli::parse_norm("poly:hexagon.csv", 3, "--norm", data_dir), cli::usage_error);
}

TEST(Parse, MatrixAndVectorFiles) {
  const Matrix m = cli::parse_matrix("1,2;3,4", "--matrix");
  EXPECT_EQ(m(1, 0), 3);
  const Matrix h = cli::parse_matrix("@" + data_dir + "/hexagon.csv", "--matrix");
  EXPECT_EQ(h.rows(), 3);
  EXPECT_THROW(cli::parse_matrix("1,2;3", "--matrix"), cli::usage_error);
  EXPECT_THROW(cli::parse_vector("", "--x"), cli::usage_error);
  EXPECT_THROW(cli::parse_vector("@/nonexistent", "--x"), cli::usage_error);
}

TEST(Suite, ShippedTableLabels) {
  const auto t = cli::shipped_table();
  ASSERT_EQ(t.size(), 7u);
  for (const auto& e : t) EXPECT_EQ(e.expect_smooth, e.space.smooth_by_construction()) << e.name;
}

TEST(Suite, BrokenTableExitsOneNamingTheProperty) {
  const auto r = run({"suite", "--table", data_dir + "/broken_table.txt", "--omit-timing"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("smoothness_classification[l1-R3]"), std::string::npos) << r.err;
  const auto j = r.json();
  EXPECT_FALSE(cli::validate_report(j).has_value());
}

TEST(Suite, PolyhedralTableResolvesRelativePaths) {
  const auto t = cli::read_table(data_dir + "/hexagon_table.txt");
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].space.dim(), 2);
  EXPECT_THROW(cli::read_table(data_dir + "/missing.txt"), std::exception);
}

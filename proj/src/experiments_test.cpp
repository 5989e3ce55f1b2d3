#include "qha/experiments.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace qha {
namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("qha_experiments_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ExperimentConfig small(const std::string& name) {
  ExperimentConfig c;
  c.experiment = name;
  c.seed = 3;
  return c;
}

TEST(Config, ParsesJsonAndRejectsUnknownKeys) {
  const auto c = config_from_json(nlohmann::json::parse(
      R"({"experiment": "gauss_alc", "d": 64, "seed": 9, "trials": 4, "params": {"atoms": 2}, "svg": false})"));
  EXPECT_EQ(c.experiment, "gauss_alc");
  EXPECT_EQ(c.d, 64);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.trials, 4);
  EXPECT_FALSE(c.svg);
  EXPECT_EQ(c.params.at("atoms"), 2);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"experimnt": "x"})")), std::invalid_argument);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"d": "large"})")), std::invalid_argument);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"([1, 2])")), std::invalid_argument);
}

TEST(Config, HashIgnoresOutputOnlyFields) {
  ExperimentConfig a = small("bounds_suite");
  ExperimentConfig b = a;
  b.out = "/elsewhere";
  b.threads = 4;
  b.svg = false;
  EXPECT_EQ(config_hash(a), config_hash(b));
  b.seed = 4;
  EXPECT_NE(config_hash(a), config_hash(b));
  b = a;
  b.params["max_rank"] = 2;
  EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(ResultTable, CsvLayout) {
  ResultTable t;
  t.columns = {"a", "b"};
  t.metadata = {{"key", "value"}};
  t.add_row({1.5, std::numeric_limits<double>::quiet_NaN()});
  t.add_row({-2.0, 0.25});
  EXPECT_EQ(t.to_csv(), "# key: value\na,b\n1.5,\n-2,0.25\n");
  EXPECT_THROW(t.add_row({1.0}), std::invalid_argument);
}

TEST(Catalog, ContainsEveryExperiment) {
  const auto names = experiment_names();
  for (const char* expected : {"hermite_interp", "chirp_ed", "chirp_totalcorr", "gauss_alc", "chirp_alc", "alc_vs_ed",
                               "local_components", "hermite_mix", "tf_weighted", "cohen_demo", "bounds_suite",
                               "alc_scan"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), expected), names.end()) << expected;
  }
  EXPECT_THROW(run_experiment(small("no_such_experiment")), std::invalid_argument);
}

TEST(HermiteInterp, EndpointEntropyIsZero) {
  ExperimentConfig c = small("hermite_interp");
  c.d = 64;
  const auto r = run_experiment(c);
  ASSERT_FALSE(r.table.rows.empty());
  EXPECT_DOUBLE_EQ(r.table.rows.front()[0], 0.0);
  EXPECT_NEAR(r.table.rows.front()[1], 0.0, 1e-10);
  EXPECT_NEAR(r.table.rows.back()[1], 0.0, 1e-10);
  EXPECT_TRUE(r.checks_pass());
}

TEST(Determinism, RepeatedRunsGiveIdenticalCsv) {
  for (const char* name : {"hermite_interp", "bounds_suite", "local_components"}) {
    ExperimentConfig c = small(name);
    c.d = name == std::string("bounds_suite") ? 16 : 64;
    c.trials = name == std::string("bounds_suite") ? 6 : 0;
    EXPECT_EQ(run_experiment(c).table.to_csv(), run_experiment(c).table.to_csv()) << name;
  }
}

TEST(Determinism, ThreadCountDoesNotChangeOutput) {
  ExperimentConfig c = small("gauss_alc");
  c.d = 64;
  c.n = 6;
  c.trials = 5;
  c.params = {{"scales", {1.0, 1.2}}};
  const std::string one = run_experiment(c).table.to_csv();
  c.threads = 3;
  EXPECT_EQ(run_experiment(c).table.to_csv(), one);
}

TEST(Sweep, LowerBoundHoldsOnSmallRun) {
  ExperimentConfig c = small("gauss_alc");
  c.d = 64;
  c.n = 8;
  c.trials = 3;
  const auto r = run_experiment(c);
  EXPECT_EQ(r.table.rows.size(), 9u);
  EXPECT_TRUE(r.theorems_hold());
  EXPECT_EQ(r.report.at("config").at("trials"), 3);
}

TEST(ChirpEd, RankEqualsSizeBelowDimension) {
  ExperimentConfig c = small("chirp_ed");
  c.d = 64;
  c.trials = 2;
  c.params = {{"sizes", {8, 16, 32}}, {"omega_cells", 16}};
  const auto r = run_experiment(c);
  ASSERT_EQ(r.table.rows.size(), 6u);
  for (const auto& row : r.table.rows) EXPECT_EQ(row[2], row[0]);
}

TEST(BoundsSuite, InconclusiveIsEmptyField) {
  ExperimentConfig c = small("bounds_suite");
  c.d = 16;
  c.trials = 4;
  const auto r = run_experiment(c);
  EXPECT_TRUE(r.theorems_hold());
  const auto csv = r.table.to_csv();
  // Spread-out random states leave the covariance status inconclusive.
  EXPECT_NE(csv.find(",,"), std::string::npos);
}

TEST(Write, FilesAndSvgFlag) {
  ExperimentConfig c = small("hermite_mix");
  c.d = 64;
  c.params = {{"count", 6}, {"max_crossover", 6}};
  c.out = scratch_dir("write");
  auto files = write_experiment(run_experiment(c));
  EXPECT_TRUE(std::filesystem::exists(files.csv));
  EXPECT_TRUE(std::filesystem::exists(files.report));
  ASSERT_FALSE(files.svg.empty());
  EXPECT_EQ(slurp(files.svg).rfind("<svg", 0), 0u);
  const auto report = nlohmann::json::parse(slurp(files.report));
  EXPECT_EQ(report.at("experiment"), "hermite_mix");
  EXPECT_NE(slurp(files.csv).find("# config_hash: " + report.at("config_hash").get<std::string>()), std::string::npos);

  c.svg = false;
  c.out = scratch_dir("nosvg");
  files = write_experiment(run_experiment(c));
  EXPECT_TRUE(files.svg.empty());
  EXPECT_FALSE(std::filesystem::exists(c.out / "hermite_mix.svg"));
}

TEST(Params, BadValuesAreRejected) {
  ExperimentConfig c = small("hermite_interp");
  c.d = 32;
  c.params = {{"steps", "many"}};
  EXPECT_THROW(run_experiment(c), std::invalid_argument);
  c.params = {{"noise_levels", {0.1, 0.2}}};
  c.experiment = "local_components";
  EXPECT_THROW(run_experiment(c), std::invalid_argument);
}

}  // namespace
}  // namespace qha

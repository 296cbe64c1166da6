#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kakeya/experiments.hpp"
#include "kakeya/tower.hpp"

namespace kakeya {
namespace {

ExperimentConfig populated() {
  ExperimentConfig c;
  c.base = "7";
  c.tower = {"7", "49"};
  c.maps = {{"t1^3", "t2^3"}, {"t2 + 3*t1^2", "t1*t2"}};
  c.family = FamilySpec{4, 2};
  c.fields = {"5", "9"};
  c.suite = std::vector<std::string>{"squares-size", "grassmann-identity"};
  c.budget = 12345;
  c.memory_mb = 64;
  c.threads = 3;
  c.seed = 99;
  c.out = "some dir/out";
  return c;
}

TEST(Config, RoundTripsThroughText) {
  for (const ExperimentConfig& c : {ExperimentConfig{}, populated()}) {
    const std::string text = emit_config(c);
    const ExperimentConfig back = parse_config(text);
    EXPECT_EQ(back, c);
    EXPECT_EQ(emit_config(back), text);
  }
}

TEST(Config, EmptySuiteDiffersFromUnsetSuite) {
  ExperimentConfig c;
  c.suite = std::vector<std::string>{};
  const ExperimentConfig back = parse_config(emit_config(c));
  ASSERT_TRUE(back.suite.has_value());
  EXPECT_TRUE(back.suite->empty());
  EXPECT_FALSE(parse_config(emit_config(ExperimentConfig{})).suite.has_value());
}

TEST(Config, PartialFileKeepsDefaults) {
  const ExperimentConfig c = parse_config("seed: 5\ntower: [\"9\"]\n");
  EXPECT_EQ(c.seed, 5u);
  EXPECT_EQ(c.tower, std::vector<std::string>{"9"});
  EXPECT_EQ(c.budget, ExperimentConfig{}.budget);
  EXPECT_EQ(parse_config(""), ExperimentConfig{});
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(parse_config("colour: red\n"), ConfigError);
  EXPECT_THROW(parse_config("seed: [1, 2]\n"), ConfigError);
  EXPECT_THROW(parse_config("budget: lots\n"), ConfigError);
  EXPECT_THROW(parse_config("maps: [{L: t1}]\n"), ConfigError);
  EXPECT_THROW(parse_config("family: {count: 2, depth: 3}\n"), ConfigError);
  EXPECT_THROW(parse_config("threads: 0\n"), ConfigError);
  EXPECT_THROW(parse_config("seed: [1\n"), ConfigError);
  EXPECT_THROW(parse_config("- 1\n- 2\n"), ConfigError);
}

TEST(Family, SeedDeterminesMaps) {
  const FieldRef f = tower_field(7, 1);
  const FamilySpec fam{10, 3};
  EXPECT_EQ(generate_family(f, fam, 1), generate_family(f, fam, 1));
  EXPECT_NE(generate_family(f, fam, 1), generate_family(f, fam, 2));
  EXPECT_EQ(generate_family(f, fam, 1).size(), 10u);
}

TEST(Family, ResolveOrderAndDefault) {
  ExperimentConfig c;
  EXPECT_EQ(resolve_maps(c).size(), 2u);
  c.maps = {{"t1", "t2"}};
  c.family = FamilySpec{3, 2};
  const auto maps = resolve_maps(c);
  ASSERT_EQ(maps.size(), 4u);
  EXPECT_EQ(maps[0], (MapSpec{"t1", "t2"}));
}

TEST(Sweep, SingleFieldSingleMapGivesOneRow) {
  ExperimentConfig c;
  c.tower = {"5"};
  c.maps = {{"t1", "t2"}};
  const auto rows = sweep(c);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].image_size, 101u);
  EXPECT_EQ(rows[0].branch, "separated");
  EXPECT_LE(rows[0].cs_bound, rows[0].image_size);
}

TEST(Sweep, SeededFamilyReproducibleAcrossRunsAndThreads) {
  ExperimentConfig c;
  c.base = "7";
  c.tower = {"7"};
  c.family = FamilySpec{10, 3};
  c.seed = 11;
  const std::string first = sweep_csv(sweep(c));
  c.threads = 4;
  const std::string second = sweep_csv(sweep(c));
  EXPECT_EQ(first, second);
  EXPECT_EQ(std::count(first.begin(), first.end(), '\n'), 11);
  EXPECT_EQ(first.find("wall"), std::string::npos);
  c.seed = 12;
  EXPECT_NE(sweep_csv(sweep(c)), first);
}

TEST(Sweep, RejectsForeignTowerField) {
  ExperimentConfig c;
  c.tower = {"7"};
  EXPECT_THROW(sweep(c), ConfigError);
}

TEST(Sweep, MemoryCapIsABudgetError) {
  ExperimentConfig c;
  c.tower = {"125"};
  c.memory_mb = 0;
  EXPECT_THROW(sweep(c), BudgetExceeded);
}

TEST(Suite, EmptySelectionPassesTrivially) {
  ExperimentConfig c;
  c.suite = std::vector<std::string>{};
  const SuiteResult r = run_suite(c);
  EXPECT_TRUE(r.records.empty());
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.exit_code(), 0);
  EXPECT_EQ(to_json(r)["verdict"], "pass");
}

TEST(Suite, UnknownCheckIsAConfigError) {
  ExperimentConfig c;
  c.suite = std::vector<std::string>{"no-such-check"};
  EXPECT_THROW(run_suite(c), ConfigError);
  c.suite = std::vector<std::string>{"squares-size"};
  c.fields = {"6"};
  EXPECT_THROW(run_suite(c), InvalidArgument);
}

TEST(Suite, EvenCharacteristicIsRefusedAndSuiteContinues) {
  ExperimentConfig c;
  c.suite = std::vector<std::string>{"permutation-fraction", "squares-size", "grassmann-identity"};
  c.fields = {"4", "9"};
  const SuiteResult r = run_suite(c);
  ASSERT_EQ(r.records.size(), 6u);
  EXPECT_EQ(r.records[0].status, CheckStatus::kHypothesisRefused);
  EXPECT_EQ(r.records[1].status, CheckStatus::kPass);
  EXPECT_EQ(r.records[2].status, CheckStatus::kHypothesisRefused);
  EXPECT_EQ(r.records[3].status, CheckStatus::kPass);
  EXPECT_EQ(r.records[4].status, CheckStatus::kPass);  // the identity holds in every characteristic
  EXPECT_TRUE(r.passed());
}

TEST(Suite, BudgetStopIsLocalToTheCheck) {
  ExperimentConfig c;
  c.suite = std::vector<std::string>{"degm1-zero-bound", "grassmann-identity"};
  c.fields = {"7"};
  c.budget = 100;
  const SuiteResult r = run_suite(c);
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.records[0].status, CheckStatus::kBudgetExceeded);
  EXPECT_FALSE(r.records[0].note.empty());
  EXPECT_EQ(r.records[1].status, CheckStatus::kPass);
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(Suite, ConjecturalCheckNeverFails) {
  ExperimentConfig c;
  c.suite = std::vector<std::string>{"conjecture-sweep"};
  c.fields = {"5", "7"};  // mixed characteristics cannot form a tower
  SuiteResult r = run_suite(c);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].status, CheckStatus::kEvidenceOnly);
  c.fields = {"5", "25"};
  r = run_suite(c);
  ASSERT_EQ(r.records.size(), 2u);
  for (const auto& rec : r.records) {
    EXPECT_EQ(rec.status, CheckStatus::kEvidenceOnly);
    EXPECT_EQ(rec.field, "5,25");
  }
}

TEST(Suite, FailingStatementSetsExitCode) {
  ExperimentConfig c;
  c.suite = std::vector<std::string>{"squares-coverage", "completed-squares-coverage"};
  c.fields = {"5"};
  const SuiteResult r = run_suite(c);
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.records[0].status, CheckStatus::kFail);
  EXPECT_EQ(r.records[0].numbers["coverage"][0]["missing_first"][0], "(1 0)");
  EXPECT_EQ(r.records[1].status, CheckStatus::kPass);
  EXPECT_EQ(r.exit_code(), 1);
}

TEST(Suite, ReportsIdenticalAcrossThreadCounts) {
  ExperimentConfig c;
  c.suite = std::vector<std::string>{"plane-fiber-identity", "fiber-duality", "permutation-fraction",
                                     "grassmann-lines", "cauchy-schwarz-soundness"};
  c.fields = {"5", "9"};
  const SuiteResult one = run_suite(c);
  c.threads = 4;
  const SuiteResult four = run_suite(c);
  EXPECT_EQ(to_json(one).dump(), to_json(four).dump());
  EXPECT_EQ(suite_csv(one), suite_csv(four));
  EXPECT_TRUE(one.passed());
  EXPECT_EQ(to_json(one).dump().find("wall"), std::string::npos);
}

TEST(Suite, CatalogNamesHaveDefaults) {
  for (const auto& name : suite_check_names()) EXPECT_NO_THROW(default_check_fields(name));
  EXPECT_THROW(default_check_fields("nope"), ConfigError);
}

int run(const std::string& args) {
  const std::string cmd = std::string(KAKEYA_FORGE) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, ExitCodes) {
  const auto dir = std::filesystem::temp_directory_path() / "kakeya_cli_test";
  const std::string out = "--out " + dir.string();
  EXPECT_EQ(run("field --field 9"), 0);
  EXPECT_EQ(run("image --field 5 --L t1 --M t2"), 0);
  EXPECT_EQ(run("--budget 10 image --field 5 --L t1 --M t2"), 3);
  EXPECT_EQ(run("image --field 6 --L t1 --M t2"), 2);
  EXPECT_EQ(run("no-such-command"), 2);
  EXPECT_EQ(run("analyze --case separated --field 5 --L t2 --M t1"), 2);
  EXPECT_EQ(run(out + " suite --check squares-coverage --fields 5"), 1);
  EXPECT_EQ(run(out + " suite --check squares-size --fields 2,5"), 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "suite.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "suite.timing.csv"));
  std::filesystem::remove_all(dir);
}

TEST(Cli, FlagsOverrideConfigFile) {
  const auto dir = std::filesystem::temp_directory_path() / "kakeya_cli_config";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "c.yaml").string();
  {
    std::ofstream f(path);
    f << "seed: 3\nthreads: 2\n";
  }
  const std::string cmd = std::string(KAKEYA_FORGE) + " --config " + path + " --seed 8 --dump-config";
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::string text;
  char buf[256];
  while (fgets(buf, sizeof buf, pipe)) text += buf;
  pclose(pipe);
  const ExperimentConfig c = parse_config(text);
  EXPECT_EQ(c.seed, 8u);
  EXPECT_EQ(c.threads, 2u);
  EXPECT_EQ(c.budget, ExperimentConfig{}.budget);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace kakeya

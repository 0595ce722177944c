#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qagent/csv.hpp"
#include "qagent/scenario.hpp"

using namespace qagent;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig small_config(const fs::path& dir) {
  ExperimentConfig cfg = default_config();
  cfg.run.iterations = 300;
  cfg.run.output_dir = dir;
  return cfg;
}

class ScenarioTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("qagent_scenario_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root_);
  }
  void TearDown() override { fs::remove_all(root_); }
  fs::path root_;
};

}  // namespace

TEST(Csv, FormatDouble) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_double(-1e-300), "-1e-300");
  for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300}) {
    EXPECT_EQ(std::strtod(format_double(x).c_str(), nullptr), x);
  }
}

TEST(Csv, Sha256KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Scenario, FileNames) {
  EXPECT_EQ(learning_file_name(DetectionModel::kQuantum, std::numeric_limits<double>::infinity()),
            "learning_quantum_muinf.csv");
  EXPECT_EQ(learning_file_name(DetectionModel::kClassical, 2.0), "learning_classical_mu2.csv");
  EXPECT_EQ(learning_file_name(DetectionModel::kClassical, 0.5), "learning_classical_mu0.5.csv");
}

TEST_F(ScenarioTest, WritesOneCsvPerPairAndManifest) {
  const auto out = run_scenario(small_config(root_));
  EXPECT_EQ(out.csv_files.size(), 6u);
  std::size_t entries = 0;
  for (const auto& e : fs::directory_iterator(root_)) {
    ++entries;
    EXPECT_NE(e.path().extension(), ".tmp");
  }
  EXPECT_EQ(entries, 7u);

  const auto manifest = nlohmann::json::parse(slurp(out.manifest));
  EXPECT_EQ(manifest["seed"], 42u);
  EXPECT_TRUE(manifest.contains("version"));
  EXPECT_TRUE(manifest.contains("wall_time_seconds"));
  EXPECT_EQ(parse_config(manifest["config"].get<std::string>()).run.iterations, 300u);
  ASSERT_EQ(manifest["files"].size(), 6u);
  for (const auto& f : manifest["files"]) {
    const std::string bytes = slurp(root_ / f["file"].get<std::string>());
    EXPECT_EQ(f["sha256"], sha256_hex(bytes));
    EXPECT_EQ(bytes.substr(0, bytes.find('\n')), kLearningHeader);
  }
}

TEST_F(ScenarioTest, ByteIdenticalAcrossRuns) {
  auto a = small_config(root_ / "a");
  auto b = small_config(root_ / "b");
  for (auto* cfg : {&a, &b}) {
    for (auto& agent : cfg->agents) agent.backend = GradientBackend::kEmpirical;
  }
  const auto ra = run_scenario(a);
  const auto rb = run_scenario(b);
  for (std::size_t i = 0; i < ra.csv_files.size(); ++i) {
    EXPECT_EQ(slurp(ra.csv_files[i]), slurp(rb.csv_files[i])) << ra.csv_files[i];
  }
  auto c = small_config(root_ / "c");
  c.run.seed = 43;
  for (auto& agent : c.agents) agent.backend = GradientBackend::kEmpirical;
  EXPECT_NE(slurp(run_scenario(c).csv_files[0]), slurp(ra.csv_files[0]));
}

TEST_F(ScenarioTest, QuantumReachesThresholdFirst) {
  auto cfg = small_config(root_);
  cfg.run.iterations = 2000;
  cfg.temperatures = {std::numeric_limits<double>::infinity()};
  const auto out = run_scenario(cfg);
  auto first_reach = [](const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      std::vector<std::string> cols;
      std::stringstream ss(line);
      std::string c;
      while (std::getline(ss, c, ',')) cols.push_back(c);
      if (std::stod(cols[5]) < 0.05) return std::stol(cols[0]);
    }
    return -1L;
  };
  const long q = first_reach(slurp(root_ / "learning_quantum_muinf.csv"));
  const long c = first_reach(slurp(root_ / "learning_classical_muinf.csv"));
  ASSERT_GE(q, 0);
  EXPECT_TRUE(c < 0 || q < c);
}

TEST_F(ScenarioTest, OracleReportContinuesPastFailures) {
  auto cfg = small_config(root_);
  cfg.oracle.kappas = {1e2, 1e3};
  cfg.oracle.cavity_kappas = {1e2};
  cfg.oracle.n_max = 1;  // too small: the cavity cases must fail, not abort the sweep
  const auto report = run_oracle_validation(cfg);
  bool cavity_error = false;
  std::size_t quantum_passed = 0;
  for (const auto& c : report.cases) {
    if (c.oracle == "cavity_me" && !c.error.empty()) cavity_error = true;
    if (c.oracle == "fock_hierarchy" && c.passed) ++quantum_passed;
  }
  EXPECT_TRUE(cavity_error);
  EXPECT_EQ(quantum_passed, 6u);
  EXPECT_FALSE(report.all_passed());
  const auto path = write_oracle_report(report, root_);
  const std::string text = slurp(path);
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "name,oracle,reference,kappa,oracle_value,reference_value,deviation,tolerance,passed,error");
}

TEST(Scenario, StrictlyDecreasing) {
  EXPECT_TRUE(strictly_decreasing({3, 2, 1}, 0.0));
  EXPECT_FALSE(strictly_decreasing({3, 3, 1}, 0.0));
  EXPECT_FALSE(strictly_decreasing({3, 2.5, 2}, 0.6));
  EXPECT_TRUE(strictly_decreasing({}, 0.0));
}

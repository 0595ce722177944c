#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "qagent/config.hpp"
#include "qagent/errors.hpp"

using namespace qagent;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text, "test.cfg");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Config, MinimalFileGetsDefaults) {
  const auto cfg = parse_config("[world]\ngamma_t = 1.5\n");
  const auto def = default_config();
  EXPECT_EQ(cfg.world.f_true.gamma, 1.5);
  EXPECT_EQ(cfg.world.f_true.delta, def.world.f_true.delta);
  ASSERT_EQ(cfg.agents.size(), 2u);
  EXPECT_EQ(cfg.agents[0].kind, DetectionModel::kQuantum);
  EXPECT_EQ(cfg.agents[1].kind, DetectionModel::kClassical);
  EXPECT_EQ(cfg.agents[0].learning_rate, def.agents[0].learning_rate);
  EXPECT_EQ(cfg.agents[0].shots, 1000u);
  EXPECT_EQ(cfg.run.seed, 42u);
  EXPECT_EQ(cfg.run.iterations, 1000u);
  ASSERT_EQ(cfg.temperatures.size(), 3u);
  EXPECT_TRUE(std::isinf(cfg.temperatures[0]));
  EXPECT_EQ(cfg.world.detector.chi, 1.0);
}

TEST(Config, InvalidValueNamesTheKey) {
  const std::string e = error_of("[world]\ngamma_t = -1\n");
  EXPECT_NE(e.find("world.gamma_t"), std::string::npos) << e;
}

TEST(Config, UnknownKeyIsRejected) {
  const std::string e = error_of("[agent]\nmomentum = 0.9\n");
  EXPECT_NE(e.find("agent.momentum"), std::string::npos) << e;
  EXPECT_NE(error_of("[optimizer]\nlr = 1\n").find("optimizer"), std::string::npos);
}

TEST(Config, SyntaxErrorsCarryLineAndColumn) {
  EXPECT_NE(error_of("[world]\n  gamma_t 1\n").find("test.cfg:2:3"), std::string::npos);
  EXPECT_NE(error_of("gamma_t = 1\n").find("test.cfg:1:1"), std::string::npos);
  EXPECT_NE(error_of("[world\n").find("test.cfg:1:1"), std::string::npos);
  EXPECT_NE(error_of("[world]\ngamma_t = 1x\n").find("test.cfg:2:11"), std::string::npos);
  EXPECT_NE(error_of("[world]\ngamma_t = 1\ngamma_t = 2\n").find("duplicate"), std::string::npos);
  EXPECT_NE(error_of("[run]\nseed = -3\n").find("run.seed"), std::string::npos);
}

TEST(Config, FullFileAndComments) {
  const auto cfg = parse_config(R"(# experiment
[world]
gamma_t = 0.8   ; trailing comment
delta_t = -1.5
chi = 0.5
[agent]
kinds = classical
gamma0 = 2
delta0 = 3
learning_rate = 0.02
shots = 500
backend = empirical
update = printed
[run]
iterations = 12
seed = 18446744073709551615
output_dir = results/a
temperatures = inf, 3
[oracle]
kappas = 100, 1000
n_max = 7
)");
  ASSERT_EQ(cfg.agents.size(), 1u);
  EXPECT_EQ(cfg.agents[0].kind, DetectionModel::kClassical);
  EXPECT_EQ(cfg.agents[0].backend, GradientBackend::kEmpirical);
  EXPECT_TRUE(cfg.agents[0].ascend);
  EXPECT_EQ(cfg.agents[0].max_iterations, 12u);
  EXPECT_EQ(cfg.run.seed, 18446744073709551615ull);
  EXPECT_EQ(cfg.run.output_dir, "results/a");
  EXPECT_EQ(cfg.temperatures[1], 3.0);
  EXPECT_EQ(cfg.oracle.kappas.size(), 2u);
  EXPECT_EQ(cfg.oracle.n_max, 7);
  EXPECT_EQ(cfg.world.detector.chi, 0.5);
}

TEST(Config, TextRoundTrip) {
  auto cfg = canned_config("fig4");
  cfg.agents[0].seconds_per_shot = 1e-6;
  cfg.agents[1].seconds_per_shot = 1e-6;
  const auto back = parse_config(to_text(cfg));
  EXPECT_EQ(to_text(back), to_text(cfg));
  EXPECT_EQ(back.run.iterations, cfg.run.iterations);
}

TEST(Config, CrossFieldValidation) {
  EXPECT_NE(error_of("[world]\ngamma_t = 9\n").find("world.gamma_t"), std::string::npos);
  EXPECT_NE(error_of("[run]\ntemperatures = 0\n").find("run.temperatures"), std::string::npos);
  EXPECT_NE(error_of("[oracle]\nchi = 2\n").find("oracle.chi"), std::string::npos);
  EXPECT_NE(error_of("[agent]\nbackend = adam\n").find("agent.backend"), std::string::npos);
}

TEST(Config, CannedAndFiles) {
  EXPECT_EQ(canned_config("fig2").run.output_dir, "fig2");
  EXPECT_THROW(canned_config("fig3"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/qagent.cfg"), ConfigError);
  const auto path = std::filesystem::temp_directory_path() / "qagent_test_config.cfg";
  std::ofstream(path) << "[run]\nseed = 7\n";
  EXPECT_EQ(load_config(path).run.seed, 7u);
  std::filesystem::remove(path);
}

TEST(Config, ShippedConfigsParse) {
  for (const char* name : {"fig2.cfg", "fig4.cfg"}) {
    const auto cfg = load_config(std::filesystem::path(QAGENT_SOURCE_DIR) / "configs" / name);
    EXPECT_EQ(to_text(cfg), to_text(canned_config(std::string(name).substr(0, 4))));
  }
}

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qagent/learner.hpp"

namespace qagent {

struct RunSettings {
  std::size_t iterations = 1000;
  std::uint64_t seed = 42;
  std::filesystem::path output_dir = "out";
};

struct OracleSettings {
  std::vector<double> kappas{1e2, 1e3, 1e4};
  /// Classical (cavity) sweep; kept shorter because the step scales as 1/kappa.
  std::vector<double> cavity_kappas{1e2, 1e3};
  double chi = 0.01;
  int n_max = 6;
  double t_max = 40.0;
  std::size_t steps = 4000;
};

/// One world, several agent kinds sharing the remaining agent settings, and a
/// temperature list. Each (kind, mu) pair is one learning run.
struct ExperimentConfig {
  WorldConfig world;
  std::vector<AgentConfig> agents;
  std::vector<double> temperatures;
  RunSettings run;
  OracleSettings oracle;

  void validate() const;
};

/// Defaults for the learning experiment: both agents, mu in {inf, 2, 1}.
ExperimentConfig default_config();

/// Parse sectioned `key = value` text (see configs/README.md for the grammar).
/// Throws ConfigError with "line:col" on syntax errors and names the offending
/// `section.key` on unknown keys or invalid values.
ExperimentConfig parse_config(const std::string& text, const std::string& origin = "<string>");
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(to_text(c)) reproduces c.
std::string to_text(const ExperimentConfig& cfg);

/// Canned configurations behind `reproduce fig2|fig4`.
ExperimentConfig canned_config(const std::string& name);

}  // namespace qagent

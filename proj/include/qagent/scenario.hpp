#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qagent/config.hpp"

namespace qagent {

struct ScenarioOutput {
  std::vector<std::filesystem::path> csv_files;
  std::filesystem::path manifest;
};

/// `learning_<kind>_mu<tag>.csv`, e.g. learning_quantum_muinf.csv, learning_classical_mu2.csv.
std::string learning_file_name(DetectionModel kind, double mu);

/// Runs every (agent, temperature) pair concurrently and writes one CSV per pair
/// plus manifest.json. CSV bytes depend only on (config, seed).
ScenarioOutput run_scenario(const ExperimentConfig& cfg);

struct OracleCase {
  std::string name;
  std::string oracle;     // "fock_hierarchy" | "cavity_me"
  std::string reference;  // what the oracle is compared against
  double kappa = 0.0;
  double oracle_value = 0.0;
  double reference_value = 0.0;
  double deviation = 0.0;  // relative for closed forms, absolute otherwise
  double tolerance = 0.0;
  bool passed = false;
  std::string error;  // non-empty if the integration failed
};

struct OracleReport {
  std::vector<OracleCase> cases;
  bool kappa_sweep_decreasing_quantum = false;
  bool kappa_sweep_decreasing_classical = false;

  bool all_passed() const;
};

/// Oracles against quadrature and closed forms over the configured kappa sweeps.
/// Integration failures are recorded per case; the sweep continues.
OracleReport run_oracle_validation(const ExperimentConfig& cfg);

/// oracle_report.csv in the output directory.
std::filesystem::path write_oracle_report(const OracleReport& report,
                                          const std::filesystem::path& dir);

/// Strict decrease by more than `noise` at every step.
bool strictly_decreasing(const std::vector<double>& v, double noise);

}  // namespace qagent

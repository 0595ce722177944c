// qagent: command-line front end for the learning-detector simulator.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include "qagent/config.hpp"
#include "qagent/csv.hpp"
#include "qagent/detector.hpp"
#include "qagent/errors.hpp"
#include "qagent/modes.hpp"
#include "qagent/scenario.hpp"
#include "qagent/thermo.hpp"

namespace {

using namespace qagent;
using ojson = nlohmann::ordered_json;

enum class Format { kCsv, kJson };

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::string format = "csv";

  Format fmt() const { return format == "json" ? Format::kJson : Format::kCsv; }
};

// Emits one flat record in the selected format.
// JSON has no infinity, so non-finite values go out as their CSV spelling.
void emit(Format f, const std::vector<std::pair<std::string, double>>& row) {
  if (f == Format::kJson) {
    ojson j;
    for (const auto& [k, v] : row) {
      if (std::isfinite(v)) {
        j[k] = v;
      } else {
        j[k] = format_double(v);
      }
    }
    std::cout << j.dump() << "\n";
    return;
  }
  for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << row[i].first;
  std::cout << "\n";
  for (std::size_t i = 0; i < row.size(); ++i) {
    std::cout << (i ? "," : "") << format_double(row[i].second);
  }
  std::cout << "\n";
}

ExperimentConfig resolve(const Globals& g, ExperimentConfig cfg) {
  if (g.seed) cfg.run.seed = *g.seed;
  if (g.out) cfg.run.output_dir = *g.out;
  cfg.validate();
  return cfg;
}

ExperimentConfig base_config(const Globals& g) {
  return g.config.empty() ? default_config() : load_config(g.config);
}

void report_outputs(Format f, const ScenarioOutput& out) {
  if (f == Format::kJson) {
    ojson j;
    j["manifest"] = out.manifest.string();
    j["csv"] = ojson::array();
    for (const auto& p : out.csv_files) j["csv"].push_back(p.string());
    std::cout << j.dump() << "\n";
    return;
  }
  for (const auto& p : out.csv_files) std::cout << p.string() << "\n";
  std::cout << out.manifest.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate a learning single-photon detector agent"};
  app.set_version_flag("--version", QAGENT_VERSION_STRING);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config, "Experiment config file")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Master RNG seed (u64)");
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--format", g.format, "Stdout format")
      ->check(CLI::IsMember({"csv", "json"}));

  // overlap
  auto* overlap = app.add_subcommand("overlap", "Overlap of the control mode with the true mode");
  ModeParams ctrl{1.0, 0.0};
  std::optional<double> gamma_t;
  std::optional<double> delta_t;
  std::size_t quad_steps = 0;
  overlap->add_option("--gamma", ctrl.gamma, "Control linewidth")->required();
  overlap->add_option("--delta", ctrl.delta, "Control detuning")->required();
  overlap->add_option("--gamma-t", gamma_t, "True linewidth (default: config world)");
  overlap->add_option("--delta-t", delta_t, "True detuning (default: config world)");
  overlap->add_option("--quadrature", quad_steps, "Also integrate numerically with N steps");

  // detect
  auto* detect = app.add_subcommand("detect", "Ground-state probability after detection");
  double gamma_ov = 1.0;
  double mu = std::numeric_limits<double>::infinity();
  double chi = 1.0;
  detect->add_option("--overlap", gamma_ov, "Mode overlap in [0, 1]")->required();
  detect->add_option("--mu", mu, "Inverse detector temperature (inf allowed)");
  detect->add_option("--chi", chi, "Absorption efficiency")->capture_default_str();

  // thermo
  auto* thermo = app.add_subcommand("thermo", "Work and free energy of one detection");
  std::string model = "quantum";
  std::uint64_t trials = 0;
  thermo->add_option("--overlap", gamma_ov, "Mode overlap in [0, 1]")->required();
  thermo->add_option("--mu", mu, "Inverse detector temperature (inf allowed)");
  thermo->add_option("--chi", chi, "Absorption efficiency")->capture_default_str();
  thermo->add_option("--model", model, "quantum|classical")
      ->check(CLI::IsMember({"quantum", "classical"}));
  thermo->add_option("--jarzynski-trials", trials, "Also estimate dF by Monte Carlo");

  auto* learn = app.add_subcommand("learn", "Run the learning experiment from --config");
  auto* oracle = app.add_subcommand("oracle", "Validate closed forms against master equations");

  auto* reproduce = app.add_subcommand("reproduce", "Run a canned figure configuration");
  std::string figure;
  reproduce->add_option("figure", figure, "fig2|fig4")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig4"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  const Format fmt = g.fmt();
  try {
    if (*overlap) {
      ModeParams truth = base_config(g).world.f_true;
      if (gamma_t) truth.gamma = *gamma_t;
      if (delta_t) truth.delta = *delta_t;
      ctrl.validate();
      truth.validate();
      std::vector<std::pair<std::string, double>> row{
          {"gamma", ctrl.gamma},
          {"delta", ctrl.delta},
          {"gamma_t", truth.gamma},
          {"delta_t", truth.delta},
          {"overlap", overlap_exponential_closed_form(ctrl, truth).value}};
      if (quad_steps > 0) {
        const double t_max = 40.0 * std::max(1.0 / ctrl.gamma, 1.0 / truth.gamma);
        row.emplace_back("overlap_quadrature",
                         overlap_quadrature(make_exponential_mode(ctrl),
                                            make_exponential_mode(truth), t_max, quad_steps)
                             .value);
      }
      emit(fmt, row);
    } else if (*detect || *thermo) {
      DetectorParams det;
      det.chi = chi;
      det.bath = BathParams(mu);
      det.validate();
      const Overlap ov = Overlap::checked(gamma_ov);
      if (*detect) {
        emit(fmt, {{"overlap", ov.value},
                   {"mu", mu},
                   {"pg_quantum", pg_quantum(ov, det)},
                   {"pg_classical", pg_classical(ov, det)}});
      } else {
        const double p_abs = absorption_probability(parse_detection_model(model), ov, det);
        const ScaledThermo s = summarize_scaled(p_abs, det.bath);
        std::vector<std::pair<std::string, double>> row{
            {"p_abs", p_abs},
            {"w_avg_scaled", s.w_avg},
            {"df_scaled", s.df},
            {"q_scaled", s.q}};
        if (trials > 0) {
          const std::uint64_t seed = g.seed.value_or(42);
          const JarzynskiEstimate est = jarzynski_monte_carlo(
              p_abs, mu, trials, CounterStream(RngStreamKey{seed, StreamContext::kJarzynski, 0, 0}));
          row.emplace_back("df_closed_form", free_energy_change(p_abs, mu));
          row.emplace_back("df_monte_carlo", est.estimate);
          row.emplace_back("df_std_error", est.std_error);
        }
        emit(fmt, row);
      }
    } else if (*learn) {
      report_outputs(fmt, run_scenario(resolve(g, base_config(g))));
    } else if (*oracle) {
      const ExperimentConfig cfg = resolve(g, base_config(g));
      const OracleReport report = run_oracle_validation(cfg);
      const auto path = write_oracle_report(report, cfg.run.output_dir);
      for (const auto& c : report.cases) {
        std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << " [" << c.oracle << " vs "
                  << c.reference << ", kappa=" << format_double(c.kappa)
                  << "] deviation=" << format_double(c.deviation)
                  << " tol=" << format_double(c.tolerance)
                  << (c.error.empty() ? "" : " error: " + c.error) << "\n";
      }
      std::cerr << (report.kappa_sweep_decreasing_quantum ? "PASS" : "FAIL")
                << " quantum deviation strictly decreasing over kappa\n";
      std::cerr << (report.kappa_sweep_decreasing_classical ? "yes " : "no  ")
                << " classical deviation strictly decreasing over kappa (informational)\n";
      std::cout << path.string() << "\n";
      return report.all_passed() ? 0 : 2;
    } else if (*reproduce) {
      report_outputs(fmt, run_scenario(resolve(g, canned_config(figure))));
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

#include "qagent/thermo.hpp"

#include <cmath>
#include <string>

#include "qagent/errors.hpp"
#include "qagent/kernels.hpp"

namespace qagent {

namespace {

void check_probability(double p, const char* who) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError(std::string(who) + ": p_abs must lie in [0, 1], got " + std::to_string(p));
  }
}

void check_finite_mu(double mu, const char* who) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw DomainError(std::string(who) + ": mu must be finite and > 0 (use summarize_scaled at T=0)");
  }
}

}  // namespace

double absorption_probability(DetectionModel model, Overlap gamma, const DetectorParams& det) {
  det.validate();
  const double x = det.chi * Overlap::checked(gamma.value).value;
  const double shape = model == DetectionModel::kQuantum ? x : x * std::exp(-x);
  return shape * det.bath.polarization();
}

double average_work(double p_abs, double mu) {
  check_probability(p_abs, "average_work");
  check_finite_mu(mu, "average_work");
  return mu * p_abs;
}

double free_energy_change(double p_abs, double mu) {
  check_probability(p_abs, "free_energy_change");
  check_finite_mu(mu, "free_energy_change");
  // <e^-w> = 1 - p (1 - e^-mu)
  return -std::log1p(-p_abs * -std::expm1(-mu));
}

double dissipated_heat(double w_avg, double df) { return w_avg - df; }

ThermoSummary summarize(double p_abs, double mu) {
  ThermoSummary s;
  s.p_abs = p_abs;
  s.w_avg = average_work(p_abs, mu);
  s.df = free_energy_change(p_abs, mu);
  s.q = dissipated_heat(s.w_avg, s.df);
  return s;
}

ScaledThermo summarize_scaled(double p_abs, const BathParams& bath) {
  check_probability(p_abs, "summarize_scaled");
  if (!(bath.mu() > 0.0)) throw DomainError("summarize_scaled: mu must be > 0");
  ScaledThermo s;
  s.w_avg = p_abs;
  if (bath.is_zero_temperature()) {
    // -ln(1 - p (1 - e^-mu)) / mu -> 0 for p < 1 and 1 for p = 1.
    s.df = p_abs == 1.0 ? 1.0 : 0.0;
  } else {
    s.df = free_energy_change(p_abs, bath.mu()) / bath.mu();
  }
  s.q = s.w_avg - s.df;
  return s;
}

JarzynskiEstimate jarzynski_monte_carlo(double p_abs, double mu, std::uint64_t trials,
                                        const CounterStream& stream) {
  check_probability(p_abs, "jarzynski_monte_carlo");
  check_finite_mu(mu, "jarzynski_monte_carlo");
  if (trials < 1000) throw DomainError("jarzynski_monte_carlo: trials must be >= 1000");

  const std::uint64_t absorbed = kernels::parallel::count_below(stream, trials, p_abs);
  const double n = static_cast<double>(trials);
  const double frac = static_cast<double>(absorbed) / n;
  const double boltz = std::exp(-mu);
  // e^-w is 1 (reflected) or e^-mu (absorbed).
  const double mean = 1.0 - frac * (1.0 - boltz);
  JarzynskiEstimate est;
  est.absorbed = absorbed;
  est.estimate = -std::log(mean);
  const double var = frac * (1.0 - frac) * (1.0 - boltz) * (1.0 - boltz);
  est.std_error = std::sqrt(var / n) / mean;
  return est;
}

}  // namespace qagent

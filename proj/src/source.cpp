#include "qagent/source.hpp"

#include <cmath>
#include <vector>

#include "qagent/errors.hpp"
#include "qagent/kernels.hpp"
#include "qagent/modes.hpp"

namespace qagent {

namespace {

void check_time_and_rate(double t, double kappa) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("source: t must be finite and >= 0");
  if (!(kappa > 0.0)) throw DomainError("source: kappa must be > 0");
}

// Trapezoid integral of I over [0, t].
double integrated_intensity(const ControlEnvelope& env, double t, std::size_t steps) {
  if (t == 0.0) return 0.0;
  if (steps < 1) throw DomainError("source: steps must be >= 1");
  const double h = t / static_cast<double>(steps);
  double sum = 0.5 * (env.intensity(0.0) + env.intensity(t));
  for (std::size_t k = 1; k < steps; ++k) sum += env.intensity(static_cast<double>(k) * h);
  return sum * h;
}

}  // namespace

ControlEnvelope::ControlEnvelope(std::function<cplx(double)> amplitude)
    : amplitude_(std::move(amplitude)) {}

ControlEnvelope ControlEnvelope::zero() {
  return ControlEnvelope([](double) { return cplx{0.0, 0.0}; });
}

ControlEnvelope ControlEnvelope::constant(cplx e0) {
  return ControlEnvelope([e0](double) { return e0; });
}

cplx ControlEnvelope::amplitude(double t) const {
  if (t < 0.0) return {0.0, 0.0};
  return amplitude_(t);
}

double ControlEnvelope::intensity(double t) const { return std::norm(amplitude(t)); }

double tau_source(const ControlEnvelope& envelope, const BathParams& bath, double kappa, double t,
                  std::size_t steps) {
  check_time_and_rate(t, kappa);
  const double area = integrated_intensity(envelope, t, steps);
  if (area == 0.0) return 0.0;
  return 4.0 * bath.thermal_factor() / kappa * area;
}

double ground_population_source(const ControlEnvelope& envelope, const BathParams& bath,
                                double kappa, double t, std::size_t steps) {
  const double tau = tau_source(envelope, bath, kappa, t, steps);
  return bath.floor_fraction() + std::exp(-tau) * bath.polarization();
}

double polarization(const ControlEnvelope& envelope, const BathParams& bath, double kappa,
                    double t, std::size_t steps) {
  return 1.0 - 2.0 * ground_population_source(envelope, bath, kappa, t, steps);
}

double output_flux(const ControlEnvelope& envelope, const BathParams& bath, double kappa, double t,
                   std::size_t steps) {
  const double intensity = envelope.intensity(t);
  const double sz = polarization(envelope, bath, kappa, t, steps);
  if (intensity == 0.0) return bath.nbar();
  return bath.nbar() + 4.0 * intensity / kappa * sz;
}

cplx mean_output_field(const ControlEnvelope& envelope,
                       const std::function<cplx(double)>& sigma_plus, double kappa, double t,
                       std::size_t steps) {
  check_time_and_rate(t, kappa);
  if (t == 0.0) return {0.0, 0.0};
  if (steps % 2 == 1) ++steps;
  const auto grid = uniform_grid(t, steps);
  std::vector<cplx> weight(grid.size());
  std::vector<cplx> drive(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    weight[k] = {std::exp(0.5 * kappa * (grid[k] - t)), 0.0};
    drive[k] = envelope.amplitude(grid[k]) * sigma_plus(grid[k]);
  }
  const cplx integral =
      kernels::parallel::simpson_inner(weight, drive, t / static_cast<double>(steps));
  return cplx{0.0, -std::sqrt(kappa)} * integral;
}

}  // namespace qagent

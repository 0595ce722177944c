#include "qagent/detector.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qagent/errors.hpp"
#include "qagent/kernels.hpp"

namespace qagent {

const char* to_string(DetectionModel m) {
  return m == DetectionModel::kQuantum ? "quantum" : "classical";
}

DetectionModel parse_detection_model(const std::string& s) {
  if (s == "quantum") return DetectionModel::kQuantum;
  if (s == "classical") return DetectionModel::kClassical;
  throw DomainError("unknown detection model '" + s + "' (expected quantum|classical)");
}

void DetectorParams::validate() const {
  if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("detector: eta must lie in (0, 1]");
  if (!(chi > 0.0 && chi <= 1.0)) throw DomainError("detector: chi must lie in (0, 1]");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("detector: kappa must be > 0");
}

double DetectorParams::control_amplitude() const { return std::sqrt(chi * kappa / (4.0 * eta)); }

double thermal_floor(const BathParams& bath) { return bath.floor_fraction(); }

double pg_quantum(Overlap gamma, const DetectorParams& det) {
  det.validate();
  const Overlap g = Overlap::checked(gamma.value);
  const double p = thermal_floor(det.bath) + det.chi * g.value * det.bath.polarization();
  if (p > 1.0 + 1e-12) throw DomainError("pg_quantum: probability exceeds 1 (invalid chi)");
  return std::min(p, 1.0);
}

double pg_classical(Overlap gamma, const DetectorParams& det) {
  det.validate();
  const Overlap g = Overlap::checked(gamma.value);
  const double x = det.chi * g.value;
  return thermal_floor(det.bath) + x * std::exp(-x) * det.bath.polarization();
}

double error_prob(DetectionModel model, Overlap gamma, const DetectorParams& det) {
  const double pg =
      model == DetectionModel::kQuantum ? pg_quantum(gamma, det) : pg_classical(gamma, det);
  return 1.0 - pg;
}

double pg_time_dependent_quadrature(const std::function<cplx(double)>& control,
                                    const TemporalMode& signal, const DetectorParams& det,
                                    double t, std::size_t steps) {
  det.validate();
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("pg_time_dependent_quadrature: t < 0");
  if (steps < 2) throw DomainError("pg_time_dependent_quadrature: steps must be >= 2");
  const double floor = thermal_floor(det.bath);
  const double pol = det.bath.polarization();
  if (t == 0.0 || pol == 0.0) return floor;
  if (steps % 2 == 1) ++steps;

  const auto grid = uniform_grid(t, steps);
  const double h = t / static_cast<double>(steps);
  std::vector<cplx> v(grid.size());
  std::vector<cplx> xi(grid.size());
  kernels::parallel::map(grid, v, [&control](double s) { return s < 0.0 ? cplx{} : control(s); });
  kernels::parallel::map(grid, xi, [&signal](double s) { return signal(s); });

  // Coherence decay exponent tau(t_k), cumulative trapezoid.
  const double rate = 2.0 * det.bath.thermal_factor() / det.kappa;
  std::vector<double> tau(grid.size(), 0.0);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    tau[k] = tau[k - 1] + 0.5 * h * rate * (std::norm(v[k]) + std::norm(v[k - 1]));
  }
  // int e^(tau_k - tau_N) V xi* = conj( int conj(e^(..) V) xi ) -> Simpson kernel form.
  std::vector<cplx> damped(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) damped[k] = std::exp(tau[k] - tau.back()) * v[k];
  const cplx inner = kernels::parallel::simpson_inner(damped, xi, h);
  const double p = floor + pol * 4.0 * det.eta / det.kappa * std::norm(inner);
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace qagent

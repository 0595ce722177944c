#pragma once

#include <complex>
#include <functional>

#include "qagent/bath.hpp"
#include "qagent/modes.hpp"

namespace qagent {

enum class DetectionModel { kQuantum, kClassical };

const char* to_string(DetectionModel m);
/// "quantum" / "classical"; throws DomainError otherwise.
DetectionModel parse_detection_model(const std::string& s);

/// Raman single-photon detector held in its population-inverted ready state.
/// chi is the dimensionless absorption efficiency (4 eta A^2 / kappa for a control
/// V = A v with unit-norm v) used by the large-kappa closed forms.
struct DetectorParams {
  double eta = 1.0;
  double kappa = 1000.0;
  double chi = 1.0;
  BathParams bath = BathParams::zero_temperature();

  void validate() const;
  /// Control amplitude A with 4 eta A^2 / kappa = chi.
  double control_amplitude() const;
};

/// Ground-state probability under vacuum input: n / (2n + 1) = 1 / (1 + e^mu).
double thermal_floor(const BathParams& bath);

double pg_quantum(Overlap gamma, const DetectorParams& det);
double pg_classical(Overlap gamma, const DetectorParams& det);
/// 1 - P_g for the given model.
double error_prob(DetectionModel model, Overlap gamma, const DetectorParams& det);

/// General (finite-kappa response) single-photon ground-state probability at time t:
///   P_g = (n + 4 eta / kappa |int_0^t e^(tau' - tau) V xi* dt'|^2) / (2n + 1),
///   tau(t) = 2 (2n + 1) / kappa int_0^t |V|^2.
/// V carries its physical amplitude. Simpson on `steps` uniform intervals.
double pg_time_dependent_quadrature(const std::function<cplx(double)>& control,
                                    const TemporalMode& signal, const DetectorParams& det,
                                    double t, std::size_t steps = 1 << 14);

}  // namespace qagent

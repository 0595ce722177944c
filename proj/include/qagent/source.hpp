#pragma once

#include <complex>
#include <functional>

#include "qagent/bath.hpp"

namespace qagent {

using cplx = std::complex<double>;

/// Classical control pulse E(t) driving the Raman source; zero for t < 0.
class ControlEnvelope {
 public:
  explicit ControlEnvelope(std::function<cplx(double)> amplitude);

  static ControlEnvelope zero();
  static ControlEnvelope constant(cplx e0);

  cplx amplitude(double t) const;
  /// I(t) = |E(t)|^2
  double intensity(double t) const;

 private:
  std::function<cplx(double)> amplitude_;
};

/// Quadrature resolution used by the source observables (cumulative trapezoid).
inline constexpr std::size_t kSourceSteps = 1 << 14;

/// tau(t) = 4 (2n + 1) / kappa * int_0^t I dt'. Throws DomainError for t < 0 or kappa <= 0.
double tau_source(const ControlEnvelope& envelope, const BathParams& bath, double kappa, double t,
                  std::size_t steps = kSourceSteps);

/// P_g(t) = 1/(1 + e^mu) + e^-tau tanh(mu/2); starts at 1/(1 + e^-mu).
double ground_population_source(const ControlEnvelope& envelope, const BathParams& bath,
                                double kappa, double t, std::size_t steps = kSourceSteps);

/// <sigma_z> = 1 - 2 P_g, tending to tanh(mu/2).
double polarization(const ControlEnvelope& envelope, const BathParams& bath, double kappa,
                    double t, std::size_t steps = kSourceSteps);

/// Mean output photon flux n + 4 I(t) / kappa * <sigma_z(t)>.
double output_flux(const ControlEnvelope& envelope, const BathParams& bath, double kappa, double t,
                   std::size_t steps = kSourceSteps);

/// <a_o(t)> = -i sqrt(kappa) int_0^t exp(kappa (t' - t)/2) E(t') <sigma_+(t')> dt' (Simpson).
cplx mean_output_field(const ControlEnvelope& envelope,
                       const std::function<cplx(double)>& sigma_plus, double kappa, double t,
                       std::size_t steps = kSourceSteps);

}  // namespace qagent

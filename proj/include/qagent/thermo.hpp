#pragma once

#include "qagent/detector.hpp"
#include "qagent/rng.hpp"

namespace qagent {

/// Work done on the detector by one trial, in units of kT: mu when the signal
/// photon is absorbed, 0 otherwise.
struct WorkSample {
  double w = 0.0;
};

/// Work/free-energy bookkeeping in units of kT.
struct ThermoSummary {
  double p_abs = 0.0;
  double w_avg = 0.0;
  double df = 0.0;
  double q = 0.0;
};

/// The same quantities divided by mu. At mu = inf these are the limits
/// (p_abs, [p_abs == 1], p_abs - [p_abs == 1]).
struct ScaledThermo {
  double w_avg = 0.0;
  double df = 0.0;
  double q = 0.0;
};

/// Signal-attributable absorption probability (thermal floor excluded).
double absorption_probability(DetectionModel model, Overlap gamma, const DetectorParams& det);

double average_work(double p_abs, double mu);
/// -ln(1 - p_abs (1 - e^-mu)): Jarzynski free energy of the two-outcome work distribution.
double free_energy_change(double p_abs, double mu);
double dissipated_heat(double w_avg, double df);

/// Finite mu > 0 only.
ThermoSummary summarize(double p_abs, double mu);
/// Any mu > 0 including infinity.
ScaledThermo summarize_scaled(double p_abs, const BathParams& bath);

struct JarzynskiEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t absorbed = 0;
};

/// -ln <e^-w> over `trials` sampled work values, with a delta-method standard error.
JarzynskiEstimate jarzynski_monte_carlo(double p_abs, double mu, std::uint64_t trials,
                                        const CounterStream& stream);

}  // namespace qagent

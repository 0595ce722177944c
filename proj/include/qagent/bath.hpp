#pragma once

#include <limits>

namespace qagent {

/// Thermal state of a two-level Raman element, parameterized by the Boltzmann
/// factor mu = hbar*omega / kT. Zero temperature is mu = +infinity and every
/// derived quantity is exact there.
class BathParams {
 public:
  explicit BathParams(double mu);

  static BathParams zero_temperature() {
    return BathParams(std::numeric_limits<double>::infinity());
  }

  double mu() const { return mu_; }
  bool is_zero_temperature() const;

  /// 1 / (e^mu - 1); 0 at mu = inf, +inf at mu = 0.
  double nbar() const;
  /// n / (2n + 1) = 1 / (1 + e^mu).
  double floor_fraction() const;
  /// 1 / (2n + 1) = tanh(mu / 2).
  double polarization() const;
  /// 2n + 1 = coth(mu / 2); +inf at mu = 0.
  double thermal_factor() const;

 private:
  double mu_;
};

}  // namespace qagent

#include "qagent/bath.hpp"

#include <cmath>
#include <string>

#include "qagent/errors.hpp"

namespace qagent {

BathParams::BathParams(double mu) : mu_(mu) {
  if (std::isnan(mu) || mu < 0.0) {
    throw DomainError("bath: mu must be >= 0 (inf for zero temperature), got " +
                      std::to_string(mu));
  }
}

bool BathParams::is_zero_temperature() const { return std::isinf(mu_); }

double BathParams::nbar() const {
  if (is_zero_temperature()) return 0.0;
  if (mu_ == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / std::expm1(mu_);
}

double BathParams::floor_fraction() const {
  if (is_zero_temperature()) return 0.0;
  return 1.0 / (1.0 + std::exp(mu_));
}

double BathParams::polarization() const {
  if (is_zero_temperature()) return 1.0;
  return std::tanh(0.5 * mu_);
}

double BathParams::thermal_factor() const {
  if (is_zero_temperature()) return 1.0;
  if (mu_ == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / std::tanh(0.5 * mu_);
}

}  // namespace qagent

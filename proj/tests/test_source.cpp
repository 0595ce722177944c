#include <gtest/gtest.h>

#include <cmath>

#include "qagent/errors.hpp"
#include "qagent/source.hpp"

using namespace qagent;

namespace {
const BathParams kCold = BathParams::zero_temperature();
}

TEST(Bath, DerivedQuantities) {
  const BathParams b(2.0);
  EXPECT_NEAR(b.nbar(), 1.0 / (std::exp(2.0) - 1.0), 1e-15);
  EXPECT_NEAR(b.floor_fraction(), b.nbar() / (2 * b.nbar() + 1), 1e-15);
  EXPECT_NEAR(b.floor_fraction(), 0.119203, 1e-6);
  EXPECT_NEAR(b.polarization(), std::tanh(1.0), 1e-15);
  EXPECT_NEAR(b.thermal_factor(), 2 * b.nbar() + 1, 1e-14);
  EXPECT_EQ(kCold.nbar(), 0.0);
  EXPECT_EQ(kCold.floor_fraction(), 0.0);
  EXPECT_EQ(kCold.polarization(), 1.0);
  EXPECT_EQ(kCold.thermal_factor(), 1.0);
  EXPECT_NEAR(BathParams(1e-9).floor_fraction(), 0.5, 1e-9);
  EXPECT_THROW(BathParams(-1.0), DomainError);
  EXPECT_THROW(BathParams(NAN), DomainError);
}

TEST(Source, EnvelopeIntensity) {
  const ControlEnvelope e([](double t) { return std::polar(2.0, t); });
  EXPECT_DOUBLE_EQ(e.intensity(0.3), 4.0);
  EXPECT_EQ(e.amplitude(-1.0), cplx(0.0, 0.0));
  EXPECT_EQ(e.intensity(-1.0), 0.0);
}

TEST(Source, TauValues) {
  const double kappa = 100.0;
  EXPECT_EQ(tau_source(ControlEnvelope::zero(), kCold, kappa, 5.0), 0.0);
  const auto constant = ControlEnvelope::constant(std::sqrt(kappa / 4.0));
  EXPECT_NEAR(tau_source(constant, kCold, kappa, 1.0), 1.0, 1e-12);
  // Unit-norm mode intensity: the integral of I over all time is 1 (trapezoid error ~3e-9).
  const ControlEnvelope mode([](double t) { return std::exp(-t / 2.0); });
  EXPECT_NEAR(tau_source(mode, kCold, kappa, 60.0, 1 << 16), 4.0 / kappa, 1e-8);
  EXPECT_THROW(tau_source(constant, kCold, kappa, -1.0), DomainError);
  EXPECT_THROW(tau_source(constant, kCold, 0.0, 1.0), DomainError);
}

TEST(Source, TauIsNondecreasing) {
  const ControlEnvelope e([](double t) { return std::sin(3 * t) * std::exp(-0.1 * t); });
  double last = 0.0;
  for (double t = 0.0; t <= 10.0; t += 0.25) {
    const double tau = tau_source(e, BathParams(1.0), 10.0, t);
    EXPECT_GE(tau, last);
    last = tau;
  }
}

TEST(Source, GroundPopulationValues) {
  const double kappa = 10.0;
  const auto e = ControlEnvelope::constant(std::sqrt(kappa / 4.0));
  EXPECT_NEAR(ground_population_source(e, BathParams(2.0), kappa, 0.0), 0.880797, 1e-6);
  EXPECT_NEAR(ground_population_source(e, kCold, kappa, 60.0), 0.0, 1e-15);
  EXPECT_NEAR(ground_population_source(e, BathParams(std::log(2.0)), kappa, 60.0), 1.0 / 3.0, 1e-12);
}

TEST(Source, PolarizationValues) {
  const double kappa = 10.0;
  const auto e = ControlEnvelope::constant(std::sqrt(kappa / 4.0));
  EXPECT_NEAR(polarization(e, kCold, kappa, 50.0), 1.0, 1e-15);
  EXPECT_NEAR(polarization(e, BathParams(2.0), kappa, 50.0), 0.761594, 1e-6);
  EXPECT_NEAR(polarization(e, BathParams(2.0), kappa, 0.0), -0.761594, 1e-6);
  // Long-time polarization once tau >= 40.
  for (double mu : {0.5, 1.0, 2.0, 5.0}) {
    const BathParams b(mu);
    EXPECT_NEAR(polarization(e, b, kappa, 40.0), std::tanh(mu / 2), 1e-10);
  }
}

TEST(Source, OutputFlux) {
  const double kappa = 10.0;
  const BathParams warm(2.0);
  EXPECT_EQ(output_flux(ControlEnvelope::zero(), warm, kappa, 3.0), warm.nbar());
  const auto e = ControlEnvelope::constant(std::sqrt(kappa / 4.0));
  EXPECT_NEAR(output_flux(e, kCold, kappa, 50.0), 1.0, 1e-12);
  EXPECT_NEAR(output_flux(e, warm, kappa, 50.0), 0.918112, 1e-6);
}

TEST(Source, GroundPopulationSolvesRateEquation) {
  // dP/dt = -(4 I / kappa)(2n + 1) P + 4 I n / kappa, checked at n = 1.
  const BathParams b(std::log(2.0));
  ASSERT_NEAR(b.nbar(), 1.0, 1e-12);
  const double kappa = 8.0;
  const ControlEnvelope e([](double t) { return 1.5 * std::exp(-0.3 * t) * std::polar(1.0, t); });
  const std::size_t steps = 1 << 16;
  const double h = 1e-5;  // central-difference truncation ~1e-10
  for (double t : {0.2, 1.0, 2.5, 6.0}) {
    const double dp = (ground_population_source(e, b, kappa, t + h, steps) -
                       ground_population_source(e, b, kappa, t - h, steps)) / (2 * h);
    const double p = ground_population_source(e, b, kappa, t, steps);
    const double i = e.intensity(t);
    const double rhs = -(4 * i / kappa) * (2 * b.nbar() + 1) * p + 4 * i * b.nbar() / kappa;
    EXPECT_NEAR(dp, rhs, 1e-8) << "t=" << t;
  }
}

TEST(Source, GroundPopulationMonotoneAndBounded) {
  const ControlEnvelope e([](double t) { return 2.0 * std::cos(t); });
  for (double mu : {0.3, 1.0, 2.0, std::numeric_limits<double>::infinity()}) {
    const BathParams b(mu);
    double last = 1.0;
    for (double t = 0.0; t <= 8.0; t += 0.5) {
      const double p = ground_population_source(e, b, 5.0, t);
      EXPECT_GE(p, 0.0);
      EXPECT_LE(p, 1.0);
      EXPECT_LE(p, last + 1e-15);
      last = p;
    }
  }
}

TEST(Source, MeanOutputField) {
  const double kappa = 20.0;
  const auto zero_sp = [](double) { return cplx{0.0, 0.0}; };
  const auto e = ControlEnvelope::constant({1.3, -0.4});
  EXPECT_EQ(mean_output_field(e, zero_sp, kappa, 2.0), cplx(0.0, 0.0));
  const cplx s0{0.2, 0.1};
  const auto const_sp = [s0](double) { return s0; };
  EXPECT_EQ(mean_output_field(ControlEnvelope::zero(), const_sp, kappa, 2.0), cplx(0.0, 0.0));
  for (double t : {0.05, 0.5, 2.0}) {
    const cplx expected = cplx{0.0, -std::sqrt(kappa)} * cplx{1.3, -0.4} * s0 * (2.0 / kappa) *
                          (1.0 - std::exp(-kappa * t / 2));
    EXPECT_NEAR(std::abs(mean_output_field(e, const_sp, kappa, t) - expected), 0.0, 1e-12);
  }
}

#include <gtest/gtest.h>

#include <cmath>

#include "qagent/errors.hpp"
#include "qagent/thermo.hpp"

using namespace qagent;

namespace {
const double kInf = std::numeric_limits<double>::infinity();

DetectorParams ideal(double mu) {
  DetectorParams d;
  d.bath = BathParams(mu);
  return d;
}
}  // namespace

TEST(Thermo, AbsorptionProbability) {
  EXPECT_EQ(absorption_probability(DetectionModel::kQuantum, Overlap{0.0}, ideal(kInf)), 0.0);
  EXPECT_EQ(absorption_probability(DetectionModel::kQuantum, Overlap{1.0}, ideal(kInf)), 1.0);
  EXPECT_NEAR(absorption_probability(DetectionModel::kClassical, Overlap{1.0}, ideal(kInf)),
              0.367879, 1e-6);
}

TEST(Thermo, WorkFreeEnergyHeat) {
  EXPECT_EQ(average_work(0.0, 2.0), 0.0);
  EXPECT_EQ(average_work(1.0, 2.0), 2.0);
  EXPECT_EQ(average_work(0.5, 2.0), 1.0);
  EXPECT_EQ(free_energy_change(0.0, 2.0), 0.0);
  EXPECT_NEAR(free_energy_change(1.0, 2.0), 2.0, 1e-14);
  EXPECT_NEAR(free_energy_change(0.5, 2.0), 0.5662, 1e-4);
  EXPECT_NEAR(free_energy_change(0.5, 2.0), -std::log(1 - 0.5 * (1 - std::exp(-2.0))), 1e-15);
  const auto s = summarize(0.5, 2.0);
  EXPECT_NEAR(s.q, 0.4338, 1e-4);
  EXPECT_NEAR(summarize(0.0, 2.0).q, 0.0, 1e-15);
  EXPECT_NEAR(summarize(1.0, 2.0).q, 0.0, 1e-14);
  EXPECT_THROW(average_work(1.2, 2.0), DomainError);
  EXPECT_THROW(free_energy_change(0.5, kInf), DomainError);
}

TEST(Thermo, HeatNonnegativeAndPeakedInside) {
  for (double mu : {0.5, 1.0, 2.0, 5.0}) {
    std::vector<double> q;
    for (int k = 0; k <= 200; ++k) {
      const auto s = summarize(k / 200.0, mu);
      EXPECT_GE(s.q, -1e-14);
      EXPECT_LE(s.df, s.w_avg + 1e-14);
      q.push_back(s.q);
    }
    const auto peak = std::max_element(q.begin(), q.end()) - q.begin();
    EXPECT_GT(peak, 0);
    EXPECT_LT(peak, 200);
    for (std::size_t k = 1; k + 1 < q.size(); ++k) EXPECT_LE(q[k - 1] + q[k + 1], 2 * q[k] + 1e-12);
  }
}

TEST(Thermo, ScaledSummary) {
  const auto s = summarize_scaled(0.5, BathParams(2.0));
  EXPECT_NEAR(s.w_avg, 0.5, 1e-15);
  EXPECT_NEAR(s.df, free_energy_change(0.5, 2.0) / 2.0, 1e-15);
  EXPECT_NEAR(s.q, s.w_avg - s.df, 1e-15);
  const auto z = summarize_scaled(0.7, BathParams::zero_temperature());
  EXPECT_EQ(z.w_avg, 0.7);
  EXPECT_EQ(z.df, 0.0);
  const auto one = summarize_scaled(1.0, BathParams::zero_temperature());
  EXPECT_EQ(one.df, 1.0);
  EXPECT_EQ(one.q, 0.0);
  // Large finite mu approaches the zero-temperature limit.
  EXPECT_NEAR(summarize_scaled(0.7, BathParams(1e4)).df, 0.0, 1e-3);
}

TEST(Thermo, ScaledWorkOrderedByTemperature) {
  for (int k = 1; k <= 20; ++k) {
    const Overlap g{k / 20.0};
    auto w = [&](double mu) {
      return summarize_scaled(absorption_probability(DetectionModel::kQuantum, g, ideal(mu)),
                              BathParams(mu)).w_avg;
    };
    EXPECT_LT(w(1.0), w(2.0));
    EXPECT_LT(w(2.0), w(kInf));
  }
}

TEST(Jarzynski, DegenerateDistributions) {
  const CounterStream s(RngStreamKey{0, StreamContext::kJarzynski, 0, 0});
  const auto zero = jarzynski_monte_carlo(0.0, 2.0, 1000, s);
  EXPECT_EQ(zero.estimate, 0.0);
  const auto one = jarzynski_monte_carlo(1.0, 2.0, 1000, s);
  EXPECT_EQ(one.estimate, 2.0);
  EXPECT_EQ(one.std_error, 0.0);
  EXPECT_THROW(jarzynski_monte_carlo(0.5, 2.0, 999, s), DomainError);
}

TEST(Jarzynski, AgreesWithClosedForm) {
  const double exact = free_energy_change(0.5, 2.0);
  int within = 0;
  for (std::uint64_t seed = 100; seed < 200; ++seed) {
    const auto e = jarzynski_monte_carlo(0.5, 2.0, 100000,
                                         CounterStream(RngStreamKey{seed, StreamContext::kJarzynski, 0, 0}));
    EXPECT_GT(e.std_error, 0.0);
    if (std::abs(e.estimate - exact) <= 3 * e.std_error) ++within;
  }
  EXPECT_GE(within, 95);
}

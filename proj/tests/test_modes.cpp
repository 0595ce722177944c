#include <gtest/gtest.h>

#include <cmath>

#include "qagent/errors.hpp"
#include "qagent/modes.hpp"
#include "qagent/rng.hpp"

using namespace qagent;

TEST(TemporalMode, ExponentialValues) {
  const auto m = TemporalMode::exponential({1.0, 0.0});
  EXPECT_EQ(m(0.0), cplx(1.0, 0.0));
  EXPECT_EQ(m(-0.5), cplx(0.0, 0.0));
  EXPECT_DOUBLE_EQ(m.norm_squared(), 1.0);
  const auto m2 = TemporalMode::exponential({2.0, 0.0});
  EXPECT_NEAR(std::abs(m2(1.0)), 0.5202601, 1e-7);
  EXPECT_NEAR(std::abs(m2(1.0)), std::sqrt(2.0) * std::exp(-1.0), 1e-15);
}

TEST(TemporalMode, DetuningIsAPhase) {
  const auto a = TemporalMode::exponential({1.5, 0.0});
  const auto b = TemporalMode::exponential({1.5, 3.0});
  for (double t : {0.1, 0.7, 2.3}) {
    EXPECT_NEAR(std::abs(a(t)), std::abs(b(t)), 1e-15);
    EXPECT_NEAR(std::arg(b(t) / a(t)), std::remainder(3.0 * t, 2 * M_PI), 1e-12);
  }
}

TEST(TemporalMode, RejectsBadParameters) {
  EXPECT_THROW(TemporalMode::exponential({0.0, 0.0}), DomainError);
  EXPECT_THROW(TemporalMode::exponential({-1.0, 0.0}), DomainError);
  EXPECT_THROW(TemporalMode::exponential({1.0, NAN}), DomainError);
}

TEST(TemporalMode, TabulatedNormalization) {
  const auto grid = uniform_grid(20.0, 4000);
  std::vector<cplx> s;
  for (double t : grid) s.push_back(std::exp(-t / 2.0));
  EXPECT_THROW(TemporalMode::tabulated(grid, {s.begin(), s.end()}), DomainError);
  std::vector<cplx> doubled = s;
  for (auto& x : doubled) x *= 2.0;
  const auto m = TemporalMode::tabulated_normalized(grid, doubled);
  EXPECT_NEAR(m.norm_squared(), 1.0, 1e-12);
  EXPECT_EQ(m(25.0), cplx(0.0, 0.0));
  EXPECT_THROW(TemporalMode::tabulated({0.0, 1.0, 0.5}, {1.0, 1.0, 1.0}), DomainError);
  EXPECT_THROW(TemporalMode::tabulated({-1.0, 1.0}, {1.0, 1.0}), DomainError);
}

TEST(Overlap, ClosedFormValues) {
  EXPECT_DOUBLE_EQ(overlap_exponential_closed_form({1, 0}, {1, 0}).value, 1.0);
  EXPECT_NEAR(overlap_exponential_closed_form({1, 0}, {1, 1}).value, 0.5, 1e-15);
  EXPECT_NEAR(overlap_exponential_closed_form({2, 0}, {1, 0}).value, 8.0 / 9.0, 1e-15);
  EXPECT_NEAR(overlap_exponential_closed_form({2, 3}, {1, 3}).value, 8.0 / 9.0, 1e-15);
}

TEST(Overlap, ExactlyOneWithinRoundingOfTheTruth) {
  const ModeParams t{1.0, 2.0};
  const ModeParams near{std::nextafter(1.0, 2.0), std::nextafter(2.0, 3.0)};
  EXPECT_EQ(overlap_exponential_closed_form(near, t).value, 1.0);
}

TEST(Overlap, QuadratureMatchesClosedForm) {
  const std::pair<ModeParams, ModeParams> cases[] = {
      {{1, 0}, {1, 0}}, {{1, 0}, {1, 1}}, {{2, 0}, {1, 0}}, {{0.3, -4}, {1, 2}}, {{4.5, 1}, {1, 2}}};
  for (const auto& [c, s] : cases) {
    const double t_max = std::max(10.0 * std::max(1 / c.gamma, 1 / s.gamma), 60.0);
    const double q = overlap_quadrature(TemporalMode::exponential(c), TemporalMode::exponential(s),
                                        t_max, 1 << 14)
                         .value;
    EXPECT_NEAR(q, overlap_exponential_closed_form(c, s).value, 1e-9);
  }
}

TEST(Overlap, SymmetricAndBounded) {
  const CounterStream rng(RngStreamKey{3, StreamContext::kTest, 0, 0});
  for (std::uint64_t k = 0; k < 500; ++k) {
    const ModeParams a{0.05 + 6 * rng.uniform(4 * k), -8 + 16 * rng.uniform(4 * k + 1)};
    const ModeParams b{0.05 + 6 * rng.uniform(4 * k + 2), -8 + 16 * rng.uniform(4 * k + 3)};
    const double ab = overlap_exponential_closed_form(a, b).value;
    const double ba = overlap_exponential_closed_form(b, a).value;
    EXPECT_NEAR(ab, ba, 1e-15);
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0);
  }
}

TEST(Overlap, QuadratureArgumentChecks) {
  const auto m = TemporalMode::exponential({1, 0});
  EXPECT_THROW(overlap_quadrature(m, m, 40.0, 999), DomainError);
  EXPECT_THROW(overlap_quadrature(m, m, 5.0, 2000), DomainError);
  EXPECT_NO_THROW(overlap_quadrature(m, m, 40.0, 1001));  // odd counts are bumped
  EXPECT_THROW(Overlap::checked(1.1), DomainError);
  EXPECT_THROW(Overlap::checked(-0.1), DomainError);
  EXPECT_EQ(Overlap::checked(1.0 + 1e-13).value, 1.0);
}

TEST(OverlapGradient, KnownValues) {
  const auto g0 = overlap_gradient_exponential({1, 2}, {1, 2});
  EXPECT_EQ(g0.d_gamma, 0.0);
  EXPECT_EQ(g0.d_delta, 0.0);
  const auto g = overlap_gradient_exponential({1, 0}, {1, 1});
  EXPECT_NEAR(g.d_delta, 0.5, 1e-15);
}

TEST(OverlapGradient, MatchesCentralDifferences) {
  const CounterStream rng(RngStreamKey{11, StreamContext::kTest, 0, 0});
  const ModeParams s{1.0, 2.0};
  for (std::uint64_t k = 0; k < 200; ++k) {
    const ModeParams c{0.1 + 4.9 * rng.uniform(2 * k), -5 + 10 * rng.uniform(2 * k + 1)};
    const auto g = overlap_gradient_exponential(c, s);
    const double h = 1e-6;
    const double dg = (overlap_exponential_closed_form({c.gamma + h, c.delta}, s).value -
                       overlap_exponential_closed_form({c.gamma - h, c.delta}, s).value) / (2 * h);
    const double dd = (overlap_exponential_closed_form({c.gamma, c.delta + h}, s).value -
                       overlap_exponential_closed_form({c.gamma, c.delta - h}, s).value) / (2 * h);
    EXPECT_LE(std::hypot(g.d_gamma - dg, g.d_delta - dd), 1e-6 * std::hypot(g.d_gamma, g.d_delta))
        << "at gamma=" << c.gamma << " delta=" << c.delta;
  }
}

TEST(Modes, UniformGridAndSampling) {
  const auto g = uniform_grid(2.0, 4);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_DOUBLE_EQ(g[2], 1.0);
  EXPECT_DOUBLE_EQ(g.back(), 2.0);
  const auto m = TemporalMode::exponential({1, 0.5});
  const auto s = sample_mode(m, g);
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_EQ(s[k], m(g[k]));
}

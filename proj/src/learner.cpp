#include "qagent/learner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qagent/errors.hpp"
#include "qagent/kernels.hpp"

namespace qagent {

namespace {

constexpr double kRoundTripSlack = 1e-12;

double unit(double x, const Interval& iv) { return (x - iv.lo) / iv.width(); }

bool inside_unit(double u) { return u >= -kRoundTripSlack && u <= 1.0 + kRoundTripSlack; }

// dP_e / dGamma for the closed forms.
double error_slope(DetectionModel kind, double gamma, const DetectorParams& det) {
  const double pol = det.bath.polarization();
  if (kind == DetectionModel::kQuantum) return -det.chi * pol;
  const double x = det.chi * gamma;
  return -det.chi * (1.0 - x) * std::exp(-x) * pol;
}

}  // namespace

const char* to_string(GradientBackend b) {
  return b == GradientBackend::kAnalytic ? "analytic" : "empirical";
}

void ParamBounds::validate() const {
  for (const auto* iv : {&gamma, &delta}) {
    if (!std::isfinite(iv->lo) || !std::isfinite(iv->hi) || !(iv->lo < iv->hi)) {
      throw DomainError("bounds: need finite lo < hi");
    }
  }
  if (!(gamma.lo > 0.0)) throw DomainError("bounds: gamma lower bound must be > 0");
}

void AgentConfig::validate() const {
  bounds.validate();
  f0.validate();
  if (!bounds.contains(f0)) throw DomainError("agent: f0 outside bounds");
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw DomainError("agent: learning_rate must be finite and >= 0");
  }
  if (shots < 1) throw DomainError("agent: shots must be >= 1");
  if (!(fd_step > 0.0 && fd_step < 0.5)) throw DomainError("agent: fd_step must lie in (0, 0.5)");
  if (seconds_per_shot) {
    const double s = *seconds_per_shot;
    if (!(s > 0.0)) throw DomainError("agent: seconds_per_shot must be > 0");
    if (!(learning_rate < 1.0 / (static_cast<double>(shots) * s))) {
      throw DomainError("agent: learning_rate must stay below 1/(N s)");
    }
  }
}

void WorldConfig::validate() const {
  f_true.validate();
  detector.validate();
}

double sample_error_rate(double p_e, std::uint64_t n, const CounterStream& stream) {
  if (!(p_e >= 0.0 && p_e <= 1.0)) throw DomainError("sample_error_rate: p_e outside [0, 1]");
  if (n < 1) throw DomainError("sample_error_rate: N must be >= 1");
  const std::uint64_t errors = kernels::parallel::count_below(stream, n, p_e);
  return static_cast<double>(errors) / static_cast<double>(n);
}

Point2 normalize(const ModeParams& f, const ParamBounds& b) {
  const Point2 u{unit(f.gamma, b.gamma), unit(f.delta, b.delta)};
  if (!inside_unit(u[0]) || !inside_unit(u[1])) {
    throw DomainError("normalize: parameters outside bounds");
  }
  return {std::clamp(u[0], 0.0, 1.0), std::clamp(u[1], 0.0, 1.0)};
}

ModeParams denormalize(const Point2& u, const ParamBounds& b) {
  if (!inside_unit(u[0]) || !inside_unit(u[1])) {
    throw DomainError("denormalize: point outside the unit square");
  }
  return {b.gamma.lo + u[0] * b.gamma.width(), b.delta.lo + u[1] * b.delta.width()};
}

double normalized_distance(const ModeParams& f, const ModeParams& f_true, const ParamBounds& b) {
  const Point2 u = normalize(f, b);
  const Point2 v = normalize(f_true, b);
  return std::hypot(u[0] - v[0], u[1] - v[1]) / std::sqrt(2.0);
}

double model_error(const ModeParams& f, DetectionModel kind, const WorldConfig& world) {
  return error_prob(kind, overlap_exponential_closed_form(f, world.f_true), world.detector);
}

Point2 estimate_gradient(const ModeParams& f, const AgentConfig& agent, const WorldConfig& world,
                         std::uint64_t seed, std::uint64_t iteration) {
  const ParamBounds& b = agent.bounds;
  if (agent.backend == GradientBackend::kAnalytic) {
    const Overlap g = overlap_exponential_closed_form(f, world.f_true);
    const OverlapGradient dg = overlap_gradient_exponential(f, world.f_true);
    const double slope = error_slope(agent.kind, g.value, world.detector);
    return {slope * dg.d_gamma * b.gamma.width(), slope * dg.d_delta * b.delta.width()};
  }

  const Point2 u = normalize(f, b);
  Point2 grad{};
  for (std::size_t k = 0; k < 2; ++k) {
    Point2 plus = u;
    Point2 minus = u;
    plus[k] = std::clamp(u[k] + agent.fd_step, 0.0, 1.0);
    minus[k] = std::clamp(u[k] - agent.fd_step, 0.0, 1.0);
    const double span = plus[k] - minus[k];
    double rates[2];
    for (std::size_t side = 0; side < 2; ++side) {
      const Point2& probe = side == 0 ? plus : minus;
      const double p_e = model_error(denormalize(probe, b), agent.kind, world);
      const CounterStream stream(
          RngStreamKey{seed, StreamContext::kGradientProbe, iteration, 2 * k + side});
      rates[side] = sample_error_rate(p_e, agent.shots, stream);
    }
    grad[k] = (rates[0] - rates[1]) / span;
  }
  return grad;
}

Point2 gd_step(const Point2& u, const Point2& gradient, double learning_rate) {
  return {std::clamp(u[0] - learning_rate * gradient[0], 0.0, 1.0),
          std::clamp(u[1] - learning_rate * gradient[1], 0.0, 1.0)};
}

std::vector<LearningRecord> run_learning(const AgentConfig& agent, const WorldConfig& world,
                                         std::uint64_t seed) {
  agent.validate();
  world.validate();
  if (!agent.bounds.contains(world.f_true)) {
    throw DomainError("world: f_true outside the agent's bounds");
  }

  std::vector<LearningRecord> records;
  records.reserve(agent.max_iterations + 1);
  Point2 u = normalize(agent.f0, agent.bounds);

  for (std::size_t i = 0;; ++i) {
    LearningRecord rec;
    rec.iteration = i;
    rec.f = denormalize(u, agent.bounds);
    rec.f_norm = u;
    const Overlap g = overlap_exponential_closed_form(rec.f, world.f_true);
    rec.overlap = g.value;
    rec.p_e_model = error_prob(agent.kind, g, world.detector);
    rec.x_bar = sample_error_rate(
        rec.p_e_model, agent.shots,
        CounterStream(RngStreamKey{seed, StreamContext::kErrorRate, i, 0}));
    rec.dist_norm = normalized_distance(rec.f, world.f_true, agent.bounds);
    rec.thermo = summarize_scaled(absorption_probability(agent.kind, g, world.detector),
                                  world.detector.bath);
    records.push_back(rec);
    if (i == agent.max_iterations) break;

    Point2 grad = estimate_gradient(rec.f, agent, world, seed, i);
    if (agent.ascend) grad = {-grad[0], -grad[1]};
    u = gd_step(u, grad, agent.learning_rate);
  }
  return records;
}

std::optional<std::size_t> iterations_to_reach(const std::vector<LearningRecord>& records,
                                               double threshold) {
  for (const auto& r : records) {
    if (r.dist_norm < threshold) return r.iteration;
  }
  return std::nullopt;
}

}  // namespace qagent

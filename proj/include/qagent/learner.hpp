#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "qagent/detector.hpp"
#include "qagent/modes.hpp"
#include "qagent/rng.hpp"
#include "qagent/thermo.hpp"

namespace qagent {

using Point2 = std::array<double, 2>;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double width() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

struct ParamBounds {
  Interval gamma{0.1, 5.0};
  Interval delta{-5.0, 5.0};

  void validate() const;
  bool contains(const ModeParams& f) const {
    return gamma.contains(f.gamma) && delta.contains(f.delta);
  }
};

enum class GradientBackend { kEmpirical, kAnalytic };

const char* to_string(GradientBackend b);

struct AgentConfig {
  DetectionModel kind = DetectionModel::kQuantum;
  ModeParams f0{3.0, -1.0};
  ParamBounds bounds;
  double learning_rate = 0.01;
  std::uint64_t shots = 1000;
  double fd_step = 0.01;
  std::size_t max_iterations = 1000;
  GradientBackend backend = GradientBackend::kAnalytic;
  /// Follow f <- f + L grad P_e instead of descending. For comparison runs only.
  bool ascend = false;
  /// Seconds per shot; when set, L must stay below 1 / (N s).
  std::optional<double> seconds_per_shot;

  void validate() const;
};

struct WorldConfig {
  ModeParams f_true{1.0, 2.0};
  DetectorParams detector;

  void validate() const;
};

struct LearningRecord {
  std::size_t iteration = 0;
  ModeParams f;
  Point2 f_norm{};
  double x_bar = 0.0;
  double p_e_model = 0.0;
  double overlap = 0.0;
  double dist_norm = 0.0;
  ScaledThermo thermo;
};

/// Mean of n Bernoulli(p_e) error bits drawn from the stream (counter-based, OpenMP).
double sample_error_rate(double p_e, std::uint64_t n, const CounterStream& stream);

Point2 normalize(const ModeParams& f, const ParamBounds& b);
ModeParams denormalize(const Point2& u, const ParamBounds& b);

/// ||normalize(f) - normalize(f_true)|| / sqrt(2).
double normalized_distance(const ModeParams& f, const ModeParams& f_true, const ParamBounds& b);

/// Exact model error probability at f.
double model_error(const ModeParams& f, DetectionModel kind, const WorldConfig& world);

/// Gradient of P_e in normalized coordinates. The empirical backend spends 4N shots
/// on symmetric probes u +- delta e_k; probe k uses substream (seed, probe, iteration, k).
Point2 estimate_gradient(const ModeParams& f, const AgentConfig& agent, const WorldConfig& world,
                         std::uint64_t seed, std::uint64_t iteration);

/// clamp(u - L g, [0, 1]^2)
Point2 gd_step(const Point2& u, const Point2& gradient, double learning_rate);

/// One record per iteration i = 0..max_iterations (record i is the state after i updates).
std::vector<LearningRecord> run_learning(const AgentConfig& agent, const WorldConfig& world,
                                         std::uint64_t seed);

/// First iteration whose dist_norm is below the threshold.
std::optional<std::size_t> iterations_to_reach(const std::vector<LearningRecord>& records,
                                               double threshold);

}  // namespace qagent

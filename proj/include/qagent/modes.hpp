#pragma once

#include <complex>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace qagent {

using cplx = std::complex<double>;

/// Linewidth and detuning of an exponentially decaying cavity mode, in units
/// of the true linewidth (time in units of its inverse).
struct ModeParams {
  double gamma = 1.0;
  double delta = 0.0;

  /// Throws DomainError unless gamma > 0 and both values are finite.
  void validate() const;
  friend bool operator==(const ModeParams&, const ModeParams&) = default;
};

struct ExponentialShape {
  ModeParams params;
};

/// Samples on a strictly increasing time grid, linearly interpolated and zero
/// outside the sampled support.
struct TabulatedShape {
  std::vector<double> times;
  std::vector<cplx> samples;
};

/// Unit-norm complex temporal amplitude, zero for t < 0.
class TemporalMode {
 public:
  static TemporalMode exponential(const ModeParams& p);
  /// Validates grid ordering, t >= 0 support and unit L2 norm (trapezoid, 1e-9).
  static TemporalMode tabulated(std::vector<double> times, std::vector<cplx> samples);
  /// As tabulated() but rescales the samples to unit trapezoid norm first.
  static TemporalMode tabulated_normalized(std::vector<double> times, std::vector<cplx> samples);

  cplx operator()(double t) const;
  /// L2 norm squared; analytic for the exponential family.
  double norm_squared() const;
  /// 1/e amplitude-squared decay time for exponential modes, 0 for tabulated.
  double decay_time() const;
  /// Last time with nonzero amplitude (+inf for exponential modes).
  double support_end() const;

  const std::variant<ExponentialShape, TabulatedShape>& shape() const { return shape_; }

 private:
  explicit TemporalMode(std::variant<ExponentialShape, TabulatedShape> s) : shape_(std::move(s)) {}
  std::variant<ExponentialShape, TabulatedShape> shape_;
};

/// Squared modulus of the control/signal inner product, in [0, 1].
struct Overlap {
  double value = 0.0;

  /// Throws DomainError if value is outside [0, 1 + 1e-12] or not finite; clamps to 1.
  static Overlap checked(double v);
};

struct OverlapGradient {
  double d_gamma = 0.0;
  double d_delta = 0.0;
};

TemporalMode make_exponential_mode(const ModeParams& p);

/// |int conj(control) * signal dt|^2 by composite Simpson on [0, t_max].
/// Requires n_steps >= 1000 (odd counts are bumped to the next even number) and
/// t_max >= 10 decay times of the slower mode and past any tabulated support.
Overlap overlap_quadrature(const TemporalMode& control, const TemporalMode& signal,
                           double t_max, std::size_t n_steps);

/// gamma*gamma_t / (((gamma + gamma_t)/2)^2 + (delta - delta_t)^2)
Overlap overlap_exponential_closed_form(const ModeParams& control, const ModeParams& signal);

/// Exact partial derivatives of the closed form with respect to the control parameters.
OverlapGradient overlap_gradient_exponential(const ModeParams& control, const ModeParams& signal);

/// Uniform grid t_k = k * t_max / n, k = 0..n.
std::vector<double> uniform_grid(double t_max, std::size_t n);

/// Mode amplitudes on a grid (OpenMP-parallel).
std::vector<cplx> sample_mode(const TemporalMode& mode, std::span<const double> grid);

}  // namespace qagent

#include "qagent/modes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qagent/errors.hpp"
#include "qagent/kernels.hpp"

namespace qagent {

namespace {

constexpr double kNormTolerance = 1e-9;

double trapezoid_norm_squared(const std::vector<double>& t, const std::vector<cplx>& s) {
  double sum = 0.0;
  for (std::size_t k = 1; k < t.size(); ++k) {
    sum += 0.5 * (t[k] - t[k - 1]) * (std::norm(s[k]) + std::norm(s[k - 1]));
  }
  return sum;
}

void validate_grid(const std::vector<double>& t, const std::vector<cplx>& s) {
  if (t.size() != s.size()) throw DomainError("tabulated mode: times/samples size mismatch");
  if (t.size() < 2) throw DomainError("tabulated mode: need at least two samples");
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!std::isfinite(t[k]) || !std::isfinite(s[k].real()) || !std::isfinite(s[k].imag())) {
      throw DomainError("tabulated mode: non-finite entry at index " + std::to_string(k));
    }
    if (k > 0 && !(t[k] > t[k - 1])) {
      throw DomainError("tabulated mode: times must be strictly increasing");
    }
  }
  if (t.front() < 0.0) throw DomainError("tabulated mode: support must start at t >= 0");
}

cplx interpolate(const TabulatedShape& tab, double t) {
  const auto& ts = tab.times;
  if (t < ts.front() || t > ts.back()) return {0.0, 0.0};
  auto it = std::upper_bound(ts.begin(), ts.end(), t);
  if (it == ts.end()) return tab.samples.back();
  const std::size_t hi = static_cast<std::size_t>(it - ts.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
  return (1.0 - w) * tab.samples[lo] + w * tab.samples[hi];
}

}  // namespace

void ModeParams::validate() const {
  if (!std::isfinite(gamma) || !std::isfinite(delta)) {
    throw DomainError("mode params must be finite");
  }
  if (!(gamma > 0.0)) {
    throw DomainError("mode linewidth gamma must be > 0, got " + std::to_string(gamma));
  }
}

TemporalMode TemporalMode::exponential(const ModeParams& p) {
  p.validate();
  return TemporalMode(ExponentialShape{p});
}

TemporalMode TemporalMode::tabulated(std::vector<double> times, std::vector<cplx> samples) {
  validate_grid(times, samples);
  const double n2 = trapezoid_norm_squared(times, samples);
  if (std::abs(n2 - 1.0) > kNormTolerance) {
    throw DomainError("tabulated mode: L2 norm^2 is " + std::to_string(n2) + ", expected 1");
  }
  return TemporalMode(TabulatedShape{std::move(times), std::move(samples)});
}

TemporalMode TemporalMode::tabulated_normalized(std::vector<double> times,
                                                std::vector<cplx> samples) {
  validate_grid(times, samples);
  const double n2 = trapezoid_norm_squared(times, samples);
  if (!(n2 > 0.0)) throw DomainError("tabulated mode: zero norm");
  const double scale = 1.0 / std::sqrt(n2);
  for (auto& s : samples) s *= scale;
  return tabulated(std::move(times), std::move(samples));
}

cplx TemporalMode::operator()(double t) const {
  if (t < 0.0) return {0.0, 0.0};
  if (const auto* e = std::get_if<ExponentialShape>(&shape_)) {
    const double g = e->params.gamma;
    return std::sqrt(g) * std::exp(cplx{-0.5 * g * t, e->params.delta * t});
  }
  return interpolate(std::get<TabulatedShape>(shape_), t);
}

double TemporalMode::norm_squared() const {
  if (std::holds_alternative<ExponentialShape>(shape_)) return 1.0;
  const auto& tab = std::get<TabulatedShape>(shape_);
  return trapezoid_norm_squared(tab.times, tab.samples);
}

double TemporalMode::decay_time() const {
  if (const auto* e = std::get_if<ExponentialShape>(&shape_)) return 1.0 / e->params.gamma;
  return 0.0;
}

double TemporalMode::support_end() const {
  if (std::holds_alternative<ExponentialShape>(shape_)) {
    return std::numeric_limits<double>::infinity();
  }
  return std::get<TabulatedShape>(shape_).times.back();
}

Overlap Overlap::checked(double v) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0 + 1e-12) {
    throw DomainError("overlap must lie in [0, 1], got " + std::to_string(v));
  }
  return Overlap{std::min(v, 1.0)};  // absorb rounding just above 1
}

TemporalMode make_exponential_mode(const ModeParams& p) { return TemporalMode::exponential(p); }

std::vector<double> uniform_grid(double t_max, std::size_t n) {
  std::vector<double> grid(n + 1);
  const double h = t_max / static_cast<double>(n);
  for (std::size_t k = 0; k <= n; ++k) grid[k] = static_cast<double>(k) * h;
  grid[n] = t_max;
  return grid;
}

std::vector<cplx> sample_mode(const TemporalMode& mode, std::span<const double> grid) {
  std::vector<cplx> out(grid.size());
  kernels::parallel::map(grid, out, [&mode](double t) { return mode(t); });
  return out;
}

Overlap overlap_quadrature(const TemporalMode& control, const TemporalMode& signal, double t_max,
                           std::size_t n_steps) {
  if (n_steps < 1000) {
    throw DomainError("overlap_quadrature: n_steps must be >= 1000, got " +
                      std::to_string(n_steps));
  }
  if (n_steps % 2 == 1) ++n_steps;
  const double horizon = 10.0 * std::max(control.decay_time(), signal.decay_time());
  if (!std::isfinite(t_max) || !(t_max > 0.0) || t_max < horizon) {
    throw DomainError("overlap_quadrature: t_max must cover 10 decay times of the slower mode");
  }
  for (const TemporalMode* m : {&control, &signal}) {
    if (std::isfinite(m->support_end()) && t_max < m->support_end()) {
      throw DomainError("overlap_quadrature: t_max ends before the tabulated support");
    }
  }
  const auto grid = uniform_grid(t_max, n_steps);
  const auto v = sample_mode(control, grid);
  const auto xi = sample_mode(signal, grid);
  const cplx inner = kernels::parallel::simpson_inner(v, xi, t_max / static_cast<double>(n_steps));
  return Overlap{std::clamp(std::norm(inner), 0.0, 1.0)};
}

Overlap overlap_exponential_closed_form(const ModeParams& control, const ModeParams& signal) {
  control.validate();
  signal.validate();
  const double half_sum = 0.5 * (control.gamma + signal.gamma);
  const double detuning = control.delta - signal.delta;
  const double denom = half_sum * half_sum + detuning * detuning;
  // Near the peak evaluate the deficit 1 - Gamma = ((gamma - gamma_T)^2/4 + d^2) / D
  // directly, so Gamma is exactly 1 when the parameters agree to rounding.
  const double half_diff = 0.5 * (control.gamma - signal.gamma);
  const double deficit = (half_diff * half_diff + detuning * detuning) / denom;
  if (deficit < 0.5) return Overlap{1.0 - deficit};
  return Overlap{control.gamma * signal.gamma / denom};
}

OverlapGradient overlap_gradient_exponential(const ModeParams& control, const ModeParams& signal) {
  control.validate();
  signal.validate();
  const double half_sum = 0.5 * (control.gamma + signal.gamma);
  const double detuning = control.delta - signal.delta;
  const double denom = half_sum * half_sum + detuning * detuning;
  const double g = control.gamma * signal.gamma / denom;
  return OverlapGradient{
      g * (1.0 / control.gamma - half_sum / denom),
      -g * 2.0 * detuning / denom,
  };
}

}  // namespace qagent

#pragma once

// Data-parallel inner loops. Each kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::parallel. The parallel
// versions reduce over fixed-size chunks in a fixed order, so their results do
// not depend on the thread count; integer reductions match the serial
// reference exactly, floating reductions to rounding.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qagent/rng.hpp"

namespace qagent::kernels {

using cplx = std::complex<double>;

inline constexpr std::size_t kChunk = 4096;

namespace serial {

/// Number of draws k in [0, n) with stream.uniform(k) < p.
std::uint64_t count_below(const CounterStream& stream, std::uint64_t n, double p);

/// Composite Simpson weights applied to conj(a[k]) * b[k] on a uniform grid with
/// spacing h. Sizes must match and be odd (even number of intervals).
cplx simpson_inner(std::span<const cplx> a, std::span<const cplx> b, double h);

/// out[k] = f(x[k])
void map(std::span<const double> x, std::span<cplx> out, const std::function<cplx(double)>& f);

/// Row-major nx*ny table of f(i, j).
std::vector<double> grid_map(std::size_t nx, std::size_t ny,
                             const std::function<double(std::size_t, std::size_t)>& f);

}  // namespace serial

namespace parallel {

std::uint64_t count_below(const CounterStream& stream, std::uint64_t n, double p);
cplx simpson_inner(std::span<const cplx> a, std::span<const cplx> b, double h);
void map(std::span<const double> x, std::span<cplx> out, const std::function<cplx(double)>& f);
std::vector<double> grid_map(std::size_t nx, std::size_t ny,
                             const std::function<double(std::size_t, std::size_t)>& f);

}  // namespace parallel

/// Index of the smallest entry (first one on ties).
std::size_t argmin(std::span<const double> values);

}  // namespace qagent::kernels

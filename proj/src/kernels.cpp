#include "qagent/kernels.hpp"

#include <algorithm>
#include <cassert>

#include "qagent/errors.hpp"

namespace qagent::kernels {

namespace {

double simpson_weight(std::size_t k, std::size_t last) {
  if (k == 0 || k == last) return 1.0;
  return (k % 2 == 1) ? 4.0 : 2.0;
}

void check_simpson_args(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw DomainError("simpson_inner: size mismatch");
  if (a.size() < 3 || a.size() % 2 == 0) {
    throw DomainError("simpson_inner: need an odd number (>= 3) of samples");
  }
}

std::size_t chunk_count(std::size_t n) { return (n + kChunk - 1) / kChunk; }

}  // namespace

namespace serial {

std::uint64_t count_below(const CounterStream& stream, std::uint64_t n, double p) {
  std::uint64_t count = 0;
  for (std::uint64_t k = 0; k < n; ++k) {
    if (stream.uniform(k) < p) ++count;
  }
  return count;
}

cplx simpson_inner(std::span<const cplx> a, std::span<const cplx> b, double h) {
  check_simpson_args(a, b);
  const std::size_t last = a.size() - 1;
  cplx sum{0.0, 0.0};
  for (std::size_t k = 0; k <= last; ++k) {
    sum += simpson_weight(k, last) * std::conj(a[k]) * b[k];
  }
  return sum * (h / 3.0);
}

void map(std::span<const double> x, std::span<cplx> out, const std::function<cplx(double)>& f) {
  assert(x.size() == out.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = f(x[k]);
}

std::vector<double> grid_map(std::size_t nx, std::size_t ny,
                             const std::function<double(std::size_t, std::size_t)>& f) {
  std::vector<double> out(nx * ny);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) out[i * ny + j] = f(i, j);
  }
  return out;
}

}  // namespace serial

namespace parallel {

std::uint64_t count_below(const CounterStream& stream, std::uint64_t n, double p) {
  std::uint64_t count = 0;
  const auto signed_n = static_cast<std::int64_t>(n);
#pragma omp parallel for reduction(+ : count) schedule(static)
  for (std::int64_t k = 0; k < signed_n; ++k) {
    if (stream.uniform(static_cast<std::uint64_t>(k)) < p) ++count;
  }
  return count;
}

cplx simpson_inner(std::span<const cplx> a, std::span<const cplx> b, double h) {
  check_simpson_args(a, b);
  const std::size_t last = a.size() - 1;
  const std::size_t chunks = chunk_count(a.size());
  std::vector<cplx> partial(chunks);
  const auto signed_chunks = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < signed_chunks; ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * kChunk;
    const std::size_t end = std::min(a.size(), begin + kChunk);
    cplx s{0.0, 0.0};
    for (std::size_t k = begin; k < end; ++k) {
      s += simpson_weight(k, last) * std::conj(a[k]) * b[k];
    }
    partial[static_cast<std::size_t>(c)] = s;
  }
  cplx sum{0.0, 0.0};
  for (const cplx& s : partial) sum += s;
  return sum * (h / 3.0);
}

void map(std::span<const double> x, std::span<cplx> out, const std::function<cplx(double)>& f) {
  assert(x.size() == out.size());
  const auto n = static_cast<std::int64_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < n; ++k) {
    out[static_cast<std::size_t>(k)] = f(x[static_cast<std::size_t>(k)]);
  }
}

std::vector<double> grid_map(std::size_t nx, std::size_t ny,
                             const std::function<double(std::size_t, std::size_t)>& f) {
  std::vector<double> out(nx * ny);
  const auto total = static_cast<std::int64_t>(nx * ny);
#pragma omp parallel for schedule(static)
  for (std::int64_t idx = 0; idx < total; ++idx) {
    const auto u = static_cast<std::size_t>(idx);
    out[u] = f(u / ny, u % ny);
  }
  return out;
}

}  // namespace parallel

std::size_t argmin(std::span<const double> values) {
  if (values.empty()) throw DomainError("argmin: empty input");
  return static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
}

}  // namespace qagent::kernels

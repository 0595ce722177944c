#include "qagent/fock_oracle.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

#include "qagent/csv.hpp"
#include "qagent/errors.hpp"

namespace qagent {

namespace {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

// Basis {|g>, |e>}: sigma_+ = |e><g|, sigma_- = |g><e|.
const Mat2& sigma_plus() {
  static const Mat2 sp = (Mat2() << 0, 0, 1, 0).finished();
  return sp;
}
const Mat2& sigma_minus() {
  static const Mat2 sm = (Mat2() << 0, 1, 0, 0).finished();
  return sm;
}

Mat2 lindblad(const Mat2& x, double up, double down) {
  const Mat2& sp = sigma_plus();
  const Mat2& sm = sigma_minus();
  const Mat2 pg = sm * sp;  // |g><g|
  const Mat2 pe = sp * sm;  // |e><e|
  return up * (sp * x * sm - 0.5 * (pg * x + x * pg)) +
         down * (sm * x * sp - 0.5 * (pe * x + x * pe));
}

Mat2 commutator(const Mat2& a, const Mat2& b) { return a * b - b * a; }

struct HierarchyRates {
  double up = 0.0;
  double down = 0.0;
  cplx xi_vconj;  // xi V*
};

FockHierarchyState hierarchy_rhs(const FockHierarchyState& s, const HierarchyRates& r,
                                 const cplx& c) {
  const Mat2& sp = sigma_plus();
  const Mat2& sm = sigma_minus();
  const cplx a = c * r.xi_vconj;             // c xi V*
  const cplx b = c * std::conj(r.xi_vconj);  // c xi* V
  FockHierarchyState d;
  d.rho00 = lindblad(s.rho00, r.up, r.down);
  d.rho10 = lindblad(s.rho10, r.up, r.down) + a * commutator(s.rho00, sm);
  d.rho01 = lindblad(s.rho01, r.up, r.down) - b * commutator(sp, s.rho00);
  d.rho11 = lindblad(s.rho11, r.up, r.down) + a * commutator(s.rho01, sm) -
            b * commutator(sp, s.rho10);
  return d;
}

FockHierarchyState axpy(const FockHierarchyState& x, double h, const FockHierarchyState& k) {
  return {x.rho00 + h * k.rho00, x.rho01 + h * k.rho01, x.rho10 + h * k.rho10,
          x.rho11 + h * k.rho11};
}

double hermiticity(const Eigen::MatrixXcd& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

std::string describe(const InvariantReport& r, double t) {
  std::ostringstream os;
  os << "invariant drift at t=" << t << ": trace " << r.trace_deviation << ", hermiticity "
     << r.hermiticity_deviation << ", conjugate blocks " << r.conjugate_deviation;
  return os.str();
}

double signal_rate(const TemporalMode& signal) {
  if (const auto* e = std::get_if<ExponentialShape>(&signal.shape())) {
    return 0.5 * e->params.gamma + std::abs(e->params.delta);
  }
  return 0.0;
}

// Control and signal on the half-step lattice t_j = j dt / 2, j = 0..2N.
struct DriveTable {
  std::vector<cplx> v;
  std::vector<cplx> xi;
};

DriveTable tabulate(const ControlFn& control, const ControlFn& signal, const TimeGrid& grid) {
  DriveTable d;
  const std::size_t n = 2 * grid.steps + 1;
  d.v.resize(n);
  d.xi.resize(n);
  const double half = 0.5 * grid.dt();
  for (std::size_t j = 0; j < n; ++j) {
    const double t = static_cast<double>(j) * half;
    d.v[j] = control(t);
    d.xi[j] = signal(t);
  }
  return d;
}

void check_grid(const TimeGrid& grid) {
  if (!(grid.t_max > 0.0) || !std::isfinite(grid.t_max) || grid.steps == 0) {
    throw ConfigError("oracle: time grid needs t_max > 0 and steps >= 1");
  }
}

void check_step(double fastest_rate, double dt, const char* who) {
  if (fastest_rate * dt > kMaxRateStep) {
    std::ostringstream os;
    os << who << ": step " << dt << " too coarse for fastest rate " << fastest_rate
       << " (rate*dt must be <= " << kMaxRateStep << "; need >= "
       << static_cast<std::size_t>(std::ceil(fastest_rate / kMaxRateStep)) << " steps per unit time)";
    throw ConfigError(os.str());
  }
}

// Row-major d x d right-hand side of the driven atom-cavity master equation.
class CavityRhs {
 public:
  CavityRhs(int n_max, double kappa, double nbar, double eta)
      : levels_(n_max + 1),
        dim_(2 * levels_),
        kappa_down_(kappa * (nbar + 1.0)),
        kappa_up_(kappa * nbar),
        drive_scale_(std::sqrt(eta * kappa)),
        photons_(dim_),
        sqrt_n_(levels_ + 1) {
    for (int k = 0; k <= levels_; ++k) sqrt_n_[k] = std::sqrt(static_cast<double>(k));
    for (int i = 0; i < dim_; ++i) photons_[i] = i % levels_;
  }

  int dim() const { return dim_; }

  void operator()(const cplx* rho, cplx* out, cplx v, cplx xi) const {
    const int L = levels_;
    const int d = dim_;
    const int top = L - 1;
    const cplx minus_i{0.0, -1.0};
    // Hamiltonian partners: H(r, p[r]) = hval[r].
    for (int i = 0; i < d; ++i) {
      partner_[i] = -1;
      const int s = i / L;
      const int n = i % L;
      if (s == 1 && n >= 1) {
        partner_[i] = n - 1;  // (g, n-1)
        hval_[i] = v * sqrt_n_[n];
      } else if (s == 0 && n + 1 <= top) {
        partner_[i] = L + n + 1;  // (e, n+1)
        hval_[i] = std::conj(v) * sqrt_n_[n + 1];
      }
    }
    const cplx xi_c = std::conj(xi);
    for (int i = 0; i < d; ++i) {
      const int ni = photons_[i];
      const double aad_i = ni < top ? ni + 1.0 : 0.0;
      for (int j = 0; j < d; ++j) {
        const int nj = photons_[j];
        const double aad_j = nj < top ? nj + 1.0 : 0.0;
        const cplx r = rho[i * d + j];
        cplx acc{0.0, 0.0};

        // -i [H, rho]
        cplx comm{0.0, 0.0};
        if (partner_[i] >= 0) comm += hval_[i] * rho[partner_[i] * d + j];
        if (partner_[j] >= 0) comm -= rho[i * d + partner_[j]] * std::conj(hval_[j]);
        acc += minus_i * comm;

        // kappa (n+1) D[a]
        double diss = -0.5 * (ni + nj);
        cplx jump{0.0, 0.0};
        if (ni < top && nj < top) jump = sqrt_n_[ni + 1] * sqrt_n_[nj + 1] * rho[(i + 1) * d + j + 1];
        acc += kappa_down_ * (jump + diss * r);

        // kappa n D[a+]
        if (kappa_up_ != 0.0) {
          cplx jump_up{0.0, 0.0};
          if (ni >= 1 && nj >= 1) jump_up = sqrt_n_[ni] * sqrt_n_[nj] * rho[(i - 1) * d + j - 1];
          acc += kappa_up_ * (jump_up - 0.5 * (aad_i + aad_j) * r);
        }

        // sqrt(eta kappa) [X, rho], X = xi* a - xi a+
        if (xi != cplx{0.0, 0.0}) {
          cplx drive{0.0, 0.0};
          if (ni < top) drive += xi_c * sqrt_n_[ni + 1] * rho[(i + 1) * d + j];
          if (ni >= 1) drive -= xi * sqrt_n_[ni] * rho[(i - 1) * d + j];
          if (nj >= 1) drive -= rho[i * d + j - 1] * xi_c * sqrt_n_[nj];
          if (nj < top) drive += rho[i * d + j + 1] * xi * sqrt_n_[nj + 1];
          acc += drive_scale_ * drive;
        }
        out[i * d + j] = acc;
      }
    }
  }

 private:
  int levels_;
  int dim_;
  double kappa_down_;
  double kappa_up_;
  double drive_scale_;
  std::vector<int> photons_;
  std::vector<double> sqrt_n_;
  mutable std::vector<int> partner_ = std::vector<int>(dim_);
  mutable std::vector<cplx> hval_ = std::vector<cplx>(dim_);
};

CavityMEState to_state(const std::vector<cplx>& flat, int n_max) {
  CavityMEState s;
  s.n_max = n_max;
  const int d = 2 * (n_max + 1);
  s.rho.resize(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) s.rho(i, j) = flat[static_cast<std::size_t>(i * d + j)];
  }
  return s;
}

}  // namespace

FockHierarchyState FockHierarchyState::initial(const BathParams& bath) {
  FockHierarchyState s;
  const double pg = bath.floor_fraction();
  Mat2 diag = Mat2::Zero();
  diag(0, 0) = pg;
  diag(1, 1) = 1.0 - pg;
  s.rho00 = diag;
  s.rho11 = diag;
  return s;
}

CavityMEState CavityMEState::initial(const BathParams& bath, int n_max) {
  if (n_max < 1) throw ConfigError("cavity ME: n_max must be >= 1");
  CavityMEState s;
  s.n_max = n_max;
  const int levels = n_max + 1;
  const int d = 2 * levels;
  s.rho = Eigen::MatrixXcd::Zero(d, d);
  std::vector<double> cavity(static_cast<std::size_t>(levels), 0.0);
  if (bath.is_zero_temperature()) {
    cavity[0] = 1.0;
  } else {
    double total = 0.0;
    for (int n = 0; n < levels; ++n) {
      cavity[static_cast<std::size_t>(n)] = std::exp(-bath.mu() * n);
      total += cavity[static_cast<std::size_t>(n)];
    }
    for (double& p : cavity) p /= total;
  }
  const double pg = bath.floor_fraction();
  for (int n = 0; n < levels; ++n) {
    s.rho(n, n) = pg * cavity[static_cast<std::size_t>(n)];
    s.rho(levels + n, levels + n) = (1.0 - pg) * cavity[static_cast<std::size_t>(n)];
  }
  return s;
}

double CavityMEState::ground_population() const {
  double p = 0.0;
  for (int n = 0; n < cavity_levels(); ++n) p += rho(n, n).real();
  return p;
}

double CavityMEState::photon_number() const {
  const int levels = cavity_levels();
  double acc = 0.0;
  for (int i = 0; i < 2 * levels; ++i) acc += (i % levels) * rho(i, i).real();
  return acc;
}

double CavityMEState::top_level_population() const {
  const int levels = cavity_levels();
  return rho(levels - 1, levels - 1).real() + rho(2 * levels - 1, 2 * levels - 1).real();
}

InvariantReport check_block_invariants(const FockHierarchyState& s) {
  InvariantReport r;
  r.trace_deviation = std::max(std::abs(s.rho00.trace() - 1.0), std::abs(s.rho11.trace() - 1.0));
  r.hermiticity_deviation =
      std::max((s.rho00 - s.rho00.adjoint()).cwiseAbs().maxCoeff(),
               (s.rho11 - s.rho11.adjoint()).cwiseAbs().maxCoeff());
  r.conjugate_deviation = (s.rho10 - s.rho01.adjoint()).cwiseAbs().maxCoeff();
  return r;
}

InvariantReport check_block_invariants(const CavityMEState& s) {
  InvariantReport r;
  r.trace_deviation = std::abs(s.rho.trace() - 1.0);
  r.hermiticity_deviation = hermiticity(s.rho);
  r.top_level_population = s.top_level_population();
  return r;
}

std::vector<HierarchySample> integrate_fock_hierarchy(const ControlFn& control,
                                                      const TemporalMode& signal, double eta,
                                                      double kappa, const BathParams& bath,
                                                      const TimeGrid& grid,
                                                      const OracleOptions& opts) {
  return integrate_fock_hierarchy(
      control, [&signal](double t) { return signal(t); }, signal_rate(signal), eta, kappa, bath,
      grid, opts);
}

std::vector<HierarchySample> integrate_fock_hierarchy(const ControlFn& control,
                                                      const ControlFn& signal, double signal_rate,
                                                      double eta, double kappa,
                                                      const BathParams& bath, const TimeGrid& grid,
                                                      const OracleOptions& opts) {
  check_grid(grid);
  if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError("fock hierarchy: eta must lie in (0, 1]");
  if (!(kappa > 0.0)) throw ConfigError("fock hierarchy: kappa must be > 0");

  const DriveTable drive = tabulate(control, signal, grid);
  const double nbar = bath.nbar();
  const double coupling = 2.0 * std::sqrt(eta / kappa);
  const cplx c{0.0, coupling};
  const double up_per_intensity = 4.0 * (nbar + 1.0) / kappa;
  const double down_per_intensity = 4.0 * nbar / kappa;

  double fastest = signal_rate;
  for (std::size_t j = 0; j < drive.v.size(); ++j) {
    const double iv = std::norm(drive.v[j]);
    fastest = std::max(fastest, (up_per_intensity + down_per_intensity) * iv);
    fastest = std::max(fastest, coupling * std::abs(drive.v[j]) * std::abs(drive.xi[j]));
  }
  const double dt = grid.dt();
  check_step(fastest, dt, "integrate_fock_hierarchy");

  auto rates_at = [&](std::size_t j) {
    const double iv = std::norm(drive.v[j]);
    return HierarchyRates{up_per_intensity * iv, down_per_intensity * iv,
                          drive.xi[j] * std::conj(drive.v[j])};
  };

  FockHierarchyState s = FockHierarchyState::initial(bath);
  std::vector<HierarchySample> out;
  const std::size_t stride = std::max<std::size_t>(1, opts.record_stride);
  out.reserve(grid.steps / stride + 2);
  out.push_back({0.0, s.ground_population(), s.sigma_minus_01()});

  for (std::size_t k = 0; k < grid.steps; ++k) {
    const HierarchyRates r0 = rates_at(2 * k);
    const HierarchyRates r1 = rates_at(2 * k + 1);
    const HierarchyRates r2 = rates_at(2 * k + 2);
    const FockHierarchyState k1 = hierarchy_rhs(s, r0, c);
    const FockHierarchyState k2 = hierarchy_rhs(axpy(s, 0.5 * dt, k1), r1, c);
    const FockHierarchyState k3 = hierarchy_rhs(axpy(s, 0.5 * dt, k2), r1, c);
    const FockHierarchyState k4 = hierarchy_rhs(axpy(s, dt, k3), r2, c);
    s.rho00 += dt / 6.0 * (k1.rho00 + 2.0 * k2.rho00 + 2.0 * k3.rho00 + k4.rho00);
    s.rho01 += dt / 6.0 * (k1.rho01 + 2.0 * k2.rho01 + 2.0 * k3.rho01 + k4.rho01);
    s.rho10 += dt / 6.0 * (k1.rho10 + 2.0 * k2.rho10 + 2.0 * k3.rho10 + k4.rho10);
    s.rho11 += dt / 6.0 * (k1.rho11 + 2.0 * k2.rho11 + 2.0 * k3.rho11 + k4.rho11);

    const std::size_t step = k + 1;
    const double t = (step == grid.steps) ? grid.t_max : static_cast<double>(step) * dt;
    const bool last = step == grid.steps;
    if (last || (opts.check_stride != 0 && step % opts.check_stride == 0)) {
      const InvariantReport rep = check_block_invariants(s);
      if (!rep.trace_ok(opts.trace_tolerance) || !rep.hermitian_ok(opts.hermiticity_tolerance)) {
        throw IntegrationError("integrate_fock_hierarchy: " + describe(rep, t));
      }
    }
    if (last || step % stride == 0) out.push_back({t, s.ground_population(), s.sigma_minus_01()});
  }
  return out;
}

std::vector<CavitySample> integrate_driven_cavity_me(const ControlFn& control,
                                                     const TemporalMode& signal, double eta,
                                                     double kappa, const BathParams& bath,
                                                     int n_max, const TimeGrid& grid,
                                                     const OracleOptions& opts) {
  return integrate_driven_cavity_me(
      control, [&signal](double t) { return signal(t); }, signal_rate(signal), eta, kappa, bath,
      n_max, grid, opts);
}

std::vector<CavitySample> integrate_driven_cavity_me(const ControlFn& control,
                                                     const ControlFn& signal, double signal_rate,
                                                     double eta, double kappa,
                                                     const BathParams& bath, int n_max,
                                                     const TimeGrid& grid,
                                                     const OracleOptions& opts) {
  check_grid(grid);
  if (n_max < 1) throw ConfigError("cavity ME: n_max must be >= 1");
  if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError("cavity ME: eta must lie in (0, 1]");
  if (!(kappa > 0.0)) throw ConfigError("cavity ME: kappa must be > 0");

  const DriveTable drive = tabulate(control, signal, grid);
  const double nbar = bath.nbar();
  const double drive_scale = std::sqrt(eta * kappa);
  double fastest = std::max(signal_rate, kappa * (2.0 * nbar + 1.0));
  const double ladder = std::sqrt(static_cast<double>(n_max));
  for (std::size_t j = 0; j < drive.v.size(); ++j) {
    fastest = std::max(fastest, std::abs(drive.v[j]) * ladder);
    fastest = std::max(fastest, drive_scale * std::abs(drive.xi[j]) * ladder);
  }
  const double dt = grid.dt();
  check_step(fastest, dt, "integrate_driven_cavity_me");

  const CavityRhs rhs(n_max, kappa, nbar, eta);
  const int d = rhs.dim();
  const std::size_t len = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);

  const CavityMEState init = CavityMEState::initial(bath, n_max);
  std::vector<cplx> rho(len);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) rho[static_cast<std::size_t>(i * d + j)] = init.rho(i, j);
  }
  if (init.top_level_population() > opts.truncation_tolerance) {
    throw IntegrationError("integrate_driven_cavity_me: thermal cavity populates level n_max=" +
                           std::to_string(n_max) + "; increase n_max");
  }

  std::vector<cplx> k1(len), k2(len), k3(len), k4(len), tmp(len);
  auto sample = [&](double t) {
    const int levels = n_max + 1;
    double pg = 0.0;
    double photons = 0.0;
    double top = 0.0;
    for (int i = 0; i < d; ++i) {
      const double p = rho[static_cast<std::size_t>(i * d + i)].real();
      if (i < levels) pg += p;
      photons += (i % levels) * p;
      if (i % levels == levels - 1) top += p;
    }
    return CavitySample{t, pg, photons, top};
  };

  std::vector<CavitySample> out;
  const std::size_t stride = std::max<std::size_t>(1, opts.record_stride);
  out.reserve(grid.steps / stride + 2);
  out.push_back(sample(0.0));

  for (std::size_t k = 0; k < grid.steps; ++k) {
    const std::size_t j = 2 * k;
    rhs(rho.data(), k1.data(), drive.v[j], drive.xi[j]);
    for (std::size_t q = 0; q < len; ++q) tmp[q] = rho[q] + 0.5 * dt * k1[q];
    rhs(tmp.data(), k2.data(), drive.v[j + 1], drive.xi[j + 1]);
    for (std::size_t q = 0; q < len; ++q) tmp[q] = rho[q] + 0.5 * dt * k2[q];
    rhs(tmp.data(), k3.data(), drive.v[j + 1], drive.xi[j + 1]);
    for (std::size_t q = 0; q < len; ++q) tmp[q] = rho[q] + dt * k3[q];
    rhs(tmp.data(), k4.data(), drive.v[j + 2], drive.xi[j + 2]);
    for (std::size_t q = 0; q < len; ++q) {
      rho[q] += dt / 6.0 * (k1[q] + 2.0 * k2[q] + 2.0 * k3[q] + k4[q]);
    }

    const std::size_t step = k + 1;
    const bool last = step == grid.steps;
    const double t = last ? grid.t_max : static_cast<double>(step) * dt;
    if (last || (opts.check_stride != 0 && step % opts.check_stride == 0)) {
      const InvariantReport rep = check_block_invariants(to_state(rho, n_max));
      if (rep.top_level_population > opts.truncation_tolerance) {
        std::ostringstream os;
        os << "integrate_driven_cavity_me: top cavity level population "
           << rep.top_level_population << " at t=" << t << " exceeds "
           << opts.truncation_tolerance << "; increase n_max";
        throw IntegrationError(os.str());
      }
      if (!rep.trace_ok(opts.trace_tolerance) || !rep.hermitian_ok(opts.hermiticity_tolerance)) {
        throw IntegrationError("integrate_driven_cavity_me: " + describe(rep, t));
      }
    }
    if (last || step % stride == 0) out.push_back(sample(t));
  }
  return out;
}

void write_trajectory_csv(std::ostream& os, const std::vector<HierarchySample>& traj) {
  os << "t,p_g,re_sigma_minus_01,im_sigma_minus_01\n";
  for (const auto& s : traj) {
    os << format_double(s.t) << ',' << format_double(s.p_g) << ','
       << format_double(s.sigma_minus_01.real()) << ',' << format_double(s.sigma_minus_01.imag())
       << '\n';
  }
}

}  // namespace qagent

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "qagent/bath.hpp"
#include "qagent/modes.hpp"

namespace qagent {

/// Uniform integration grid on [0, t_max] with `steps` RK4 steps.
struct TimeGrid {
  double t_max = 40.0;
  std::size_t steps = 4000;

  double dt() const { return t_max / static_cast<double>(steps); }
};

/// Largest rate times step admitted by the fixed-step integrators.
inline constexpr double kMaxRateStep = 0.05;

/// Single-photon Fock hierarchy blocks over the atomic basis {|g>, |e>}.
struct FockHierarchyState {
  Eigen::Matrix2cd rho00 = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd rho01 = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd rho10 = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd rho11 = Eigen::Matrix2cd::Zero();

  /// Diagonal blocks diag(P_g0, 1 - P_g0) with P_g0 = 1/(1 + e^mu); coherences zero.
  static FockHierarchyState initial(const BathParams& bath);

  double ground_population() const { return rho11(0, 0).real(); }
  /// <sigma_-> in the 01 block: tr(sigma_- rho01) = <e|rho01|g>.
  std::complex<double> sigma_minus_01() const { return rho01(1, 0); }
};

/// Atom (x) truncated cavity density matrix. Basis index = s * (n_max + 1) + n,
/// s = 0 for |g>, 1 for |e>.
struct CavityMEState {
  Eigen::MatrixXcd rho;
  int n_max = 6;

  /// Product of the sensor's inverted atomic state and a truncated, renormalized
  /// thermal cavity state at the same bath.
  static CavityMEState initial(const BathParams& bath, int n_max);

  int cavity_levels() const { return n_max + 1; }
  double ground_population() const;
  double photon_number() const;
  double top_level_population() const;
};

struct InvariantReport {
  double trace_deviation = 0.0;        // worst |tr - 1| over diagonal blocks / full state
  double hermiticity_deviation = 0.0;  // worst max|rho - rho^dagger| entry
  double conjugate_deviation = 0.0;    // max|rho10 - rho01^dagger| (hierarchy only)
  double top_level_population = 0.0;   // cavity state only

  bool trace_ok(double tol) const { return trace_deviation <= tol; }
  bool hermitian_ok(double tol) const {
    return hermiticity_deviation <= tol && conjugate_deviation <= tol;
  }
};

InvariantReport check_block_invariants(const FockHierarchyState& s);
InvariantReport check_block_invariants(const CavityMEState& s);

struct HierarchySample {
  double t = 0.0;
  double p_g = 0.0;
  std::complex<double> sigma_minus_01;
};

struct CavitySample {
  double t = 0.0;
  double p_g = 0.0;
  double photon_number = 0.0;
  double top_level = 0.0;  // population of the highest kept cavity level
};

struct OracleOptions {
  /// Keep every k-th sample (the final sample is always kept).
  std::size_t record_stride = 1;
  /// Check invariants every k steps (and at the end). 0 disables in-flight checks.
  std::size_t check_stride = 1;
  double trace_tolerance = 1e-8;
  double hermiticity_tolerance = 1e-8;
  double truncation_tolerance = 1e-6;
};

using ControlFn = std::function<std::complex<double>(double)>;

/// RK4 integration of the atomic single-photon hierarchy
///   d rho_nm = L rho_nm + (2i sqrt(eta/kappa)) (sqrt(n) xi V* [rho_(n-1)m, s-]
///                                             - sqrt(m) xi* V [s+, rho_n(m-1)])
/// with L = 4(n+1)|V|^2/kappa D[s+] + 4 n |V|^2/kappa D[s-].
/// Throws ConfigError if the fastest rate times dt exceeds kMaxRateStep and
/// IntegrationError on invariant drift.
std::vector<HierarchySample> integrate_fock_hierarchy(const ControlFn& control,
                                                      const TemporalMode& signal, double eta,
                                                      double kappa, const BathParams& bath,
                                                      const TimeGrid& grid,
                                                      const OracleOptions& opts = {});

/// Same with an arbitrary signal amplitude (e.g. vacuum, xi = 0). `signal_rate`
/// is its fastest intrinsic rate, used only by the step check.
std::vector<HierarchySample> integrate_fock_hierarchy(const ControlFn& control,
                                                      const ControlFn& signal, double signal_rate,
                                                      double eta, double kappa,
                                                      const BathParams& bath, const TimeGrid& grid,
                                                      const OracleOptions& opts = {});

/// RK4 integration of the coherently driven atom-cavity master equation
///   d rho = -i[V a+ s+ + V* s- a, rho] + kappa(n+1) D[a] + kappa n D[a+]
///           + sqrt(eta kappa) [xi* a - xi a+, rho].
/// Throws ConfigError for n_max < 1 or a step violation and IntegrationError when
/// the top cavity level exceeds opts.truncation_tolerance (raise n_max).
std::vector<CavitySample> integrate_driven_cavity_me(const ControlFn& control,
                                                     const TemporalMode& signal, double eta,
                                                     double kappa, const BathParams& bath,
                                                     int n_max, const TimeGrid& grid,
                                                     const OracleOptions& opts = {});

std::vector<CavitySample> integrate_driven_cavity_me(const ControlFn& control,
                                                     const ControlFn& signal, double signal_rate,
                                                     double eta, double kappa,
                                                     const BathParams& bath, int n_max,
                                                     const TimeGrid& grid,
                                                     const OracleOptions& opts = {});

/// Header `t,p_g,re_sigma_minus_01,im_sigma_minus_01`, 17 significant digits.
void write_trajectory_csv(std::ostream& os, const std::vector<HierarchySample>& traj);

}  // namespace qagent

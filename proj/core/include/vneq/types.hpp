#pragma once

#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vneq {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

/// Scale factor applied to every default tolerance, read once from the
/// VN_TOLERANCE_SCALE environment variable (default 1).
double tolerance_scale();

/// base_tol * tolerance_scale()
double scaled(double base_tol);

namespace tol {
inline constexpr double hermiticity = 1e-12;
inline constexpr double psd = 1e-10;
inline constexpr double unit_trace = 1e-12;
inline constexpr double eig_residual = 1e-10;
inline constexpr double nullspace_rank = 1e-8;
inline constexpr double idempotency = 1e-12;
}  // namespace tol

/// Time grid plus per-sample states and optional named scalar series.
struct Trajectory {
  std::vector<double> times;
  std::vector<CMat> states;
  std::map<std::string, std::vector<double>> observables;

  int dim() const { return states.empty() ? 0 : static_cast<int>(states.front().rows()); }
  std::size_t size() const { return times.size(); }

  /// Throws unless times are strictly increasing and all states share one
  /// square dimension.
  void validate() const;
};

/// Closed-form solution: a re-evaluable map t -> state matrix.
struct TrajectoryGen {
  int dim = 0;
  std::function<CMat(double)> eval;

  CMat operator()(double t) const { return eval(t); }
};

/// Uniform sampling of a closed-form solution on [t0, t1] with n_samples points.
Trajectory sample(const TrajectoryGen& gen, double t0, double t1, int n_samples);

}  // namespace vneq

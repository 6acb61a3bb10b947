#pragma once

#include <functional>
#include <vector>

#include "vneq/types.hpp"

namespace vneq::fit {

/// r(x): residual vector at parameter vector x.
using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct LMOptions {
  int max_iterations = 200;
  double initial_damping = 1e-3;
  double step_tolerance = 1e-14;
  double gradient_tolerance = 1e-14;
};

struct LMResult {
  Eigen::VectorXd params;
  double rms = 0.0;
  double max_abs_residual = 0.0;
  bool converged = false;
  /// 1-sigma parameter uncertainties, rms² (JᵀJ)⁻¹ diagonal square roots.
  Eigen::VectorXd sigma;
};

/// Damped Gauss-Newton (Levenberg-Marquardt) with a central-difference
/// Jacobian. Small dense problems only.
LMResult levenberg_marquardt(const ResidualFn& residual, Eigen::VectorXd x0,
                             const LMOptions& opts = {});

struct SinusoidFit {
  double a = 0.0;      // coefficient of sin(ω t)
  double b = 0.0;      // coefficient of cos(ω t)
  double omega = 0.0;
  double rms = 0.0;
  double max_abs_residual = 0.0;
  Eigen::Vector3d sigma = Eigen::Vector3d::Zero();  // (a, b, ω) uncertainties
  bool converged = false;

  double amplitude() const;
  double eval(double t) const;
};

/// Fit y ≈ a sin(ωt) + b cos(ωt). ω is seeded from the zero crossings of the
/// data (or from omega_hint when positive) and refined together with (a, b).
SinusoidFit fit_sinusoid(const std::vector<double>& t, const std::vector<double>& y,
                         double omega_hint = 0.0);

}  // namespace vneq::fit

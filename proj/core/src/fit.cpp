#include "vneq/fit.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace vneq::fit {

namespace {

Eigen::MatrixXd numeric_jacobian(const ResidualFn& residual, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& r0) {
  const int n = static_cast<int>(x.size());
  const int m = static_cast<int>(r0.size());
  Eigen::MatrixXd jac(m, n);
  for (int j = 0; j < n; ++j) {
    const double h = std::max(1e-7, 1e-7 * std::abs(x(j)));
    Eigen::VectorXd xp = x, xm = x;
    xp(j) += h;
    xm(j) -= h;
    jac.col(j) = (residual(xp) - residual(xm)) / (2.0 * h);
  }
  return jac;
}

}  // namespace

LMResult levenberg_marquardt(const ResidualFn& residual, Eigen::VectorXd x0,
                             const LMOptions& opts) {
  LMResult result;
  Eigen::VectorXd x = std::move(x0);
  Eigen::VectorXd r = residual(x);
  double cost = r.squaredNorm();
  double damping = opts.initial_damping;

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    const Eigen::MatrixXd jac = numeric_jacobian(residual, x, r);
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd grad = jac.transpose() * r;
    if (grad.lpNorm<Eigen::Infinity>() < opts.gradient_tolerance) {
      result.converged = true;
      break;
    }

    bool stepped = false;
    for (int attempt = 0; attempt < 25; ++attempt) {
      Eigen::MatrixXd damped = jtj;
      damped.diagonal().array() += damping * (jtj.diagonal().array().abs() + 1e-12);
      const Eigen::VectorXd delta = damped.ldlt().solve(-grad);
      const Eigen::VectorXd x_try = x + delta;
      const Eigen::VectorXd r_try = residual(x_try);
      const double cost_try = r_try.squaredNorm();
      if (std::isfinite(cost_try) && cost_try < cost) {
        if (delta.norm() < opts.step_tolerance * (1.0 + x.norm())) {
          result.converged = true;
        }
        x = x_try;
        r = r_try;
        cost = cost_try;
        damping = std::max(damping * 0.3, 1e-14);
        stepped = true;
        break;
      }
      damping *= 10.0;
    }
    if (!stepped) {
      // Rejected at maximal damping: we are at a (local) minimum.
      result.converged = true;
      break;
    }
    if (result.converged) break;
  }

  result.params = x;
  const int m = static_cast<int>(r.size());
  result.rms = std::sqrt(cost / std::max(m, 1));
  result.max_abs_residual = (m > 0) ? r.cwiseAbs().maxCoeff() : 0.0;

  const Eigen::MatrixXd jac = numeric_jacobian(residual, x, r);
  const Eigen::MatrixXd jtj = jac.transpose() * jac;
  const int dof = std::max(m - static_cast<int>(x.size()), 1);
  const double variance = cost / dof;
  const Eigen::MatrixXd cov = variance * jtj.inverse();
  result.sigma = cov.diagonal().cwiseAbs().cwiseSqrt();
  return result;
}

double SinusoidFit::amplitude() const { return std::hypot(a, b); }

double SinusoidFit::eval(double t) const { return a * std::sin(omega * t) + b * std::cos(omega * t); }

SinusoidFit fit_sinusoid(const std::vector<double>& t, const std::vector<double>& y,
                         double omega_hint) {
  if (t.size() != y.size() || t.size() < 8) {
    throw std::invalid_argument("fit_sinusoid: need at least 8 matched samples");
  }
  const int m = static_cast<int>(t.size());

  double omega0 = omega_hint;
  if (!(omega0 > 0.0)) {
    // Seed the frequency from zero crossings of the de-meaned signal.
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= m;
    int crossings = 0;
    for (int i = 1; i < m; ++i) {
      if ((y[i - 1] - mean) * (y[i] - mean) < 0.0) ++crossings;
    }
    const double span = t.back() - t.front();
    omega0 = crossings > 0 ? M_PI * crossings / span : 2.0 * M_PI / span;
  }

  // Linear seed for (a, b) at the seeded frequency.
  Eigen::MatrixXd design(m, 2);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) {
    design(i, 0) = std::sin(omega0 * t[i]);
    design(i, 1) = std::cos(omega0 * t[i]);
    rhs(i) = y[i];
  }
  const Eigen::Vector2d ab = design.colPivHouseholderQr().solve(rhs);

  const auto residual = [&](const Eigen::VectorXd& p) {
    Eigen::VectorXd r(m);
    for (int i = 0; i < m; ++i) {
      r(i) = p(0) * std::sin(p(2) * t[i]) + p(1) * std::cos(p(2) * t[i]) - y[i];
    }
    return r;
  };

  Eigen::VectorXd x0(3);
  x0 << ab(0), ab(1), omega0;
  const LMResult lm = levenberg_marquardt(residual, x0);

  SinusoidFit out;
  out.a = lm.params(0);
  out.b = lm.params(1);
  out.omega = lm.params(2);
  out.rms = lm.rms;
  out.max_abs_residual = lm.max_abs_residual;
  out.sigma = lm.sigma.head(3);
  out.converged = lm.converged;
  return out;
}

}  // namespace vneq::fit

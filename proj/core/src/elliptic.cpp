#include "vneq/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "vneq/fit.hpp"
#include "vneq/linalg.hpp"

namespace vneq::elliptic {

EigenbasisMap h_eigenbasis(const CMat& h) {
  const auto eig = linalg::herm_eig(h);
  const int d = static_cast<int>(eig.eigenvalues.size());

  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int l, int r) {
    return std::abs(eig.eigenvalues(l)) > std::abs(eig.eigenvalues(r));
  });

  // Pull a ±pair to the front, positive member leading.
  const double scale = std::max(1.0, std::abs(eig.eigenvalues(order.front())));
  for (int i = 0; i < d && d >= 2; ++i) {
    bool found = false;
    for (int j = i + 1; j < d; ++j) {
      const double li = eig.eigenvalues(order[i]);
      const double lj = eig.eigenvalues(order[j]);
      if (std::abs(li + lj) <= 1e-9 * scale && std::abs(li) > 1e-12 * scale) {
        std::rotate(order.begin(), order.begin() + i, order.begin() + i + 1);
        std::rotate(order.begin() + 1, order.begin() + j, order.begin() + j + 1);
        if (eig.eigenvalues(order[0]) < 0.0) std::swap(order[0], order[1]);
        found = true;
        break;
      }
    }
    if (found) break;
  }

  EigenbasisMap map;
  map.u = CMat(d, d);
  map.h_diag = RVec(d);
  for (int i = 0; i < d; ++i) {
    map.u.col(i) = eig.eigenvectors.col(order[i]);
    map.h_diag(i) = eig.eigenvalues(order[i]);
  }
  return map;
}

Trajectory to_h_eigenbasis(const CMat& h, const Trajectory& traj) {
  traj.validate();
  if (!traj.states.empty() && traj.states.front().rows() != h.rows()) {
    throw std::invalid_argument("to_h_eigenbasis: dimension mismatch");
  }
  const EigenbasisMap map = h_eigenbasis(h);
  Trajectory out;
  out.times = traj.times;
  out.observables = traj.observables;
  out.states.reserve(traj.states.size());
  for (const auto& s : traj.states) {
    out.states.push_back(map.u.adjoint() * s * map.u);
  }
  return out;
}

WSeries extract_w(const Trajectory& traj) {
  traj.validate();
  if (traj.dim() != 3) {
    throw std::invalid_argument("extract_w: 3x3 trajectories only");
  }
  WSeries series;
  series.times = traj.times;
  series.w.reserve(traj.states.size());
  for (const auto& s : traj.states) {
    series.w.push_back(std::norm(s(0, 1)));
  }
  return series;
}

QuadFit fit_w_equation(const WSeries& series) {
  const int m = static_cast<int>(series.w.size());
  if (m < 7 || static_cast<int>(series.times.size()) != m) {
    throw std::invalid_argument("fit_w_equation: need >= 7 matched samples");
  }
  const double h = series.times[1] - series.times[0];
  for (int i = 1; i < m; ++i) {
    if (std::abs((series.times[i] - series.times[i - 1]) - h) > 1e-9 * std::abs(h)) {
      throw std::invalid_argument("fit_w_equation: grid must be uniform");
    }
  }

  const int interior = m - 4;
  Eigen::MatrixXd design(interior, 3);
  Eigen::VectorXd wdd(interior);
  const auto& w = series.w;
  for (int i = 2; i + 2 < m; ++i) {
    const int r = i - 2;
    wdd(r) = (-w[i - 2] + 16.0 * w[i - 1] - 30.0 * w[i] + 16.0 * w[i + 1] - w[i + 2]) /
             (12.0 * h * h);
    design(r, 0) = w[i] * w[i];
    design(r, 1) = w[i];
    design(r, 2) = 1.0;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  QuadFit fit;
  if (qr.rank() < 3) {
    fit.degenerate = true;
    return fit;
  }
  const Eigen::Vector3d coeffs = qr.solve(wdd);
  fit.a = coeffs(0);
  fit.b = coeffs(1);
  fit.c = coeffs(2);
  fit.residual = (design * coeffs - wdd).cwiseAbs().maxCoeff();
  return fit;
}

double jacobi_sn(double u, double k) {
  if (!(k >= 0.0 && k <= 1.0)) {
    throw std::invalid_argument("jacobi_sn: modulus k must lie in [0, 1]");
  }
  if (k == 0.0) return std::sin(u);
  if (k == 1.0) return std::tanh(u);

  // Descending Landen transformation via the arithmetic-geometric mean.
  constexpr int kMaxIter = 32;
  double a[kMaxIter + 1], c[kMaxIter + 1];
  a[0] = 1.0;
  c[0] = k;
  double b = std::sqrt(1.0 - k * k);
  int n = 0;
  while (n < kMaxIter && std::abs(c[n]) > 1e-17 * a[n]) {
    const double an = 0.5 * (a[n] + b);
    const double cn = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
    a[n] = an;
    c[n] = cn;
  }

  double phi = std::ldexp(1.0, n) * a[n] * u;
  for (int i = n; i >= 1; --i) {
    const double s = std::clamp(c[i] / a[i] * std::sin(phi), -1.0, 1.0);
    phi = 0.5 * (phi + std::asin(s));
  }
  return std::sin(phi);
}

double complete_elliptic_k(double k) {
  if (!(k >= 0.0 && k <= 1.0)) {
    throw std::invalid_argument("complete_elliptic_k: modulus k must lie in [0, 1]");
  }
  if (k == 1.0) return std::numeric_limits<double>::infinity();
  double a = 1.0;
  double b = std::sqrt(1.0 - k * k);
  for (int i = 0; i < 64 && std::abs(a - b) > 2.0 * std::numeric_limits<double>::epsilon() * a;
       ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return M_PI / (2.0 * a);
}

K1Fit verify_k1_identification(const WSeries& series, double tolerance) {
  const int m = static_cast<int>(series.w.size());
  if (m < 8 || static_cast<int>(series.times.size()) != m) {
    throw std::invalid_argument("verify_k1_identification: need >= 8 matched samples");
  }
  K1Fit out;

  const auto [wmin_it, wmax_it] = std::minmax_element(series.w.begin(), series.w.end());
  const double wmin = *wmin_it;
  const double wmax = *wmax_it;
  if (wmax - wmin < 1e-15 * std::max(1.0, std::abs(wmax))) {
    out.degenerate = true;
    return out;
  }

  // Seeds: dip location, plateau amplitude, half-rise width.
  const double t_min = series.times[std::distance(series.w.begin(), wmin_it)];
  const double amp = wmax - wmin;
  double alpha0 = 1.0;
  const double half = wmin + 0.5 * amp;
  for (int i = 0; i < m; ++i) {
    if (series.w[i] >= half && std::abs(series.times[i] - t_min) > 1e-12) {
      // tanh²(α Δ) = 1/2  =>  α Δ = atanh(1/√2)
      alpha0 = 0.881373587019543 / std::abs(series.times[i] - t_min);
      break;
    }
  }

  const auto residual = [&](const Eigen::VectorXd& p) {
    // p = (alpha, inv_beta, gamma, t0)
    Eigen::VectorXd r(m);
    for (int i = 0; i < m; ++i) {
      const double th = std::tanh(p(0) * (series.times[i] - p(3)));
      r(i) = p(1) * th * th + p(2) - series.w[i];
    }
    return r;
  };

  Eigen::VectorXd x0(4);
  x0 << alpha0, amp, wmin, t_min;
  const fit::LMResult lm = fit::levenberg_marquardt(residual, x0);

  out.alpha = lm.params(0);
  out.beta = lm.params(1) != 0.0 ? 1.0 / lm.params(1) : std::numeric_limits<double>::infinity();
  out.gamma = lm.params(2);
  out.t0 = lm.params(3);
  out.misfit = lm.max_abs_residual;
  out.converged = lm.converged;
  out.pass = lm.converged && out.misfit <= scaled(tolerance);
  return out;
}

}  // namespace vneq::elliptic

#include "vneq/linalg.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace vneq {

double tolerance_scale() {
  static const double scale = [] {
    const char* env = std::getenv("VN_TOLERANCE_SCALE");
    if (!env) return 1.0;
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end == env || !std::isfinite(v) || v <= 0.0) {
      throw std::runtime_error("VN_TOLERANCE_SCALE must be a finite positive number");
    }
    return v;
  }();
  return scale;
}

double scaled(double base_tol) { return base_tol * tolerance_scale(); }

void Trajectory::validate() const {
  if (times.size() != states.size()) {
    throw std::invalid_argument("trajectory: times and states differ in length");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw std::invalid_argument("trajectory: times must be strictly increasing");
    }
  }
  const int d = dim();
  for (const auto& s : states) {
    if (s.rows() != d || s.cols() != d) {
      throw std::invalid_argument("trajectory: states must share one square dimension");
    }
  }
  for (const auto& [name, series] : observables) {
    if (series.size() != times.size()) {
      throw std::invalid_argument("trajectory: observable '" + name + "' length mismatch");
    }
  }
}

Trajectory sample(const TrajectoryGen& gen, double t0, double t1, int n_samples) {
  if (n_samples < 2 || !(t1 > t0)) {
    throw std::invalid_argument("sample: need t1 > t0 and at least two samples");
  }
  Trajectory traj;
  traj.times.reserve(n_samples);
  traj.states.reserve(n_samples);
  const double h = (t1 - t0) / (n_samples - 1);
  for (int i = 0; i < n_samples; ++i) {
    const double t = (i == n_samples - 1) ? t1 : t0 + i * h;
    traj.times.push_back(t);
    traj.states.push_back(gen.eval(t));
  }
  return traj;
}

}  // namespace vneq

namespace vneq::linalg {

namespace {

void require_square(const CMat& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw std::invalid_argument(std::string(what) + ": matrix must be square, dim >= 1");
  }
}

void require_same_dim(const CMat& a, const CMat& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

}  // namespace

bool is_finite(const CMat& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

double max_norm(const CMat& m) {
  double v = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      v = std::max(v, std::abs(m(i, j)));
    }
  }
  return v;
}

CMat dagger(const CMat& m) { return m.adjoint(); }

CMat identity(int dim) { return CMat::Identity(dim, dim); }

bool is_hermitian(const CMat& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return max_norm(m - m.adjoint()) <= tolerance;
}

void require_hermitian(const CMat& m, const std::string& what, double tolerance) {
  require_square(m, what.c_str());
  if (!is_finite(m)) {
    throw std::invalid_argument(what + ": non-finite entries");
  }
  const double dev = max_norm(m - m.adjoint());
  if (dev > tolerance) {
    throw std::invalid_argument(what + ": not Hermitian (deviation " + std::to_string(dev) + ")");
  }
}

void require_density(const CMat& m, const std::string& what) {
  require_hermitian(m, what);
  const double tr_dev = std::abs(m.trace() - Complex(1.0, 0.0));
  if (tr_dev > scaled(tol::unit_trace)) {
    throw std::invalid_argument(what + ": trace differs from 1 by " + std::to_string(tr_dev));
  }
  const auto eig = herm_eig(m);
  if (eig.eigenvalues(0) < -scaled(tol::psd)) {
    throw std::invalid_argument(what + ": negative eigenvalue " +
                                std::to_string(eig.eigenvalues(0)));
  }
}

CMat mat_mul(const CMat& a, const CMat& b) {
  require_square(a, "mat_mul");
  require_same_dim(a, b, "mat_mul");
  return a * b;
}

CMat commutator(const CMat& a, const CMat& b) {
  require_square(a, "commutator");
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

CMat anticommutator(const CMat& a, const CMat& b) {
  require_square(a, "anticommutator");
  require_same_dim(a, b, "anticommutator");
  return a * b + b * a;
}

HermEig herm_eig(const CMat& m) {
  require_hermitian(m, "herm_eig");
  Eigen::SelfAdjointEigenSolver<CMat> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("herm_eig: eigensolver failed to converge");
  }
  return HermEig{solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<CVec> general_eigvec(const CMat& m, Complex z, double rank_tolerance) {
  require_square(m, "general_eigvec");
  const Eigen::Index d = m.rows();
  CMat shifted = m - z * CMat::Identity(d, d);
  Eigen::JacobiSVD<CMat> svd(shifted, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double cutoff = rank_tolerance * std::max(sigma.size() > 0 ? sigma(0) : 0.0, 1.0);
  std::vector<CVec> basis;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) <= cutoff) {
      basis.push_back(svd.matrixV().col(i));
    }
  }
  return basis;
}

CMat matrix_exp(const CMat& m) {
  require_square(m, "matrix_exp");
  if (!is_finite(m)) {
    throw std::invalid_argument("matrix_exp: non-finite entries");
  }
  return m.exp();
}

CMat tensor_product(const CMat& a, const CMat& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

CMat hermitize(const CMat& m) { return 0.5 * (m + m.adjoint()); }

CMat pauli_x() {
  CMat s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

CMat pauli_y() {
  CMat s(2, 2);
  s << 0, Complex(0, -1), Complex(0, 1), 0;
  return s;
}

CMat pauli_z() {
  CMat s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

}  // namespace vneq::linalg

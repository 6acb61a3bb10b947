#include "vneq/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "vneq/linalg.hpp"

namespace vneq::dynamics {

using linalg::commutator;
using linalg::max_norm;

EquationFamily::EquationFamily(int family_index, CMat a_op) : n(family_index), a(std::move(a_op)) {
  if (n < 0) throw std::invalid_argument("equation family: n must be >= 0");
  linalg::require_hermitian(a, "equation family operator A");
  const Eigen::Index d = a.rows();
  powers_.reserve(static_cast<std::size_t>(n) + 2);
  powers_.push_back(CMat::Identity(d, d));
  for (int k = 1; k <= n + 1; ++k) {
    powers_.push_back(powers_.back() * a);
  }
}

PolynomialF::PolynomialF(double a, std::vector<double> f)
    : expansion_point(a), coeffs(std::move(f)) {
  if (coeffs.empty()) throw std::invalid_argument("polynomial f: empty coefficient list");
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw std::invalid_argument("polynomial f: non-finite coefficient");
  }
}

PolynomialF PolynomialF::pure_state_compatible(double a, std::vector<double> f) {
  PolynomialF p(a, std::move(f));
  const double f0 = p.eval_scalar(0.0);
  const double f1 = p.eval_scalar(1.0);
  if (std::abs(f0) > scaled(1e-12) || std::abs(f1 - 1.0) > scaled(1e-12)) {
    throw std::invalid_argument("polynomial f: pure-state compatibility needs f(0)=0, f(1)=1");
  }
  return p;
}

double PolynomialF::eval_scalar(double x) const {
  const double u = x - expansion_point;
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * u + *it;
  }
  return acc;
}

CMat PolynomialF::eval(const CMat& rho) const {
  const Eigen::Index d = rho.rows();
  const CMat u = rho - expansion_point * CMat::Identity(d, d);
  CMat acc = CMat::Zero(d, d);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * u + *it * CMat::Identity(d, d);
  }
  return acc;
}

CMat rhs_family(const EquationFamily& fam, const CMat& rho) {
  if (rho.rows() != fam.a.rows() || rho.cols() != fam.a.cols()) {
    throw std::invalid_argument("rhs_family: state dimension does not match A");
  }
  const Eigen::Index d = rho.rows();
  const int n = fam.n;
  CMat sum_primary = CMat::Zero(d, d);
  CMat sum_alternate = CMat::Zero(d, d);
  for (int k = 0; k <= n; ++k) {
    const CMat rho_ak = rho * fam.power(k);
    sum_primary += commutator(fam.power(n - k) * rho_ak, rho);
    sum_alternate += commutator(fam.power(n - k), rho_ak * rho);
  }
  const double mismatch = max_norm(sum_primary - sum_alternate);
  if (mismatch > scaled(1e-12) * std::max(1.0, max_norm(sum_primary))) {
    throw std::runtime_error("rhs_family: the two commutator forms disagree by " +
                             std::to_string(mismatch) + " (arithmetic bug)");
  }
  return Complex(0, -1) * sum_primary;
}

CMat rhs_fvn(const CMat& h, const CMat& rho, const PolynomialF& f) {
  if (h.rows() != rho.rows() || h.cols() != rho.cols()) {
    throw std::invalid_argument("rhs_fvn: dimension mismatch");
  }
  return Complex(0, -1) * commutator(h, f.eval(rho));
}

CMat effective_hamiltonian(const CMat& h, const CMat& rho, const PolynomialF& f) {
  if (h.rows() != rho.rows() || h.cols() != rho.cols()) {
    throw std::invalid_argument("effective_hamiltonian: dimension mismatch");
  }
  const Eigen::Index d = rho.rows();
  const CMat u = rho - f.expansion_point * CMat::Identity(d, d);

  // Powers u^0 .. u^{deg-1} feed the double sum directly.
  std::vector<CMat> u_pow;
  u_pow.push_back(CMat::Identity(d, d));
  for (int k = 1; k + 1 < static_cast<int>(f.coeffs.size()); ++k) {
    u_pow.push_back(u_pow.back() * u);
  }

  CMat result = CMat::Zero(d, d);
  for (int k = 1; k < static_cast<int>(f.coeffs.size()); ++k) {
    if (f.coeffs[k] == 0.0) continue;
    CMat inner = CMat::Zero(d, d);
    for (int m = 0; m <= k - 1; ++m) {
      inner += u_pow[k - 1 - m] * h * u_pow[m];
    }
    result += f.coeffs[k] * inner;
  }
  return result;
}

std::vector<double> casimirs(const CMat& rho, int max_power) {
  if (max_power < 1) throw std::invalid_argument("casimirs: max_power must be >= 1");
  std::vector<double> out;
  out.reserve(max_power);
  CMat p = rho;
  for (int k = 1; k <= max_power; ++k) {
    const Complex tr = p.trace();
    if (std::abs(tr.imag()) > scaled(1e-12) * std::max(1.0, std::abs(tr.real()))) {
      throw std::runtime_error("casimirs: Tr rho^" + std::to_string(k) +
                               " has imaginary part " + std::to_string(tr.imag()));
    }
    out.push_back(tr.real());
    if (k < max_power) p = p * rho;
  }
  return out;
}

double expectation(const CMat& obs, const CMat& rho) {
  if (obs.rows() != rho.rows() || obs.cols() != rho.cols()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  const Complex tr = (obs * rho).trace();
  if (std::abs(tr.imag()) > scaled(1e-10)) {
    throw std::runtime_error("expectation: imaginary part " + std::to_string(tr.imag()) +
                             " beyond tolerance");
  }
  return tr.real();
}

Spin1 spin1_matrices() {
  const Complex i(0, 1);
  Spin1 s{CMat::Zero(3, 3), CMat::Zero(3, 3), CMat::Zero(3, 3)};
  s.jx(1, 2) = i;
  s.jx(2, 1) = -i;
  s.jy(0, 2) = -i;
  s.jy(2, 0) = i;
  s.jz(0, 1) = i;
  s.jz(1, 0) = -i;
  return s;
}

Integration integrate_rk4(const EquationFamily& fam, const CMat& rho0, double t0, double t1,
                          double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("integrate_rk4: dt must be positive");
  if (!(t1 > t0)) throw std::invalid_argument("integrate_rk4: t1 must exceed t0");
  linalg::require_hermitian(rho0, "integrate_rk4 initial state", scaled(1e-10));

  const double span = t1 - t0;
  const long n_steps = std::max(1L, std::lround(span / dt));
  const double h = span / static_cast<double>(n_steps);

  Integration result;
  auto& traj = result.trajectory;
  traj.times.reserve(n_steps + 1);
  traj.states.reserve(n_steps + 1);

  const auto check_blowup = [&](const CMat& m, double t) {
    if (!linalg::is_finite(m) || max_norm(m) > 1e6) {
      throw std::runtime_error("integrate_rk4: state blew up at t = " + std::to_string(t) +
                               " (max entry " + std::to_string(max_norm(m)) + ")");
    }
  };

  std::vector<double> c0 = casimirs(rho0, 3);
  CMat rho = rho0;
  traj.times.push_back(t0);
  traj.states.push_back(rho);

  for (long step = 0; step < n_steps; ++step) {
    const double t = t0 + h * static_cast<double>(step);
    const CMat k1 = rhs_family(fam, rho);
    const CMat k2 = rhs_family(fam, rho + 0.5 * h * k1);
    const CMat k3 = rhs_family(fam, rho + 0.5 * h * k2);
    const CMat k4 = rhs_family(fam, rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho = linalg::hermitize(rho);  // projection applied after the full step only
    check_blowup(rho, t + h);

    traj.times.push_back((step + 1 == n_steps) ? t1 : t + h);
    traj.states.push_back(rho);

    const std::vector<double> c = casimirs(rho, 3);
    for (int p = 0; p < 3; ++p) {
      result.casimir_drift[p] = std::max(result.casimir_drift[p], std::abs(c[p] - c0[p]));
    }
  }
  return result;
}

}  // namespace vneq::dynamics

#include "vneq/darboux.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "vneq/linalg.hpp"

namespace vneq::darboux {

using linalg::commutator;
using linalg::max_norm;

LaxEigenpair make_lax_eigenpair(const CMat& rho0, const CMat& a, Complex mu, Complex z,
                                CVec phi0, double tolerance) {
  if (rho0.rows() != a.rows() || phi0.size() != rho0.rows()) {
    throw std::invalid_argument("lax eigenpair: dimension mismatch");
  }
  const double norm = phi0.norm();
  if (norm <= 0.0 || !std::isfinite(norm)) {
    throw std::invalid_argument("lax eigenpair: zero or non-finite eigenvector");
  }
  phi0 /= norm;
  const CMat op = rho0 - mu * a;
  const double residual = (op * phi0 - z * phi0).norm();
  if (residual > tolerance) {
    throw std::invalid_argument("lax eigenpair: spatial residual " + std::to_string(residual) +
                                " exceeds tolerance");
  }
  return LaxEigenpair{mu, z, std::move(phi0)};
}

std::vector<Complex> lax_spectrum(const CMat& rho, const CMat& a, Complex mu, double merge_tol) {
  if (rho.rows() != a.rows()) throw std::invalid_argument("lax_spectrum: dimension mismatch");
  Eigen::ComplexEigenSolver<CMat> solver(rho - mu * a);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("lax_spectrum: eigensolver failed");
  }
  std::vector<Complex> values;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const Complex z = solver.eigenvalues()(i);
    const bool seen = std::any_of(values.begin(), values.end(),
                                  [&](Complex w) { return std::abs(w - z) <= merge_tol; });
    if (!seen) values.push_back(z);
  }
  std::sort(values.begin(), values.end(), [](Complex l, Complex r) {
    return l.real() != r.real() ? l.real() < r.real() : l.imag() < r.imag();
  });
  return values;
}

CVec equal_weight_combination(const std::vector<CVec>& basis) {
  if (basis.empty()) throw std::invalid_argument("equal_weight_combination: empty basis");
  CVec sum = basis.front();
  for (std::size_t i = 1; i < basis.size(); ++i) sum += basis[i];
  const double norm = sum.norm();
  if (norm < 1e-12) {
    throw std::invalid_argument("equal_weight_combination: basis sums to zero");
  }
  return sum / norm;
}

DarbouxConfig DarbouxConfig::hermitian(Complex mu) {
  return DarbouxConfig{mu, std::conj(mu), true};
}

DarbouxConfig DarbouxConfig::general(Complex mu, Complex nu) {
  return DarbouxConfig{mu, nu, false};
}

LaxResiduals lax_residuals(const CMat& a, const CMat& rho_t, const LaxEigenpair& pair, int n,
                           const std::function<CVec(double)>& phi_of_t, double t,
                           double fd_step) {
  if (!phi_of_t) {
    throw std::invalid_argument("lax_residuals: no propagator registered for this seed type");
  }
  const CVec phi = phi_of_t(t);
  const double spatial = ((rho_t - pair.mu * a) * phi - pair.z * phi).norm();

  dynamics::EquationFamily fam(n, a);
  const Eigen::Index d = a.rows();
  CMat temporal_op = CMat::Zero(d, d);
  for (int k = 0; k <= n; ++k) {
    temporal_op += fam.power(n - k) * rho_t * fam.power(k);
  }
  temporal_op -= pair.mu * fam.power(n + 1);

  const CVec dphi = (phi_of_t(t + fd_step) - phi_of_t(t - fd_step)) / (2.0 * fd_step);
  const double temporal = (Complex(0, 1) * dphi - temporal_op * phi).norm();
  return LaxResiduals{spatial, temporal};
}

CMat projector(const CVec& phi, const CVec& chi) {
  if (phi.size() != chi.size()) throw std::invalid_argument("projector: dimension mismatch");
  const Complex overlap = chi.dot(phi);  // ⟨χ|φ⟩
  if (std::abs(overlap) <= 1e-10 * phi.norm() * chi.norm()) {
    throw std::invalid_argument("projector: ⟨χ|φ⟩ nearly zero, transformation singular");
  }
  return (phi * chi.adjoint()) / overlap;
}

CMat darboux_rho(const CMat& rho, const CMat& a, const CMat& p, const DarbouxConfig& cfg) {
  if (rho.rows() != a.rows() || rho.rows() != p.rows()) {
    throw std::invalid_argument("darboux_rho: dimension mismatch");
  }
  const double idem = max_norm(p * p - p);
  if (idem > scaled(1e-10)) {
    throw std::invalid_argument("darboux_rho: projector not idempotent (deviation " +
                                std::to_string(idem) + ")");
  }
  CMat dressed = rho + (cfg.mu - cfg.nu) * commutator(p, a);
  if (cfg.hermitian_mode) {
    const double dev = max_norm(dressed - dressed.adjoint());
    if (dev > scaled(1e-10)) {
      throw std::runtime_error("darboux_rho: hermiticity lost (deviation " +
                               std::to_string(dev) + "); projector inconsistent with mode");
    }
    dressed = linalg::hermitize(dressed);
  }
  return dressed;
}

CMat similarity_T(const CMat& p, const DarbouxConfig& cfg) {
  if (cfg.nu == Complex(0, 0) || cfg.mu == Complex(0, 0)) {
    throw std::invalid_argument("similarity_T: mu and nu must be nonzero");
  }
  const Eigen::Index d = p.rows();
  const CMat rational = CMat::Identity(d, d) + ((cfg.mu - cfg.nu) / cfg.nu) * p;
  const CMat exponential = linalg::matrix_exp(p * std::log(cfg.mu / cfg.nu));
  const double dev = max_norm(rational - exponential);
  if (dev > scaled(1e-10) * std::max(1.0, max_norm(rational))) {
    throw std::runtime_error("similarity_T: rational and exponential forms disagree by " +
                             std::to_string(dev));
  }
  return rational;
}

CMat similarity_T_inverse(const CMat& p, const DarbouxConfig& cfg) {
  if (cfg.nu == Complex(0, 0) || cfg.mu == Complex(0, 0)) {
    throw std::invalid_argument("similarity_T_inverse: mu and nu must be nonzero");
  }
  const Eigen::Index d = p.rows();
  return CMat::Identity(d, d) + ((cfg.nu - cfg.mu) / cfg.mu) * p;
}

const CheckResult* ChainReport::find(const std::string& name) const {
  for (const auto& step : steps) {
    if (step.name == name) return &step;
  }
  return nullptr;
}

ChainReport verify_theorem1_chain(const CMat& rho, const CMat& a, const CVec& phi,
                                  const CVec& chi, const DarbouxConfig& cfg, double tolerance) {
  const Complex mu = cfg.mu;
  const Complex nu = cfg.nu;
  const Eigen::Index d = rho.rows();
  const CMat eye = CMat::Identity(d, d);

  ChainReport report;
  const auto add = [&](const std::string& name, double residual) {
    const bool ok = residual <= tolerance;
    report.steps.push_back({name, residual, tolerance, ok});
    report.pass = report.pass && ok;
  };

  // Eigenvalues implied by the hypotheses, via Rayleigh quotients.
  const CMat op_mu = rho - mu * a;
  const CMat op_nu = rho - nu * a;
  const Complex z_mu = phi.dot(op_mu * phi) / phi.dot(phi);
  const Complex z_nu = (op_nu.adjoint() * chi).dot(chi) / chi.dot(chi);

  add("ket eigenvector: (rho - mu A) phi = z_mu phi", (op_mu * phi - z_mu * phi).norm());
  add("bra eigenvector: chi' (rho - nu A) = z_nu chi'",
      (chi.adjoint() * op_nu - z_nu * chi.adjoint()).norm());

  const CMat p = projector(phi, chi);
  add("projector idempotency: P^2 = P", max_norm(p * p - p));
  add("left action: z_mu P = (rho - mu A) P", max_norm(z_mu * p - op_mu * p));
  add("right action: z_nu P = P (rho - nu A)", max_norm(z_nu * p - p * op_nu));
  add("sandwich left: P(rho - mu A)P = (rho - mu A)P", max_norm(p * op_mu * p - op_mu * p));
  add("sandwich right: P(rho - nu A)P = P(rho - nu A)", max_norm(p * op_nu * p - p * op_nu));

  const CMat pa_identity =
      ((nu - mu) / (mu * nu)) * (p * rho * p) - (1.0 / mu) * (rho * p) + (1.0 / nu) * (p * rho);
  add("[P,A] expression", max_norm(commutator(p, a) - pa_identity));

  const CMat dressed = rho + (mu - nu) * commutator(p, a);
  const CMat factorized =
      (eye + ((mu - nu) / nu) * p) * rho * (eye + ((nu - mu) / mu) * p);
  add("factorized form: rho[1] = T rho T^{-1}", max_norm(dressed - factorized));

  return report;
}

namespace {

CMat shift_phase(const linalg::HermEig& gen_eig, double t) {
  // exp(-i G t) for Hermitian G supplied as its eigendecomposition.
  const Eigen::Index d = gen_eig.eigenvalues.size();
  CVec phases(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    phases(i) = std::exp(Complex(0, -gen_eig.eigenvalues(i) * t));
  }
  return gen_eig.eigenvectors * phases.asDiagonal() * gen_eig.eigenvectors.adjoint();
}

CMat shift_generator_matrix(const CMat& x, const dynamics::EquationFamily& fam) {
  // (n+1) X A^n; Hermitian because X commutes with A.
  return static_cast<double>(fam.n + 1) * x * fam.power(fam.n);
}

}  // namespace

Trajectory shift_solution(const Trajectory& traj, const CMat& x,
                          const dynamics::EquationFamily& fam) {
  traj.validate();
  if (x.rows() != fam.a.rows()) throw std::invalid_argument("shift_solution: dimension mismatch");
  if (max_norm(commutator(x, fam.a)) > scaled(1e-10)) {
    throw std::invalid_argument("shift_solution: X does not commute with A");
  }
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    if (max_norm(commutator(x, traj.states[i])) > scaled(1e-10)) {
      throw std::invalid_argument("shift_solution: X does not commute with rho(t) at t = " +
                                  std::to_string(traj.times[i]));
    }
  }
  const CMat gen = shift_generator_matrix(x, fam);
  const auto gen_eig = linalg::herm_eig(gen);

  Trajectory out;
  out.times = traj.times;
  out.states.reserve(traj.states.size());
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const CMat u = shift_phase(gen_eig, traj.times[i]);
    out.states.push_back(u * (traj.states[i] + x) * u.adjoint());
  }
  return out;
}

TrajectoryGen shift_generator(const TrajectoryGen& gen, const CMat& x,
                              const dynamics::EquationFamily& fam) {
  if (x.rows() != fam.a.rows()) {
    throw std::invalid_argument("shift_generator: dimension mismatch");
  }
  if (max_norm(commutator(x, fam.a)) > scaled(1e-10)) {
    throw std::invalid_argument("shift_generator: X does not commute with A");
  }
  const auto gen_eig = linalg::herm_eig(shift_generator_matrix(x, fam));
  const CMat x_copy = x;
  auto inner = gen.eval;
  return TrajectoryGen{gen.dim, [gen_eig, x_copy, inner](double t) {
                         const CMat u = shift_phase(gen_eig, t);
                         return CMat(u * (inner(t) + x_copy) * u.adjoint());
                       }};
}

TrajectoryGen rescale_solution(const TrajectoryGen& gen, double y) {
  if (y == 0.0 || !std::isfinite(y)) {
    throw std::invalid_argument("rescale_solution: Y must be real and nonzero");
  }
  auto inner = gen.eval;
  return TrajectoryGen{gen.dim, [inner, y](double t) { return CMat(y * inner(y * t)); }};
}

}  // namespace vneq::darboux

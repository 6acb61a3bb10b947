#include "vneq/seeds.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vneq/linalg.hpp"

namespace vneq::seeds {

using linalg::commutator;
using linalg::herm_eig;
using linalg::max_norm;

namespace {

constexpr double kSupportEps = 1e-14;

/// 1/(1 + e^x) without overflow on either side.
double logistic_decay(double x) {
  if (x > 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

/// 1/cosh(x) without overflow.
double sech(double x) {
  const double e = std::exp(-std::abs(x));
  return 2.0 * e / (1.0 + e * e);
}

}  // namespace

QuadraticRoots solve_quadratic_diag(double a, double x0) {
  const double disc = a * a + 4.0 * x0;
  if (disc < 0.0) {
    throw std::invalid_argument(
        "solve_quadratic_diag: negative discriminant, no real diagonal pair for this (a, x0)");
  }
  const double root = std::sqrt(disc);
  return QuadraticRoots{(a + root) / 2.0, (a - root) / 2.0, disc == 0.0};
}

Strategy1Seed Strategy1Seed::create(CMat h, CMat xi0, double a) {
  linalg::require_hermitian(h, "strategy-1 Hamiltonian");
  linalg::require_hermitian(xi0, "strategy-1 seed xi0");
  if (h.rows() != xi0.rows()) throw std::invalid_argument("strategy-1 seed: dimension mismatch");

  CMat delta = xi0 * xi0 - a * xi0;
  if (max_norm(commutator(h, delta)) > scaled(1e-12)) {
    throw std::invalid_argument("strategy-1 seed: xi0^2 - a*xi0 does not commute with H");
  }
  const Eigen::Index d = h.rows();
  const Complex mean = delta.trace() / static_cast<double>(d);
  if (max_norm(delta - mean * CMat::Identity(d, d)) <= scaled(1e-12)) {
    throw std::invalid_argument(
        "strategy-1 seed: xi0^2 - a*xi0 is a multiple of the identity (dressing trivial)");
  }
  if (max_norm(commutator(h, xi0)) <= scaled(1e-12)) {
    throw std::invalid_argument("strategy-1 seed: [H, xi0] = 0, seed is stationary");
  }
  return Strategy1Seed{std::move(h), std::move(xi0), a, std::move(delta)};
}

namespace {

void check_strategy1_preconditions(const Strategy1Seed& seed, Complex mu, const CVec& phi0) {
  if (mu.imag() == 0.0) {
    throw std::invalid_argument("strategy-1 dressing: Im mu = 0 makes the transformation trivial");
  }
  if (phi0.size() != seed.h.rows()) {
    throw std::invalid_argument("strategy-1 dressing: eigenvector dimension mismatch");
  }
  const CVec phi = phi0.normalized();
  const CMat lax_op = seed.xi0 - mu * seed.h;
  const Complex z = phi.dot(lax_op * phi);
  if ((lax_op * phi - z * phi).norm() > scaled(1e-8)) {
    throw std::invalid_argument("strategy-1 dressing: phi0 is not an eigenvector of xi0 - mu*H");
  }
  const Complex dval = phi.dot(seed.delta * phi);
  const double delta_residual = (seed.delta * phi - dval * phi).norm();
  if (delta_residual <= scaled(1e-8) * std::max(1.0, max_norm(seed.delta))) {
    throw std::invalid_argument(
        "strategy-1 dressing: phi0 is an eigenvector of Delta_a, the internal part would be "
        "time-independent");
  }
}

struct Strategy1Evaluator {
  CMat xi0;
  Complex mu;
  double a;
  // Delta eigenbasis data
  RVec d_vals;
  CMat vd;
  CVec phi_tilde;            // V† φ₀
  CMat k_tilde;              // [φ̃φ̃†, H̃] in the Delta eigenbasis
  std::vector<bool> in_support;
  // H eigenbasis data for the outer conjugation
  RVec h_vals;
  CMat vh;

  static Strategy1Evaluator build(const Strategy1Seed& seed, Complex mu, const CVec& phi0) {
    Strategy1Evaluator ev;
    ev.xi0 = seed.xi0;
    ev.mu = mu;
    ev.a = seed.a;
    const auto de = herm_eig(seed.delta);
    ev.d_vals = de.eigenvalues;
    ev.vd = de.eigenvectors;
    ev.phi_tilde = ev.vd.adjoint() * phi0.normalized();
    const CMat h_tilde = ev.vd.adjoint() * seed.h * ev.vd;
    ev.k_tilde = commutator(ev.phi_tilde * ev.phi_tilde.adjoint(), h_tilde);
    const double phimax = ev.phi_tilde.cwiseAbs().maxCoeff();
    ev.in_support.resize(ev.phi_tilde.size());
    for (Eigen::Index i = 0; i < ev.phi_tilde.size(); ++i) {
      ev.in_support[i] = std::abs(ev.phi_tilde(i)) > kSupportEps * phimax;
    }
    const auto he = herm_eig(seed.h);
    ev.h_vals = he.eigenvalues;
    ev.vh = he.eigenvectors;
    return ev;
  }

  CMat operator()(double t) const {
    const Eigen::Index d = xi0.rows();
    const double p = mu.real();
    const double q = mu.imag();
    const double m2 = std::norm(mu);

    // Magnitude exponents s·d_i with s = -Im(mu)·t/|mu|²; everything is
    // referenced to the largest exponent carried by φ₀'s support so the
    // rescaled normalization F̃ stays O(1).
    const double s = -q * t / m2;
    double shift = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < d; ++i) {
      if (in_support[i]) shift = std::max(shift, s * d_vals(i));
    }

    double f_tilde = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
      f_tilde += std::norm(phi_tilde(i)) * std::exp(2.0 * (s * d_vals(i) - shift));
    }
    if (std::abs(f_tilde) < scaled(1e-12)) {
      throw std::runtime_error("strategy-1 dressing: normalization F_a(t) is singular at t = " +
                               std::to_string(t));
    }

    CMat middle(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        const double mag = std::exp(s * (d_vals(i) + d_vals(j)) - 2.0 * shift);
        const Complex phase =
            std::exp(Complex(0, -p * d_vals(i) * t / m2)) * std::exp(Complex(0, p * d_vals(j) * t / m2));
        middle(i, j) = mag * phase * k_tilde(i, j);
      }
    }

    const CMat inner = xi0 + (mu - std::conj(mu)) * (vd * (middle / f_tilde) * vd.adjoint());

    CVec phases(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      phases(i) = std::exp(Complex(0, -a * h_vals(i) * t));
    }
    const CMat u = vh * phases.asDiagonal() * vh.adjoint();
    CMat out = u * inner * u.adjoint();

    const double herm_dev = max_norm(out - out.adjoint());
    if (herm_dev > scaled(1e-10)) {
      throw std::runtime_error("strategy-1 dressing: output lost hermiticity (deviation " +
                               std::to_string(herm_dev) + ")");
    }
    return out;
  }
};

}  // namespace

CMat dressed_strategy1(const Strategy1Seed& seed, Complex mu, const CVec& phi0, double t) {
  check_strategy1_preconditions(seed, mu, phi0);
  return Strategy1Evaluator::build(seed, mu, phi0)(t);
}

TrajectoryGen dressed_strategy1_full(const Strategy1Seed& seed, Complex mu, const CVec& phi0) {
  check_strategy1_preconditions(seed, mu, phi0);
  auto ev = Strategy1Evaluator::build(seed, mu, phi0);
  const int d = static_cast<int>(seed.h.rows());
  return TrajectoryGen{d, [ev](double t) { return ev(t); }};
}

std::function<CVec(double)> strategy1_lax_vector(const Strategy1Seed& seed, Complex mu,
                                                 const CVec& phi0) {
  check_strategy1_preconditions(seed, mu, phi0);
  const CVec phi = phi0.normalized();
  const CMat lax_op = seed.xi0 - mu * seed.h;
  const Complex z = phi.dot(lax_op * phi);
  const Complex theta = -z * (z - seed.a) / mu;

  const auto de = herm_eig(seed.delta);
  const auto he = herm_eig(seed.h);
  const CVec phi_delta = de.eigenvectors.adjoint() * phi;
  const double a = seed.a;

  return [=](double t) -> CVec {
    const Eigen::Index d = phi.size();
    CVec v(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      v(i) = std::exp(Complex(0, -1) / mu * de.eigenvalues(i) * t) * phi_delta(i);
    }
    CVec w = de.eigenvectors * v;
    CVec w_h = he.eigenvectors.adjoint() * w;
    for (Eigen::Index i = 0; i < d; ++i) {
      w_h(i) *= std::exp(Complex(0, -a * he.eigenvalues(i) * t));
    }
    return std::exp(Complex(0, -1) * theta * t) * (he.eigenvectors * w_h);
  };
}

Strategy2Seed Strategy2Seed::create(CMat a, CMat xi, int n) {
  linalg::require_hermitian(a, "strategy-2 operator A");
  linalg::require_hermitian(xi, "strategy-2 seed xi");
  if (a.rows() != xi.rows()) throw std::invalid_argument("strategy-2 seed: dimension mismatch");
  if (n < 1) throw std::invalid_argument("strategy-2 seed: family index n must be >= 1");
  if (max_norm(a * xi + xi * a) > scaled(1e-12)) {
    throw std::invalid_argument("strategy-2 seed: A xi + xi A != 0");
  }
  return Strategy2Seed{std::move(a), std::move(xi), n};
}

namespace {

CVec propagate_spectral(const CVec& phi0, const linalg::HermEig& gen, Complex exponent_scale,
                        double t) {
  // e^{exponent_scale * G * t} φ₀ for Hermitian G.
  CVec v = gen.eigenvectors.adjoint() * phi0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v(i) *= std::exp(exponent_scale * gen.eigenvalues(i) * t);
  }
  return gen.eigenvectors * v;
}

CVec propagate_spectral_rescaled(const CVec& phi0, const linalg::HermEig& gen,
                                 Complex exponent_scale, double t) {
  // Same flow with the dominant growth factor divided out; valid wherever the
  // result only feeds scale-invariant expressions such as P(t).
  CVec v = gen.eigenvectors.adjoint() * phi0;
  const double vmax = v.cwiseAbs().maxCoeff();
  double shift = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > kSupportEps * vmax) {
      shift = std::max(shift, (exponent_scale * gen.eigenvalues(i)).real() * t);
    }
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Complex e = exponent_scale * gen.eigenvalues(i) * t;
    v(i) *= std::exp(e - shift);
  }
  return gen.eigenvectors * v;
}

struct Strategy2Evaluator {
  CMat a;
  CMat xi;
  Complex mu;
  linalg::HermEig gen;     // eigendecomposition of A^n (even) or A^{n+1} (odd)
  Complex exponent_scale;  // -i z (even) or +i mu (odd)
  CVec phi0;

  static Strategy2Evaluator build(const Strategy2Seed& seed, Complex mu, const CVec& phi0) {
    if (mu.imag() == 0.0) {
      throw std::invalid_argument(
          "strategy-2 dressing: Im mu = 0 makes the transformation trivial");
    }
    if (phi0.size() != seed.a.rows()) {
      throw std::invalid_argument("strategy-2 dressing: eigenvector dimension mismatch");
    }
    const CVec phi = phi0.normalized();
    const CMat lax_op = seed.xi - mu * seed.a;
    const Complex z = phi.dot(lax_op * phi);
    if ((lax_op * phi - z * phi).norm() > scaled(1e-8)) {
      throw std::invalid_argument("strategy-2 dressing: phi0 is not an eigenvector of xi - mu*A");
    }

    dynamics::EquationFamily fam(seed.n, seed.a);
    Strategy2Evaluator ev;
    ev.a = seed.a;
    ev.xi = seed.xi;
    ev.mu = mu;
    ev.phi0 = phi;
    if (seed.n % 2 == 0) {
      ev.gen = herm_eig(fam.power(seed.n));
      ev.exponent_scale = Complex(0, -1) * z;
    } else {
      ev.gen = herm_eig(fam.power(seed.n + 1));
      ev.exponent_scale = Complex(0, 1) * mu;
    }
    return ev;
  }

  CMat operator()(double t) const {
    const CVec phi = propagate_spectral_rescaled(phi0, gen, exponent_scale, t);
    const double nrm2 = phi.squaredNorm();
    if (nrm2 < scaled(1e-12)) {
      throw std::runtime_error("strategy-2 dressing: <phi(t)|phi(t)> degenerated at t = " +
                               std::to_string(t));
    }
    const CMat p = (phi * phi.adjoint()) / nrm2;
    CMat out = xi + (mu - std::conj(mu)) * commutator(p, a);
    const double herm_dev = max_norm(out - out.adjoint());
    if (herm_dev > scaled(1e-10)) {
      throw std::runtime_error("strategy-2 dressing: output lost hermiticity (deviation " +
                               std::to_string(herm_dev) + ")");
    }
    return out;
  }
};

}  // namespace

CVec propagate_phi_even(const CVec& phi0, const CMat& a, int n, Complex z, double t) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("propagate_phi_even: n must be even and >= 2");
  }
  dynamics::EquationFamily fam(n, a);
  return propagate_spectral(phi0, herm_eig(fam.power(n)), Complex(0, -1) * z, t);
}

CVec propagate_phi_odd(const CVec& phi0, const CMat& a, int n, Complex mu, double t) {
  if (n < 1 || n % 2 != 1) {
    throw std::invalid_argument("propagate_phi_odd: n must be odd and >= 1");
  }
  dynamics::EquationFamily fam(n, a);
  return propagate_spectral(phi0, herm_eig(fam.power(n + 1)), Complex(0, 1) * mu, t);
}

CMat dressed_strategy2(const Strategy2Seed& seed, Complex mu, const CVec& phi0, double t) {
  return Strategy2Evaluator::build(seed, mu, phi0)(t);
}

TrajectoryGen dressed_strategy2_full(const Strategy2Seed& seed, Complex mu, const CVec& phi0) {
  auto ev = Strategy2Evaluator::build(seed, mu, phi0);
  const int d = static_cast<int>(seed.a.rows());
  return TrajectoryGen{d, [ev](double t) { return ev(t); }};
}

std::function<CVec(double)> strategy2_lax_vector(const Strategy2Seed& seed, Complex mu,
                                                 const CVec& phi0) {
  auto ev = Strategy2Evaluator::build(seed, mu, phi0);
  return [ev](double t) { return propagate_spectral(ev.phi0, ev.gen, ev.exponent_scale, t); };
}

// ---------------------------------------------------------------------------
// Worked examples
// ---------------------------------------------------------------------------

CMat Example3x3::corotating_part(double t) const {
  const double s2 = std::sqrt(2.0);
  const double lg = logistic_decay(t);  // 1/(1+e^t)
  const double sh = sech(t / 2.0);
  CMat m(3, 3);
  m(0, 0) = (1.0 + s2) / 2.0 - s2 * lg;
  m(0, 1) = 0.0;
  m(0, 2) = Complex(-1.0, -1.0) / (2.0 * s2) * sh;
  m(1, 0) = 0.0;
  m(1, 1) = (1.0 - s2) / 2.0 + s2 * lg;
  m(1, 2) = 0.5 * sh;
  m(2, 0) = Complex(-1.0, 1.0) / (2.0 * s2) * sh;
  m(2, 1) = 0.5 * sh;
  m(2, 2) = 0.5;
  return m;
}

namespace {

CMat conjugate_by_phase(const CMat& h, double factor, double t, const CMat& inner) {
  // e^{-i·factor·H·t} inner e^{+i·factor·H·t}
  const auto he = herm_eig(h);
  CVec phases(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    phases(i) = std::exp(Complex(0, -factor * he.eigenvalues(i) * t));
  }
  const CMat u = he.eigenvectors * phases.asDiagonal() * he.eigenvectors.adjoint();
  return u * inner * u.adjoint();
}

}  // namespace

TrajectoryGen strategy1_seed_evolution(const Strategy1Seed& seed) {
  const CMat h = seed.h;
  const CMat xi0 = seed.xi0;
  const double a = seed.a;
  return TrajectoryGen{static_cast<int>(h.rows()),
                       [h, xi0, a](double t) { return conjugate_by_phase(h, a, t, xi0); }};
}

CMat Example3x3::dressed(double t) const { return conjugate_by_phase(h, 1.0, t, corotating_part(t)); }

CMat Example3x3::normalized_corotating(double t) const {
  const double s2 = std::sqrt(2.0);
  const double lg = logistic_decay(s2 * t / 3.0);      // 1/(1+e^{√2 t/3})
  const double sh = sech(t / (3.0 * s2));
  CMat m(3, 3);
  m(0, 0) = s2 - s2 * lg;
  m(0, 1) = 0.0;
  m(0, 2) = Complex(-1.0, -1.0) / (2.0 * s2) * sh;
  m(1, 0) = 0.0;
  m(1, 1) = s2 * lg;
  m(1, 2) = 0.5 * sh;
  m(2, 0) = Complex(-1.0, 1.0) / (2.0 * s2) * sh;
  m(2, 1) = 0.5 * sh;
  m(2, 2) = s2 / 2.0;
  return (s2 / 3.0) * m;
}

CMat Example3x3::normalized(double t) const {
  return conjugate_by_phase(h, 2.0 / 3.0, t, normalized_corotating(t));
}

Strategy1Seed Example3x3::seed() const { return Strategy1Seed::create(h, xi0, a); }

dynamics::EquationFamily Example3x3::family() const { return dynamics::EquationFamily(1, h); }

TrajectoryGen Example3x3::generator() const { return dressed_strategy1_full(seed(), mu, phi0); }

TrajectoryGen Example3x3::normalized_generator() const {
  return darboux::rescale_solution(darboux::shift_generator(generator(), shift_x, family()),
                                   scale_y);
}

Example3x3 example3x3() {
  const double s2 = std::sqrt(2.0);
  Example3x3 ex;
  ex.h = CMat::Zero(3, 3);
  ex.h(0, 1) = 1.0;
  ex.h(1, 0) = 1.0;
  ex.h(2, 2) = 1.0 / s2;

  ex.xi0 = CMat::Zero(3, 3);
  ex.xi0(0, 0) = 0.5 + s2 / 2.0;
  ex.xi0(1, 1) = 0.5 - s2 / 2.0;
  ex.xi0(2, 2) = 0.5;

  ex.a = 1.0;
  ex.delta = CMat::Zero(3, 3);
  ex.delta(0, 0) = 0.25;
  ex.delta(1, 1) = 0.25;
  ex.delta(2, 2) = -0.25;

  ex.mu = Complex(0, 1);
  ex.z = Complex(0.5, -s2 / 2.0);  // (1 - i√2)/2

  ex.phi1 = CVec::Zero(3);
  ex.phi1(2) = 1.0;
  ex.phi2 = CVec::Zero(3);
  ex.phi2(0) = std::exp(Complex(0, M_PI / 4.0)) / s2;
  ex.phi2(1) = 1.0 / s2;
  ex.phi0 = (ex.phi1 + ex.phi2) / s2;

  ex.shift_x = ((s2 - 1.0) / 2.0) * CMat::Identity(3, 3);
  ex.scale_y = s2 / 3.0;
  return ex;
}

namespace {

/// (c0 + c4·e^{4t} + c8·e^{8t}) / (1 + e^{8t}), saturation-safe on both sides.
Complex expfrac(Complex c0, Complex c4, Complex c8, double t) {
  if (t > 0.0) {
    const double e4 = std::exp(-4.0 * t);
    const double e8 = e4 * e4;
    return (c0 * e8 + c4 * e4 + c8) / (e8 + 1.0);
  }
  const double e4 = std::exp(4.0 * t);
  const double e8 = e4 * e4;
  return (c0 + c4 * e4 + c8 * e8) / (1.0 + e8);
}

}  // namespace

CMat Example8x8::dressed(double t) const {
  const Complex i(0, 1);
  // Numerator coefficients (c0, c4, c8) for every entry, dressing the
  // anticommuting seed with mu = i.
  static const std::array<std::array<std::array<Complex, 3>, 8>, 8> coef = [] {
    const Complex I(0, 1);
    std::array<std::array<std::array<Complex, 3>, 8>, 8> c{};
    auto set = [&c](int r, int col, Complex c0, Complex c4, Complex c8) {
      c[r][col] = {c0, c4, c8};
    };
    set(0, 0, 1, 1, 0);  set(0, 1, 0, I, 0);   set(0, 2, 0, 0, 0);  set(0, 3, -1, 0, 0);
    set(0, 4, 0, -1, 1); set(0, 5, 0, -I, 0);  set(0, 6, 0, 0, 0);  set(0, 7, 0, 0, -1);
    set(1, 0, 0, -I, 0); set(1, 1, -1, 1, 0);  set(1, 2, 1, 0, 0);  set(1, 3, 0, 0, 0);
    set(1, 4, 0, I, 0);  set(1, 5, 0, -1, -1); set(1, 6, 0, 0, 1);  set(1, 7, 0, 0, 0);
    set(2, 0, 0, 0, 0);  set(2, 1, 1, 0, 0);   set(2, 2, -1, -1, 0); set(2, 3, 0, I, 0);
    set(2, 4, 0, 0, 0);  set(2, 5, 0, 0, 1);   set(2, 6, 0, 1, -1); set(2, 7, 0, -I, 0);
    set(3, 0, -1, 0, 0); set(3, 1, 0, 0, 0);   set(3, 2, 0, -I, 0); set(3, 3, 1, -1, 0);
    set(3, 4, 0, 0, -1); set(3, 5, 0, 0, 0);   set(3, 6, 0, I, 0);  set(3, 7, 0, 1, 1);
    set(4, 0, 0, -1, 1); set(4, 1, 0, -I, 0);  set(4, 2, 0, 0, 0);  set(4, 3, 0, 0, -1);
    set(4, 4, 1, 1, 0);  set(4, 5, 0, I, 0);   set(4, 6, 0, 0, 0);  set(4, 7, -1, 0, 0);
    set(5, 0, 0, I, 0);  set(5, 1, 0, -1, -1); set(5, 2, 0, 0, 1);  set(5, 3, 0, 0, 0);
    set(5, 4, 0, -I, 0); set(5, 5, -1, 1, 0);  set(5, 6, 1, 0, 0);  set(5, 7, 0, 0, 0);
    set(6, 0, 0, 0, 0);  set(6, 1, 0, 0, 1);   set(6, 2, 0, 1, -1); set(6, 3, 0, -I, 0);
    set(6, 4, 0, 0, 0);  set(6, 5, 1, 0, 0);   set(6, 6, -1, -1, 0); set(6, 7, 0, I, 0);
    set(7, 0, 0, 0, -1); set(7, 1, 0, 0, 0);   set(7, 2, 0, I, 0);  set(7, 3, 0, 1, 1);
    set(7, 4, -1, 0, 0); set(7, 5, 0, 0, 0);   set(7, 6, 0, -I, 0); set(7, 7, 1, -1, 0);
    return c;
  }();

  CMat m(8, 8);
  for (int r = 0; r < 8; ++r) {
    for (int col = 0; col < 8; ++col) {
      m(r, col) = expfrac(coef[r][col][0], coef[r][col][1], coef[r][col][2], t);
    }
  }
  return m;
}

Strategy2Seed Example8x8::seed() const { return Strategy2Seed::create(h, xi, 1); }

dynamics::EquationFamily Example8x8::family() const { return dynamics::EquationFamily(1, h); }

TrajectoryGen Example8x8::generator() const { return dressed_strategy2_full(seed(), mu, phi0); }

TrajectoryGen Example8x8::normalized_generator() const {
  const CMat shift = lambda_shift * CMat::Identity(8, 8);
  return darboux::rescale_solution(darboux::shift_generator(generator(), shift, family()),
                                   scale_y);
}

Example8x8 example8x8() {
  using linalg::pauli_x;
  using linalg::pauli_y;
  using linalg::pauli_z;
  using linalg::tensor_product;

  const CMat eye2 = CMat::Identity(2, 2);
  const CMat eye4 = CMat::Identity(4, 4);
  const CMat alpha1 = tensor_product(pauli_x(), pauli_x());
  const CMat alpha2 = tensor_product(pauli_x(), pauli_y());
  const CMat alpha3 = tensor_product(pauli_x(), pauli_z());

  Example8x8 ex;
  ex.h = tensor_product(alpha1, eye2) + tensor_product(eye4, pauli_x());
  ex.xi = tensor_product(alpha2, pauli_y()) + tensor_product(alpha3, pauli_z());
  ex.mu = Complex(0, 1);

  const Complex i(0, 1);
  CVec phi(8);
  phi << -i, 0, -1, 0, i, 0, 1, 0;  // ket conjugate to the row form
  ex.phi0 = phi;

  // The alpha convention is pinned by the closed-form dressed matrix: a wrong
  // representation fails these checks instead of propagating silently.
  if (max_norm(ex.xi * ex.h + ex.h * ex.xi) != 0.0) {
    throw std::logic_error("example8x8: seed does not anticommute with H exactly");
  }
  if (((ex.xi - ex.mu * ex.h) * ex.phi0).norm() > 1e-14) {
    throw std::logic_error("example8x8: phi0 is not annihilated by xi - iH");
  }
  const CMat generic = dressed_strategy2(ex.seed(), ex.mu, ex.phi0, 1.0);
  if (max_norm(generic - ex.dressed(1.0)) > 1e-12) {
    throw std::logic_error("example8x8: generic dressing disagrees with the closed form; "
                           "alpha-matrix representation is wrong");
  }
  return ex;
}

}  // namespace vneq::seeds

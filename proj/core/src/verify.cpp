#include "vneq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include "vneq/darboux.hpp"
#include "vneq/dynamics.hpp"
#include "vneq/elliptic.hpp"
#include "vneq/linalg.hpp"
#include "vneq/seeds.hpp"

namespace vneq::verify {

using linalg::commutator;
using linalg::max_norm;

void SuiteReport::add(const std::string& name, double value, double tolerance) {
  const bool ok = value <= tolerance;
  checks.push_back({name, value, tolerance, ok});
  pass = pass && ok;
}

namespace {

constexpr std::uint64_t kSeed = 0x5eedULL;

CMat random_hermitian(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> dist(0.0, 1.0);
  CMat g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      g(i, j) = Complex(dist(rng), dist(rng));
    }
  }
  CMat h = 0.5 * (g + g.adjoint());
  return h / std::max(1.0, max_norm(h));
}

/// Max-norm residual of d/dt gen(t) = rhs_family(gen(t)) over a uniform grid,
/// derivative by central differences.
double equation_residual(const TrajectoryGen& gen, const dynamics::EquationFamily& fam,
                         double t0, double t1, int points, double fd_step = 1e-5) {
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    const double t = t0 + (t1 - t0) * i / (points - 1);
    const CMat deriv = (gen.eval(t + fd_step) - gen.eval(t - fd_step)) / (2.0 * fd_step);
    worst = std::max(worst, max_norm(deriv - dynamics::rhs_family(fam, gen.eval(t))));
  }
  return worst;
}

double spectrum_constancy(const TrajectoryGen& gen, const std::vector<double>& ts) {
  RVec ref;
  double worst = 0.0;
  for (double t : ts) {
    const RVec eig = linalg::herm_eig(linalg::hermitize(gen.eval(t))).eigenvalues;
    if (ref.size() == 0) {
      ref = eig;
    } else {
      worst = std::max(worst, (eig - ref).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

std::vector<Complex> sorted_complex_spectrum(const CMat& m) {
  Eigen::ComplexEigenSolver<CMat> solver(m);
  std::vector<Complex> v(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(v.begin(), v.end(), [](Complex l, Complex r) {
    return l.real() != r.real() ? l.real() < r.real() : l.imag() < r.imag();
  });
  return v;
}

void chain_checks(SuiteReport& report, const std::string& prefix, const CMat& rho, const CMat& a,
                  const CVec& phi, const CVec& chi, const darboux::DarbouxConfig& cfg) {
  const auto chain = darboux::verify_theorem1_chain(rho, a, phi, chi, cfg);
  for (const auto& step : chain.steps) {
    report.add(prefix + ": " + step.name, step.residual, step.tolerance);
  }
}

}  // namespace

SuiteReport run_theorem1(const FaultInjection& fault) {
  SuiteReport report{"theorem1", {}, true};

  // 3x3 fixture.
  {
    const auto ex = seeds::example3x3();
    CVec phi = ex.phi0;
    if (fault.corrupt_projector) {
      phi(0) += 0.25;  // no longer a Lax eigenvector
    }
    const auto cfg = darboux::DarbouxConfig::hermitian(ex.mu);
    chain_checks(report, "3x3 proof chain", ex.xi0, ex.h, phi, phi, cfg);

    const CMat p = darboux::projector(phi, phi);
    const CMat dressed = ex.xi0 + (cfg.mu - cfg.nu) * commutator(p, ex.h);
    const CMat t_mat = darboux::similarity_T(p, cfg);
    const CMat t_inv = darboux::similarity_T_inverse(p, cfg);
    report.add("3x3 dressing equals similarity transform",
               max_norm(dressed - t_mat * ex.xi0 * t_inv), scaled(1e-10));
    report.add("3x3 T T^{-1} = 1", max_norm(t_mat * t_inv - CMat::Identity(3, 3)),
               scaled(1e-12));
  }

  // 8x8 fixture.
  {
    const auto ex = seeds::example8x8();
    const auto cfg = darboux::DarbouxConfig::hermitian(ex.mu);
    chain_checks(report, "8x8 proof chain", ex.xi, ex.h, ex.phi0, ex.phi0, cfg);
  }

  // Randomized valid seeds, hermitian and general mode.
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<int> dim_dist(2, 6);
  std::uniform_real_distribution<double> real_dist(-1.0, 1.0);
  double worst_similarity = 0.0;
  double worst_spectrum = 0.0;
  int trials = 0;
  while (trials < 50) {
    const int d = dim_dist(rng);
    const CMat rho = random_hermitian(rng, d);
    const CMat a = random_hermitian(rng, d);
    const Complex mu(real_dist(rng), real_dist(rng) + 1.5);  // Im mu bounded away from 0
    const bool hermitian_mode = trials % 2 == 0;

    Eigen::ComplexEigenSolver<CMat> mu_solver(rho - mu * a);
    if (mu_solver.info() != Eigen::Success) continue;
    const CVec phi = mu_solver.eigenvectors().col(trials % d);
    const Complex z_phi = mu_solver.eigenvalues()(trials % d);
    if (((rho - mu * a) * phi - z_phi * phi).norm() > 1e-12) continue;  // poor eigenpair

    CVec chi;
    darboux::DarbouxConfig cfg{};
    if (hermitian_mode) {
      cfg = darboux::DarbouxConfig::hermitian(mu);
      chi = phi;
    } else {
      const Complex nu(real_dist(rng), real_dist(rng) - 1.5);
      cfg = darboux::DarbouxConfig::general(mu, nu);
      // chi must be an eigenvector of rho - conj(nu) a.
      Eigen::ComplexEigenSolver<CMat> nu_solver(rho - std::conj(cfg.nu) * a);
      if (nu_solver.info() != Eigen::Success) continue;
      int best = 0;
      double best_overlap = 0.0;
      for (int c = 0; c < d; ++c) {
        const double ov = std::abs(nu_solver.eigenvectors().col(c).dot(phi));
        if (ov > best_overlap) {
          best_overlap = ov;
          best = c;
        }
      }
      if (best_overlap < 1e-3) continue;  // transformation nearly singular, resample
      chi = nu_solver.eigenvectors().col(best);
      const Complex z_chi = nu_solver.eigenvalues()(best);
      if (((rho - std::conj(cfg.nu) * a) * chi - z_chi * chi).norm() > 1e-12) continue;
    }

    const CMat p = darboux::projector(phi, chi);
    const CMat dressed = darboux::darboux_rho(rho, a, p, cfg);
    const CMat t_mat = darboux::similarity_T(p, cfg);
    const CMat t_inv = darboux::similarity_T_inverse(p, cfg);
    worst_similarity = std::max(worst_similarity, max_norm(dressed - t_mat * rho * t_inv));

    const auto before = sorted_complex_spectrum(rho);
    const auto after = sorted_complex_spectrum(dressed);
    for (std::size_t i = 0; i < before.size(); ++i) {
      worst_spectrum = std::max(worst_spectrum, std::abs(before[i] - after[i]));
    }
    ++trials;
  }
  report.add("randomized dressing equals similarity transform (50 seeds)", worst_similarity,
             scaled(1e-10));
  report.add("randomized spectrum preservation (50 seeds)", worst_spectrum, scaled(1e-9));

  return report;
}

SuiteReport run_theorem2() {
  SuiteReport report{"theorem2", {}, true};
  std::mt19937_64 rng(kSeed + 1);
  std::uniform_real_distribution<double> real_dist(-1.0, 1.0);
  const std::vector<double> y_values{1.0 / 3.0, 2.0, -1.0};

  // n = 1 on the 3x3 dressed solution.
  {
    const auto ex = seeds::example3x3();
    const auto fam = ex.family();
    const auto base = ex.generator();
    double worst = 0.0;
    for (double y : y_values) {
      const CMat x = real_dist(rng) * CMat::Identity(3, 3);
      const auto shifted = darboux::shift_generator(base, x, fam);
      const auto rescaled = darboux::rescale_solution(shifted, y);
      worst = std::max(worst, equation_residual(rescaled, fam, -3.0, 3.0, 41));
    }
    report.add("n=1 shifted/rescaled 3x3 equation residual", worst, scaled(1e-6));
  }

  // n = 2 on a dressed anticommuting seed (even-n propagator).
  {
    const auto ex = seeds::example8x8();
    const auto seed2 = seeds::Strategy2Seed::create(ex.h, ex.xi, 2);
    // Pick an eigenvector of xi - iH with z != 0.
    Eigen::ComplexEigenSolver<CMat> solver(ex.xi - ex.mu * ex.h);
    int pick = -1;
    for (int c = 0; c < 8; ++c) {
      if (std::abs(solver.eigenvalues()(c)) > 0.5) {
        pick = c;
        break;
      }
    }
    if (pick < 0) {
      report.add("n=2 seed: nonzero Lax eigenvalue available", 1.0, 0.5);
      return report;
    }
    dynamics::EquationFamily fam2(2, ex.h);
    const auto base = seeds::dressed_strategy2_full(seed2, ex.mu, solver.eigenvectors().col(pick));
    double worst = 0.0;
    for (double y : y_values) {
      const CMat x = real_dist(rng) * CMat::Identity(8, 8);
      const auto shifted = darboux::shift_generator(base, x, fam2);
      const auto rescaled = darboux::rescale_solution(shifted, y);
      worst = std::max(worst, equation_residual(rescaled, fam2, -0.8, 0.8, 21));
    }
    report.add("n=2 shifted/rescaled 8x8 equation residual", worst, scaled(1e-6));
  }

  return report;
}

SuiteReport run_examples() {
  SuiteReport report{"examples", {}, true};

  {
    const auto ex = seeds::example3x3();
    const auto gen = ex.generator();
    double worst = 0.0;
    for (double t = -6.0; t <= 6.0; t += 0.5) {
      worst = std::max(worst, max_norm(gen.eval(t) - ex.dressed(t)));
    }
    report.add("3x3 generic dressing = closed form", worst, scaled(1e-12));
    report.add("3x3 co-rotating trace = 3/2",
               std::abs(ex.corotating_part(1.7).trace() - Complex(1.5)), scaled(1e-12));

    double worst_spec = 0.0;
    const RVec expected = (RVec(3) << 0.0, 1.0 / 3.0, 2.0 / 3.0).finished();
    for (double t = -10.0; t <= 10.0; t += 2.0) {
      const RVec eig = linalg::herm_eig(ex.normalized(t)).eigenvalues;
      worst_spec = std::max(worst_spec, (eig - expected).cwiseAbs().maxCoeff());
    }
    report.add("3x3 normalized spectrum {0, 1/3, 2/3}", worst_spec, scaled(1e-9));

    TrajectoryGen closed{3, [ex](double t) { return ex.normalized(t); }};
    report.add("3x3 normalized solution equation residual",
               equation_residual(closed, ex.family(), -5.0, 5.0, 51), scaled(1e-6));
  }

  {
    const auto ex = seeds::example8x8();
    const auto gen = ex.generator();
    double worst = 0.0;
    for (double t : {-1.0, 0.0, 0.5, 2.0}) {
      worst = std::max(worst, max_norm(gen.eval(t) - ex.dressed(t)));
    }
    report.add("8x8 generic dressing = closed form (64 entries)", worst, scaled(1e-12));
    report.add("8x8 anticommutation xi H = -H xi", max_norm(ex.xi * ex.h + ex.h * ex.xi),
               scaled(1e-14));

    const std::vector<double> ts{-2.0, -0.5, 0.0, 1.0, 3.0};
    report.add("8x8 spectrum constancy", spectrum_constancy(gen, ts), scaled(1e-9));
    RVec eig0 = linalg::herm_eig(ex.dressed(0.0)).eigenvalues;
    RVec expected(8);
    expected << -2, -2, 0, 0, 0, 0, 2, 2;
    report.add("8x8 eigenvalues {0, ±2}", (eig0 - expected).cwiseAbs().maxCoeff(), scaled(1e-9));
  }

  return report;
}

SuiteReport run_elliptic() {
  SuiteReport report{"elliptic", {}, true};
  const auto ex = seeds::example3x3();

  TrajectoryGen closed{3, [ex](double t) { return ex.normalized(t); }};
  const Trajectory traj = sample(closed, -8.0, 8.0, 1601);
  const Trajectory basis_traj = elliptic::to_h_eigenbasis(ex.h, traj);

  double diag_drift = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Complex first = basis_traj.states.front()(k, k);
    for (const auto& s : basis_traj.states) {
      diag_drift = std::max(diag_drift, std::abs(s(k, k) - first));
    }
  }
  report.add("diagonal entries constant in H eigenbasis", diag_drift, scaled(1e-8));

  const auto w = elliptic::extract_w(basis_traj);
  const auto quad = elliptic::fit_w_equation(w);
  report.add("d²W/dt² = aW² + bW + c fit residual", quad.degenerate ? 1.0 : quad.residual,
             scaled(1e-5));

  const auto k1 = elliptic::verify_k1_identification(w);
  report.add("k=1 (tanh²) identification misfit", k1.misfit, scaled(1e-6));

  double sn_limits = 0.0;
  for (double u = -3.0; u <= 3.0; u += 0.37) {
    sn_limits = std::max(sn_limits, std::abs(elliptic::jacobi_sn(u, 0.0) - std::sin(u)));
    sn_limits = std::max(sn_limits, std::abs(elliptic::jacobi_sn(u, 1.0) - std::tanh(u)));
  }
  report.add("sn(u,0)=sin u and sn(u,1)=tanh u", sn_limits, scaled(1e-12));

  double periodicity = 0.0;
  for (double k = 0.1; k < 1.0; k += 0.2) {
    const double period = 4.0 * elliptic::complete_elliptic_k(k);
    for (double u = -2.0; u <= 2.0; u += 0.5) {
      periodicity = std::max(periodicity,
                             std::abs(elliptic::jacobi_sn(u + period, k) - elliptic::jacobi_sn(u, k)));
    }
  }
  report.add("sn periodicity over 4K(k)", periodicity, scaled(1e-10));

  return report;
}

SuiteReport run_casimir() {
  SuiteReport report{"casimir", {}, true};
  std::mt19937_64 rng(kSeed + 2);
  for (int n = 1; n <= 3; ++n) {
    double worst = 0.0;
    for (int trial = 0; trial < 2; ++trial) {
      const int d = 3 + trial;
      const CMat a = random_hermitian(rng, d);
      const CMat rho0 = random_hermitian(rng, d);
      const auto run = dynamics::integrate_rk4(dynamics::EquationFamily(n, a), rho0, 0.0, 10.0,
                                               1e-3);
      for (double drift : run.casimir_drift) worst = std::max(worst, drift);
    }
    report.add("Casimir drift under RK4, n=" + std::to_string(n), worst, scaled(1e-6));
  }
  return report;
}

std::vector<SuiteReport> run_all() {
  return {run_theorem1(), run_theorem2(), run_examples(), run_elliptic(), run_casimir()};
}

std::string to_json_string(const std::vector<SuiteReport>& reports) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& report : reports) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& check : report.checks) {
      checks.push_back({{"name", check.name},
                        {"value", check.value},
                        {"tolerance", check.tolerance},
                        {"pass", check.pass}});
    }
    doc.push_back({{"suite", report.suite}, {"pass", report.pass}, {"checks", std::move(checks)}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace vneq::verify

// Command-line front end: simulation, dressing, verification, and
// figure-data reproduction for the isospectral density-matrix flows.
//
// Exit status is 0 iff every gate passes. Diagnostics go to stderr, data to
// files (or stdout for JSON reports when no --out is given).

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vneq/darboux.hpp"
#include "vneq/dynamics.hpp"
#include "vneq/elliptic.hpp"
#include "vneq/fit.hpp"
#include "vneq/io.hpp"
#include "vneq/linalg.hpp"
#include "vneq/seeds.hpp"
#include "vneq/verify.hpp"

namespace {

using namespace vneq;
using nlohmann::json;

struct GridArgs {
  double t0 = 0.0;
  double t1 = 10.0;
  double dt = 1e-3;
};

void attach_observables(Trajectory& traj) {
  const int d = traj.dim();
  std::vector<double> c1, c2, c3;
  c1.reserve(traj.size());
  c2.reserve(traj.size());
  c3.reserve(traj.size());
  for (const auto& s : traj.states) {
    const auto c = dynamics::casimirs(s, 3);
    c1.push_back(c[0]);
    c2.push_back(c[1]);
    c3.push_back(c[2]);
  }
  traj.observables["c1"] = std::move(c1);
  traj.observables["c2"] = std::move(c2);
  traj.observables["c3"] = std::move(c3);
  if (d == 3) {
    const auto spin = dynamics::spin1_matrices();
    std::vector<double> jx, jy, jz;
    for (const auto& s : traj.states) {
      jx.push_back(dynamics::expectation(spin.jx, s));
      jy.push_back(dynamics::expectation(spin.jy, s));
      jz.push_back(dynamics::expectation(spin.jz, s));
    }
    traj.observables["jx"] = std::move(jx);
    traj.observables["jy"] = std::move(jy);
    traj.observables["jz"] = std::move(jz);
  }
}

void emit_json(const json& doc, const std::string& out_path) {
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    io::atomic_write(out_path, text);
  }
}

CVec vector_from_json(const json& arr, const char* what) {
  if (!arr.is_array() || arr.empty()) {
    throw std::invalid_argument(std::string(what) + ": expected an array of [re, im] pairs");
  }
  CVec v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& pair = arr[i];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw std::invalid_argument(std::string(what) + ": component " + std::to_string(i) +
                                  " must be [re, im]");
    }
    v(i) = Complex(pair[0].get<double>(), pair[1].get<double>());
  }
  return v;
}

// --- simulate ---------------------------------------------------------------

int cmd_simulate(int n, const std::string& a_path, const std::string& rho0_path,
                 const GridArgs& grid, const std::string& out, const std::string& mode,
                 const std::string& gate) {
  const CMat a = io::read_matrix_json(a_path);
  const CMat rho0 = io::read_matrix_json(rho0_path);
  if (gate == "density") {
    linalg::require_density(rho0, "initial state");
  } else {
    linalg::require_hermitian(rho0, "initial state", scaled(1e-10));
  }

  dynamics::EquationFamily fam(n, a);
  auto run = dynamics::integrate_rk4(fam, rho0, grid.t0, grid.t1, grid.dt);
  attach_observables(run.trajectory);
  io::write_trajectory_csv(out, run.trajectory,
                           mode == "full" ? io::CsvMode::full_matrix : io::CsvMode::observables);
  std::cerr << "simulate: " << run.trajectory.size() << " samples -> " << out
            << "; casimir drift c1=" << run.casimir_drift[0] << " c2=" << run.casimir_drift[1]
            << " c3=" << run.casimir_drift[2] << "\n";
  return 0;
}

// --- darboux ----------------------------------------------------------------

struct DressedBundle {
  TrajectoryGen raw;         // dressed (non-normalized) solution
  TrajectoryGen normalized;  // after the spectrum shift/rescale maps
  dynamics::EquationFamily fam;
  CMat rho0_export;  // normalized state at t=0
};

DressedBundle dress_fixture_3x3(Complex mu) {
  const auto ex = seeds::example3x3();
  TrajectoryGen raw = ex.generator();
  if (mu.imag() == 0.0) {
    std::cerr << "warning: trivial transformation (real mu), rho[1] = rho\n";
    raw = seeds::strategy1_seed_evolution(ex.seed());
  }
  const auto fam = ex.family();
  TrajectoryGen normalized =
      darboux::rescale_solution(darboux::shift_generator(raw, ex.shift_x, fam), ex.scale_y);
  DressedBundle bundle{raw, normalized, fam, CMat()};
  bundle.rho0_export = bundle.normalized.eval(0.0);
  return bundle;
}

DressedBundle dress_fixture_8x8(Complex mu) {
  const auto ex = seeds::example8x8();
  TrajectoryGen raw = ex.generator();
  if (mu.imag() == 0.0) {
    std::cerr << "warning: trivial transformation (real mu), rho[1] = rho\n";
    const CMat xi = ex.xi;  // the anticommuting seed is stationary
    raw = TrajectoryGen{8, [xi](double) { return xi; }};
  }
  const auto fam = ex.family();
  const CMat shift = ex.lambda_shift * CMat::Identity(8, 8);
  TrajectoryGen normalized =
      darboux::rescale_solution(darboux::shift_generator(raw, shift, fam), ex.scale_y);
  DressedBundle bundle{raw, normalized, fam, CMat()};
  bundle.rho0_export = bundle.normalized.eval(0.0);
  return bundle;
}

DressedBundle dress_user_bundle(const std::string& path, Complex mu) {
  const json doc = json::parse(io::read_file(path));
  if (!doc.contains("h") || !doc.contains("xi0") || !doc.contains("a") || !doc.contains("phi0")) {
    throw std::invalid_argument("seed bundle: need fields h, xi0, a, phi0");
  }
  const CMat h = io::matrix_from_json_string(doc["h"].dump());
  const CMat xi0 = io::matrix_from_json_string(doc["xi0"].dump());
  const double a = doc["a"].get<double>();
  const CVec phi0 = vector_from_json(doc["phi0"], "seed bundle phi0");

  const auto seed = seeds::Strategy1Seed::create(h, xi0, a);
  TrajectoryGen raw;
  if (mu.imag() == 0.0) {
    std::cerr << "warning: trivial transformation (real mu), rho[1] = rho\n";
    raw = seeds::strategy1_seed_evolution(seed);
  } else {
    raw = seeds::dressed_strategy1_full(seed, mu, phi0);
  }

  // Normalize: shift by the smallest eigenvalue's magnitude, rescale to unit trace.
  const RVec eig = linalg::herm_eig(raw.eval(0.0)).eigenvalues;
  const double shift = eig(0) < 0.0 ? -eig(0) : 0.0;
  dynamics::EquationFamily fam(1, h);
  const int d = static_cast<int>(h.rows());
  auto shifted = darboux::shift_generator(raw, shift * CMat::Identity(d, d), fam);
  const double trace = shifted.eval(0.0).trace().real();
  if (std::abs(trace) < 1e-12) {
    throw std::runtime_error("darboux: shifted solution is traceless, cannot normalize");
  }
  DressedBundle bundle{raw, darboux::rescale_solution(shifted, 1.0 / trace), fam, CMat()};
  bundle.rho0_export = bundle.normalized.eval(0.0);
  return bundle;
}

int cmd_darboux(const std::string& example, const std::string& seed_path, Complex mu,
                double t0, double t1, int samples, const std::string& out_dir) {
  DressedBundle bundle = !seed_path.empty() ? dress_user_bundle(seed_path, mu)
                         : example == "8x8" ? dress_fixture_8x8(mu)
                                            : dress_fixture_3x3(mu);

  std::filesystem::create_directories(out_dir);
  const auto join = [&](const std::string& name) {
    return (std::filesystem::path(out_dir) / name).string();
  };

  Trajectory raw_traj = sample(bundle.raw, t0, t1, samples);
  Trajectory norm_traj = sample(bundle.normalized, t0, t1, samples);
  io::write_trajectory_csv(join("dressed.csv"), raw_traj, io::CsvMode::full_matrix);
  io::write_trajectory_csv(join("normalized.csv"), norm_traj, io::CsvMode::full_matrix);
  io::write_matrix_json(join("hamiltonian.json"), bundle.fam.a);
  io::write_matrix_json(join("rho0.json"), bundle.rho0_export);

  // Spectrum of the normalized solution across the grid.
  json spectrum = json::array();
  double spectrum_drift = 0.0;
  RVec ref;
  for (int i = 0; i < samples; i += std::max(1, samples / 16)) {
    const RVec eig = linalg::herm_eig(linalg::hermitize(norm_traj.states[i])).eigenvalues;
    if (ref.size() == 0) {
      ref = eig;
      for (Eigen::Index k = 0; k < eig.size(); ++k) spectrum.push_back(eig(k));
    } else {
      spectrum_drift = std::max(spectrum_drift, (eig - ref).cwiseAbs().maxCoeff());
    }
  }

  // Equation residual of the normalized solution.
  double residual = 0.0;
  const int check_points = std::min(samples, 51);
  for (int i = 0; i < check_points; ++i) {
    const double t = t0 + (t1 - t0) * i / (check_points - 1);
    const double h_fd = 1e-5;
    const CMat deriv =
        (bundle.normalized.eval(t + h_fd) - bundle.normalized.eval(t - h_fd)) / (2.0 * h_fd);
    residual = std::max(
        residual, linalg::max_norm(deriv - dynamics::rhs_family(bundle.fam, bundle.normalized.eval(t))));
  }

  const bool pass = spectrum_drift <= scaled(1e-9) && residual <= scaled(1e-6);
  json report{{"spectrum", spectrum},
              {"spectrum_drift", spectrum_drift},
              {"equation_residual", residual},
              {"pass", pass}};
  emit_json(report, join("report.json"));
  std::cerr << "darboux: wrote " << out_dir << " (residual " << residual << ", spectrum drift "
            << spectrum_drift << ")\n";
  return pass ? 0 : 1;
}

// --- reproduce --------------------------------------------------------------

Trajectory spin_series(const TrajectoryGen& gen, double t0, double t1, int samples) {
  Trajectory traj = sample(gen, t0, t1, samples);
  const auto spin = dynamics::spin1_matrices();
  std::vector<double> jx, jy, jz;
  for (const auto& s : traj.states) {
    jx.push_back(dynamics::expectation(spin.jx, s));
    jy.push_back(dynamics::expectation(spin.jy, s));
    jz.push_back(dynamics::expectation(spin.jz, s));
  }
  traj.observables["jx"] = std::move(jx);
  traj.observables["jy"] = std::move(jy);
  traj.observables["jz"] = std::move(jz);
  return traj;
}

double xy_amplitude(const Trajectory& traj) {
  double amp = 0.0;
  const auto& jx = traj.observables.at("jx");
  const auto& jy = traj.observables.at("jy");
  for (std::size_t i = 0; i < jx.size(); ++i) {
    amp = std::max(amp, std::hypot(jx[i], jy[i]));
  }
  return amp;
}

int cmd_reproduce(const std::string& example, const std::string& target, const std::string& out,
                  std::vector<double> times, int samples) {
  if (example == "8x8") {
    if (target != "matrix") {
      throw std::invalid_argument("reproduce: 8x8 supports only --target matrix");
    }
    const auto ex = seeds::example8x8();
    const auto gen = ex.generator();
    if (times.empty()) times = {-1.0, 0.0, 0.5, 2.0};
    json comparison = json::array();
    double worst = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const CMat constructed = gen.eval(times[i]);
      const double err = linalg::max_norm(constructed - ex.dressed(times[i]));
      worst = std::max(worst, err);
      io::write_matrix_json(out + ".t" + std::to_string(i) + ".json", constructed);
      comparison.push_back({{"t", times[i]}, {"max_entry_error", err}});
    }
    const bool pass = worst <= scaled(1e-12);
    emit_json(json{{"comparison", comparison}, {"max_error", worst}, {"pass", pass}},
              out + ".report.json");
    std::cerr << "reproduce: 8x8 matrix dump, max closed-form error " << worst << "\n";
    return pass ? 0 : 1;
  }

  const auto ex = seeds::example3x3();
  TrajectoryGen gen{3, [ex](double t) { return ex.normalized(t); }};

  if (target == "fig1" || target == "fig2") {
    const double t0 = target == "fig1" ? 0.0 : -230.0;
    const double t1 = target == "fig1" ? 10.0 : -220.0;
    Trajectory traj = spin_series(gen, t0, t1, samples);
    traj.observables.erase("jz");
    io::write_trajectory_csv(out, traj, io::CsvMode::observables);
    std::cerr << "reproduce: " << target << " window [" << t0 << ", " << t1 << "], xy amplitude "
              << xy_amplitude(traj) << "\n";
    return 0;
  }
  if (target == "fig3") {
    Trajectory traj = spin_series(gen, -20.0, 20.0, samples);
    const auto& jz = traj.observables.at("jz");

    const auto window_fit = [&](double w0, double w1) {
      std::vector<double> ts, ys;
      for (std::size_t i = 0; i < traj.times.size(); ++i) {
        if (traj.times[i] >= w0 && traj.times[i] <= w1) {
          ts.push_back(traj.times[i]);
          ys.push_back(jz[i]);
        }
      }
      return fit::fit_sinusoid(ts, ys);
    };
    const auto fit_pos = window_fit(12.0, 20.0);
    const auto fit_neg = window_fit(-20.0, -12.0);

    std::vector<double> asym_pos, asym_neg;
    for (double t : traj.times) {
      asym_pos.push_back(fit_pos.eval(t));
      asym_neg.push_back(fit_neg.eval(t));
    }
    traj.observables.erase("jx");
    traj.observables.erase("jy");
    traj.observables["asym_pos"] = std::move(asym_pos);
    traj.observables["asym_neg"] = std::move(asym_neg);
    io::write_trajectory_csv(out, traj, io::CsvMode::observables);

    const auto fit_json = [](const fit::SinusoidFit& f) {
      return json{{"a", f.a},          {"b", f.b},
                  {"omega", f.omega},  {"rms_misfit", f.rms},
                  {"sigma", {f.sigma(0), f.sigma(1), f.sigma(2)}},
                  {"converged", f.converged}};
    };
    emit_json(json{{"fit_pos", fit_json(fit_pos)}, {"fit_neg", fit_json(fit_neg)}},
              out + ".fits.json");
    std::cerr << "reproduce: fig3 asymptote fits rms " << fit_pos.rms << " / " << fit_neg.rms
              << "\n";
    return 0;
  }
  if (target == "matrix") {
    if (times.empty()) times = {-1.0, 0.0, 0.5, 2.0};
    for (std::size_t i = 0; i < times.size(); ++i) {
      io::write_matrix_json(out + ".t" + std::to_string(i) + ".json", gen.eval(times[i]));
    }
    std::cerr << "reproduce: wrote " << times.size() << " matrix dumps\n";
    return 0;
  }
  throw std::invalid_argument("reproduce: unknown target '" + target + "'");
}

// --- verify -----------------------------------------------------------------

int cmd_verify(const std::string& suite, const std::string& out, const std::string& fault) {
  verify::FaultInjection injection;
  if (fault == "theorem1-projector") {
    injection.corrupt_projector = true;
  } else if (!fault.empty()) {
    throw std::invalid_argument("verify: unknown fault '" + fault + "'");
  }

  std::vector<verify::SuiteReport> reports;
  if (suite == "all") {
    reports = verify::run_all();
    if (injection.corrupt_projector) reports[0] = verify::run_theorem1(injection);
  } else if (suite == "theorem1") {
    reports.push_back(verify::run_theorem1(injection));
  } else if (suite == "theorem2") {
    reports.push_back(verify::run_theorem2());
  } else if (suite == "examples") {
    reports.push_back(verify::run_examples());
  } else if (suite == "elliptic") {
    reports.push_back(verify::run_elliptic());
  } else if (suite == "casimir") {
    reports.push_back(verify::run_casimir());
  } else {
    throw std::invalid_argument("verify: unknown suite '" + suite + "'");
  }

  const std::string text = verify::to_json_string(reports);
  if (out.empty()) {
    std::cout << text;
  } else {
    io::atomic_write(out, text);
  }

  bool pass = true;
  for (const auto& report : reports) {
    pass = pass && report.pass;
    for (const auto& check : report.checks) {
      if (!check.pass) {
        std::cerr << "FAIL [" << report.suite << "] " << check.name << ": " << check.value
                  << " > " << check.tolerance << "\n";
      }
    }
  }
  std::cerr << "verify: " << (pass ? "all checks passed" : "failures detected") << "\n";
  return pass ? 0 : 1;
}

// --- w-report ---------------------------------------------------------------

int cmd_w_report(double t0, double t1, double dt, const std::string& out) {
  const auto ex = seeds::example3x3();
  TrajectoryGen gen{3, [ex](double t) { return ex.normalized(t); }};
  const int samples = static_cast<int>(std::lround((t1 - t0) / dt)) + 1;
  const Trajectory traj = sample(gen, t0, t1, samples);
  const Trajectory basis_traj = elliptic::to_h_eigenbasis(ex.h, traj);
  const auto w = elliptic::extract_w(basis_traj);
  const auto quad = elliptic::fit_w_equation(w);
  const auto k1 = elliptic::verify_k1_identification(w);

  json doc{{"a", quad.a},
           {"b", quad.b},
           {"c", quad.c},
           {"residual", quad.residual},
           {"k1_fit",
            {{"alpha", k1.alpha},
             {"beta", k1.beta},
             {"gamma", k1.gamma},
             {"t0", k1.t0},
             {"misfit", k1.misfit},
             {"pass", k1.pass}}}};
  emit_json(doc, out);
  return (quad.degenerate || !k1.pass) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and numerical solutions of isospectral density-matrix flows"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Integrate the family equation with fixed-step RK4");
  int sim_n = 1;
  std::string sim_a, sim_rho0, sim_out = "trajectory.csv", sim_mode = "observables",
              sim_gate = "density";
  GridArgs sim_grid;
  sim->add_option("--n", sim_n, "family index n >= 0");
  sim->add_option("--a", sim_a, "matrix JSON file for A")->required();
  sim->add_option("--rho0", sim_rho0, "matrix JSON file for the initial state")->required();
  sim->add_option("--t0", sim_grid.t0, "start time");
  sim->add_option("--t1", sim_grid.t1, "end time");
  sim->add_option("--dt", sim_grid.dt, "step size");
  sim->add_option("--out", sim_out, "output CSV path");
  sim->add_option("--mode", sim_mode, "observables|full")
      ->check(CLI::IsMember({"observables", "full"}));
  sim->add_option("--gate", sim_gate, "density|hermitian initial-state gate")
      ->check(CLI::IsMember({"density", "hermitian"}));

  // darboux
  auto* dar = app.add_subcommand("darboux", "Dress a seed solution and report invariants");
  std::string dar_example = "3x3", dar_seed, dar_mu = "0+1i", dar_out = "darboux_out";
  double dar_t0 = -10.0, dar_t1 = 10.0;
  int dar_samples = 201;
  dar->add_option("--example", dar_example, "fixture selector: 3x3|8x8")
      ->check(CLI::IsMember({"3x3", "8x8"}));
  dar->add_option("--seed", dar_seed, "user seed bundle JSON (h, xi0, a, phi0)");
  dar->add_option("--mu", dar_mu, "Darboux parameter, 'a+bi'");
  dar->add_option("--t0", dar_t0, "trajectory start");
  dar->add_option("--t1", dar_t1, "trajectory end");
  dar->add_option("--samples", dar_samples, "trajectory samples");
  dar->add_option("--out", dar_out, "output directory");

  // reproduce
  auto* rep = app.add_subcommand("reproduce", "Emit figure data series and matrix dumps");
  std::string rep_example = "3x3", rep_target = "fig1", rep_out = "reproduce.csv";
  std::vector<double> rep_times;
  int rep_samples = 2001;
  rep->add_option("--example", rep_example, "3x3|8x8")->check(CLI::IsMember({"3x3", "8x8"}));
  rep->add_option("--target", rep_target, "fig1|fig2|fig3|matrix");
  rep->add_option("--out", rep_out, "output path (CSV or JSON prefix)");
  rep->add_option("--times", rep_times, "sample times for the matrix target");
  rep->add_option("--samples", rep_samples, "grid resolution for figure targets");

  // verify
  auto* ver = app.add_subcommand("verify", "Run the invariant suites");
  std::string ver_suite = "all", ver_out, ver_fault;
  ver->add_option("--suite", ver_suite, "all|theorem1|theorem2|examples|elliptic|casimir");
  ver->add_option("--out", ver_out, "JSON report path (stdout when omitted)");
  ver->add_option("--inject-fault", ver_fault, "testing hook: theorem1-projector");

  // w-report
  auto* wrep = app.add_subcommand("w-report", "Scalar |rho_12|^2 reduction report");
  double w_t0 = -8.0, w_t1 = 8.0, w_dt = 1e-2;
  std::string w_out;
  wrep->add_option("--t0", w_t0, "window start");
  wrep->add_option("--t1", w_t1, "window end");
  wrep->add_option("--dt", w_dt, "grid spacing");
  wrep->add_option("--out", w_out, "JSON output path (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      return cmd_simulate(sim_n, sim_a, sim_rho0, sim_grid, sim_out, sim_mode, sim_gate);
    }
    if (dar->parsed()) {
      return cmd_darboux(dar_example, dar_seed, io::parse_complex(dar_mu), dar_t0, dar_t1,
                         dar_samples, dar_out);
    }
    if (rep->parsed()) {
      return cmd_reproduce(rep_example, rep_target, rep_out, rep_times, rep_samples);
    }
    if (ver->parsed()) {
      return cmd_verify(ver_suite, ver_out, ver_fault);
    }
    if (wrep->parsed()) {
      return cmd_w_report(w_t0, w_t1, w_dt, w_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vneq/dynamics.hpp"
#include "vneq/types.hpp"

namespace vneq::darboux {

/// Spectral data (μ, z_μ, φ₀) of the linear problem z φ = (ρ - μA) φ at t=0.
/// φ₀ is stored unit-norm; the projector construction below is invariant
/// under rescaling of φ₀.
struct LaxEigenpair {
  Complex mu;
  Complex z;
  CVec phi0;
};

/// Validates ||(ρ₀ - μA - z) φ₀|| <= tolerance and normalizes φ₀.
LaxEigenpair make_lax_eigenpair(const CMat& rho0, const CMat& a, Complex mu, Complex z,
                                CVec phi0, double tolerance = scaled(1e-8));

/// Distinct eigenvalues of ρ - μA (collapsed within `merge_tol`).
std::vector<Complex> lax_spectrum(const CMat& rho, const CMat& a, Complex mu,
                                  double merge_tol = 1e-9);

/// Normalized equal-weight combination of a degenerate eigenspace basis.
/// One convention among many; callers wanting a different mix build their own.
CVec equal_weight_combination(const std::vector<CVec>& basis);

struct DarbouxConfig {
  Complex mu;
  Complex nu;
  bool hermitian_mode = false;

  /// ν = conj(μ), χ identified with φ; conserves hermiticity.
  static DarbouxConfig hermitian(Complex mu);
  static DarbouxConfig general(Complex mu, Complex nu);

  /// μ = ν leaves ρ unchanged.
  bool trivial() const { return mu == nu; }
};

struct LaxResiduals {
  double spatial;
  double temporal;
};

/// Residuals of the two linear problems at time t:
///   spatial  = ||(ρ(t) - μA - z) φ(t)||
///   temporal = ||i dφ/dt - (Σ_k A^{n-k} ρ(t) A^k - μ A^{n+1}) φ(t)||
/// with dφ/dt taken from the supplied propagator by central difference.
LaxResiduals lax_residuals(const CMat& a, const CMat& rho_t, const LaxEigenpair& pair, int n,
                           const std::function<CVec(double)>& phi_of_t, double t,
                           double fd_step = 1e-5);

/// Rank-1 idempotent P = |φ⟩⟨χ| / ⟨χ|φ⟩. Throws when φ and χ are nearly
/// orthogonal (the transformation is singular there).
CMat projector(const CVec& phi, const CVec& chi);

/// Dressing step ρ[1] = ρ + (μ-ν)[P, A]. In hermitian mode the output must
/// stay Hermitian; a violation signals an inconsistent projector and throws.
CMat darboux_rho(const CMat& rho, const CMat& a, const CMat& p, const DarbouxConfig& cfg);

/// T = 1 + ((μ-ν)/ν) P, cross-checked against exp(P ln(μ/ν)) (principal
/// branch) before returning. T⁻¹ = 1 + ((ν-μ)/μ) P.
CMat similarity_T(const CMat& p, const DarbouxConfig& cfg);
CMat similarity_T_inverse(const CMat& p, const DarbouxConfig& cfg);

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ChainReport {
  std::vector<CheckResult> steps;
  bool pass = true;

  const CheckResult* find(const std::string& name) const;
};

/// Evaluates every identity in the similarity-form proof chain:
/// the two eigenvector relations, their projector forms, the [P,A]
/// expression, and the factorized product form of ρ[1]. Failures are
/// reported per step, not thrown, so negative controls can inspect them.
ChainReport verify_theorem1_chain(const CMat& rho, const CMat& a, const CVec& phi,
                                  const CVec& chi, const DarbouxConfig& cfg,
                                  double tolerance = scaled(1e-10));

/// Spectrum-shift covariance: ρ_X(t) = e^{-i(n+1)XA^n t} (ρ(t)+X) e^{+i...}.
/// Requires [X,A] = 0 and [X,ρ(t)] = 0 at every sample.
Trajectory shift_solution(const Trajectory& traj, const CMat& x,
                          const dynamics::EquationFamily& fam);

/// Generator form of the same map.
TrajectoryGen shift_generator(const TrajectoryGen& gen, const CMat& x,
                              const dynamics::EquationFamily& fam);

/// Rescale covariance ρ_Y(t) = Y ρ(Yt), Y real nonzero. Needs a re-evaluable
/// closed form, hence the generator interface.
TrajectoryGen rescale_solution(const TrajectoryGen& gen, double y);

}  // namespace vneq::darboux

#pragma once

#include <vector>

#include "vneq/types.hpp"

namespace vneq::elliptic {

/// |ρ₁₂|² sampled on a time grid.
struct WSeries {
  std::vector<double> times;
  std::vector<double> w;
};

/// Least-squares fit of d²W/dt² = a W² + b W + c.
struct QuadFit {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double residual = 0.0;  // max-norm misfit on the fitting grid
  bool degenerate = false;
};

struct EigenbasisMap {
  CMat u;       // columns: ordered eigenvectors of H
  RVec h_diag;  // H in the new basis
};

/// Basis in which H is diagonal with the convention: eigenvalues by
/// descending magnitude, a ±pair (when present) first with the positive
/// member leading. Under this ordering the 3x3 off-diagonal equations of
/// motion hold with μ = h_diag(0) > 0 and λ = h_diag(2).
EigenbasisMap h_eigenbasis(const CMat& h);

/// Conjugates every state into the H eigenbasis; the diagonal entries of the
/// result are constants of motion for the n=1 flow.
Trajectory to_h_eigenbasis(const CMat& h, const Trajectory& traj);

/// |entry(0,1)|² of a 3x3 trajectory.
WSeries extract_w(const Trajectory& traj_in_eigenbasis);

/// Fits (a, b, c) by least squares with d²W/dt² from a 5-point central
/// stencil (interior points only; needs >= 7 uniform samples). A rank-deficient
/// design — constant W — comes back flagged degenerate, not fitted.
QuadFit fit_w_equation(const WSeries& w);

/// Jacobi sn(u, k) for real u, 0 <= k <= 1, by descending Landen/AGM.
double jacobi_sn(double u, double k);

/// Complete elliptic integral K(k) by AGM (infinite at k = 1).
double complete_elliptic_k(double k);

struct K1Fit {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double t0 = 0.0;
  double misfit = 0.0;  // max abs residual
  bool pass = false;
  bool converged = false;
  bool degenerate = false;
};

/// Fits W(t) = β⁻¹ tanh²(α(t-t₀)) + γ, the k=1 member of the sn² family, and
/// passes iff the max misfit stays within tolerance. Non-convergence is
/// reported, never thrown.
K1Fit verify_k1_identification(const WSeries& w, double tolerance = 1e-6);

}  // namespace vneq::elliptic

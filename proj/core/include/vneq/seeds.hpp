#pragma once

#include <functional>

#include "vneq/darboux.hpp"
#include "vneq/dynamics.hpp"
#include "vneq/types.hpp"

namespace vneq::seeds {

struct QuadraticRoots {
  double plus;
  double minus;
  bool degenerate;  // double root
};

/// Real roots of x² - a·x - x₀ = 0, the diagonal-entry equation behind the
/// Δₐ construction. Throws when the discriminant is negative (the trick is
/// inapplicable for that (a, x₀); pick another pair).
QuadraticRoots solve_quadratic_diag(double a, double x0);

/// Non-stationary seed for i dρ/dt = [H, ρ²] whose Δₐ = ξ₀² - a·ξ₀ commutes
/// with H without being a multiple of the identity. The seed itself evolves
/// as ξ(t) = e^{-iaHt} ξ(0) e^{iaHt}.
struct Strategy1Seed {
  CMat h;
  CMat xi0;
  double a = 1.0;
  CMat delta;  // ξ₀² - a ξ₀

  /// Validates: H, ξ₀ Hermitian; [H, Δₐ] = 0; Δₐ not a multiple of 1;
  /// [H, ξ₀] ≠ 0 (nonstationarity).
  static Strategy1Seed create(CMat h, CMat xi0, double a);
};

/// ξ[1](t) of the dressed strategy-1 solution,
///   e^{-iaHt} ( ξ₀ + (μ-μ̄) F_a(t)⁻¹ e^{-(i/μ)Δₐt} [|φ₀⟩⟨φ₀|, H] e^{(i/μ̄)Δₐt} ) e^{iaHt},
///   F_a(t) = ⟨φ₀| exp(i (μ-μ̄)/|μ|² Δₐ t) |φ₀⟩.
/// All exponentials are evaluated in saturation-safe form (dominant factor
/// divided out), so |t| up to ~300 stays exact to double precision.
/// Preconditions (throw): Im μ ≠ 0; φ₀ an eigenvector of ξ₀ - μH; φ₀ NOT an
/// eigenvector of Δₐ (that choice freezes the internal part in time).
CMat dressed_strategy1(const Strategy1Seed& seed, Complex mu, const CVec& phi0, double t);

/// Same solution as a re-evaluable generator (decompositions cached).
TrajectoryGen dressed_strategy1_full(const Strategy1Seed& seed, Complex mu, const CVec& phi0);

/// The Lax vector accompanying the strategy-1 seed,
///   φ(t) = e^{-iθt} e^{-iaHt} e^{-(i/μ)Δₐt} φ₀   with  θ = -z(z-a)/μ,
/// which satisfies both linear problems of the pair (checked by the residual
/// tests). Grows/decays exponentially in general.
std::function<CVec(double)> strategy1_lax_vector(const Strategy1Seed& seed, Complex mu,
                                                 const CVec& phi0);

/// The undressed seed trajectory ξ(t) = e^{-iaHt} ξ₀ e^{iaHt}.
TrajectoryGen strategy1_seed_evolution(const Strategy1Seed& seed);

/// Stationary seed ξ anticommuting with A; the projector then fails to
/// commute with ρ and A, which is what makes the dressing nontrivial.
struct Strategy2Seed {
  CMat a;
  CMat xi;
  int n = 1;  // family index

  /// Validates: A, ξ Hermitian; Aξ + ξA = 0; n >= 1.
  static Strategy2Seed create(CMat a, CMat xi, int n);
};

/// φ(t) = e^{-i z A^n t} φ₀ (even n >= 2). Generically non-unitary: z is
/// complex, so components grow or decay.
CVec propagate_phi_even(const CVec& phi0, const CMat& a, int n, Complex z, double t);

/// φ(t) = e^{i μ A^{n+1} t} φ₀ (odd n). A φ₀ that is an eigenvector of
/// A^{n+1} only picks up a scalar factor and dresses trivially.
CVec propagate_phi_odd(const CVec& phi0, const CMat& a, int n, Complex mu, double t);

/// ξ[1](t) = ξ + (μ-μ̄)[P(t), A] with P(t) built from the propagated φ(t)
/// (χ = φ, hermitian mode). The propagation is rescaled by its dominant
/// exponential before forming P — P is scale-invariant — so large |t| cannot
/// overflow. Throws if ⟨φ(t)|φ(t)⟩ degenerates.
CMat dressed_strategy2(const Strategy2Seed& seed, Complex mu, const CVec& phi0, double t);

TrajectoryGen dressed_strategy2_full(const Strategy2Seed& seed, Complex mu, const CVec& phi0);

/// φ(t) for the strategy-2 seed, unrescaled (for Lax residual checks).
std::function<CVec(double)> strategy2_lax_vector(const Strategy2Seed& seed, Complex mu,
                                                 const CVec& phi0);

/// The 3x3 worked example: H with an off-diagonal 2x2 block and a 1/√2
/// corner, diagonal seed built from the roots of x² - x = 1/4, μ = i.
/// Ships the closed-form dressed solution and its unit-trace normalization.
struct Example3x3 {
  CMat h;
  CMat xi0;
  double a = 1.0;
  CMat delta;
  Complex mu;
  Complex z;   // the degenerate eigenvalue of ξ₀ - iH the dressing uses
  CVec phi1;   // (0, 0, 1)
  CVec phi2;   // (e^{iπ/4}, 1, 0)/√2
  CVec phi0;   // (φ₁ + φ₂)/√2
  CMat shift_x;
  double scale_y = 0.0;

  /// Closed-form co-rotating part ξ_int[1](t) (overflow-safe entries).
  CMat corotating_part(double t) const;
  /// ξ[1](t) = e^{-iHt} ξ_int[1](t) e^{iHt}.
  CMat dressed(double t) const;
  /// Closed-form internal part of the normalized solution.
  CMat normalized_corotating(double t) const;
  /// The unit-trace density-matrix solution e^{-i(2/3)Ht} ρ_int(t) e^{i(2/3)Ht}.
  CMat normalized(double t) const;

  Strategy1Seed seed() const;
  dynamics::EquationFamily family() const;  // n = 1, A = H
  /// Generic construction route (dressing machinery, not the closed form).
  TrajectoryGen generator() const;
  /// Generic route composed with the spectrum shift X and rescale Y.
  TrajectoryGen normalized_generator() const;
};

Example3x3 example3x3();

/// The 8x8 worked example: H = α₁⊗1 + 1⊗σ₁, ξ = α₂⊗σ₂ + α₃⊗σ₃ with
/// α_k = σ₁⊗σ_k, μ = i. Construction self-validates the α convention against
/// the closed-form dressed matrix and throws on mismatch.
struct Example8x8 {
  CMat h;
  CMat xi;
  Complex mu;
  CVec phi0;  // ket conjugate to the row (i, 0, -1, 0, -i, 0, 1, 0)
  double lambda_shift = 2.0;  // minimal shift making the spectrum nonnegative
  double scale_y = 1.0 / 16.0;

  /// Closed-form ξ[1](t): every entry is (c₀ + c₄e^{4t} + c₈e^{8t})/(1+e^{8t}),
  /// evaluated in saturation-safe form.
  CMat dressed(double t) const;

  Strategy2Seed seed() const;  // n = 1
  dynamics::EquationFamily family() const;
  TrajectoryGen generator() const;
  /// Shift by Λ·1 (Λ = 2) and rescale to unit trace (Y = 1/16).
  TrajectoryGen normalized_generator() const;
};

Example8x8 example8x8();

}  // namespace vneq::seeds

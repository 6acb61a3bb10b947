#pragma once

#include <array>
#include <vector>

#include "vneq/types.hpp"

namespace vneq::dynamics {

/// One member of the isospectral family
///   i dρ/dt = Σ_{k=0}^{n} [A^{n-k} ρ A^k, ρ]
/// with A a fixed Hermitian operator and n >= 0. Powers of A are cached.
struct EquationFamily {
  int n = 1;
  CMat a;

  EquationFamily(int family_index, CMat a_op);

  /// A^k for 0 <= k <= n+1.
  const CMat& power(int k) const { return powers_.at(static_cast<std::size_t>(k)); }
  int dim() const { return static_cast<int>(a.rows()); }

 private:
  std::vector<CMat> powers_;
};

/// Real polynomial f(x) = Σ_k f_k (x - a)^k about expansion point a.
struct PolynomialF {
  double expansion_point = 0.0;
  std::vector<double> coeffs;  // coeffs[k] = f_k

  PolynomialF() = default;
  PolynomialF(double a, std::vector<double> f);

  /// Same, but additionally requires f(0)=0 and f(1)=1 (within 1e-12), the
  /// compatibility condition under which pure states evolve linearly.
  static PolynomialF pure_state_compatible(double a, std::vector<double> f);

  double eval_scalar(double x) const;

  /// Matrix polynomial, Horner form in (rho - a*I).
  CMat eval(const CMat& rho) const;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Right-hand side dρ/dt = -i Σ_k [A^{n-k} ρ A^k, ρ]. Cross-checks the
/// algebraically equivalent form Σ_k [A^{n-k}, ρ A^k ρ] and throws if the two
/// disagree beyond tolerance (an arithmetic-bug tripwire).
CMat rhs_family(const EquationFamily& fam, const CMat& rho);

/// Right-hand side dρ/dt = -i [H, f(ρ)].
CMat rhs_fvn(const CMat& h, const CMat& rho, const PolynomialF& f);

/// Effective Hamiltonian Σ_{k>=1} f_k Σ_{m=0}^{k-1} (ρ-a)^{k-1-m} H (ρ-a)^m,
/// satisfying [Ĥ(ρ), ρ] = [H, f(ρ)].
CMat effective_hamiltonian(const CMat& h, const CMat& rho, const PolynomialF& f);

/// [Tr ρ, Tr ρ², ..., Tr ρ^max_power]. Throws if any trace has an imaginary
/// part above tolerance.
std::vector<double> casimirs(const CMat& rho, int max_power);

/// Re Tr(obs · ρ); throws if |Im Tr| exceeds tolerance.
double expectation(const CMat& obs, const CMat& rho);

struct Spin1 {
  CMat jx, jy, jz;
};

/// The three 3x3 spin observables used for trajectory readout. With this
/// convention [jx, jy] = -i jz (measured, documented in the README).
Spin1 spin1_matrices();

struct Integration {
  Trajectory trajectory;
  /// max_t |Tr ρ(t)^p - Tr ρ(0)^p| for p = 1, 2, 3.
  std::array<double, 3> casimir_drift{};
};

/// Classic fixed-step RK4 for rhs_family. The requested dt is rounded to an
/// integer number of steps spanning [t0, t1] exactly; every stored state is
/// re-Hermitized by (M + M†)/2 after the full step. Aborts if any entry
/// exceeds 1e6 in magnitude.
Integration integrate_rk4(const EquationFamily& fam, const CMat& rho0, double t0, double t1,
                          double dt);

}  // namespace vneq::dynamics

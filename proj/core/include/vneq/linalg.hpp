#pragma once

#include <vector>

#include "vneq/types.hpp"

namespace vneq::linalg {

/// True iff every entry of m is finite (no NaN/Inf).
bool is_finite(const CMat& m);

/// Largest absolute entry.
double max_norm(const CMat& m);

CMat dagger(const CMat& m);

CMat identity(int dim);

bool is_hermitian(const CMat& m, double tolerance = scaled(tol::hermiticity));

/// Throws std::invalid_argument naming `what` if m fails the Hermitian gate.
void require_hermitian(const CMat& m, const std::string& what,
                       double tolerance = scaled(tol::hermiticity));

/// Density-matrix gate: Hermitian, min eigenvalue >= -psd tolerance,
/// |Tr - 1| <= trace tolerance.
void require_density(const CMat& m, const std::string& what);

/// Matrix product with dimension checking.
CMat mat_mul(const CMat& a, const CMat& b);

/// ab - ba. Antisymmetric to exact entrywise negation.
CMat commutator(const CMat& a, const CMat& b);

/// ab + ba.
CMat anticommutator(const CMat& a, const CMat& b);

struct HermEig {
  RVec eigenvalues;   // ascending
  CMat eigenvectors;  // orthonormal columns, same order
};

/// Eigendecomposition of a Hermitian matrix. Throws on non-Hermitian input
/// or solver failure.
HermEig herm_eig(const CMat& m);

/// Orthonormal basis of the numerical nullspace of (m - z*I), empty when z
/// is not an eigenvalue. Rank cutoff is relative to max(sigma_max, 1).
std::vector<CVec> general_eigvec(const CMat& m, Complex z,
                                 double rank_tolerance = scaled(tol::nullspace_rank));

/// exp(m) for a general complex square matrix.
CMat matrix_exp(const CMat& m);

/// Kronecker product, (a⊗b)[(i*db+k),(j*db+l)] = a[i,j]*b[k,l].
CMat tensor_product(const CMat& a, const CMat& b);

/// Hermitian projection (m + m†)/2.
CMat hermitize(const CMat& m);

CMat pauli_x();
CMat pauli_y();
CMat pauli_z();

}  // namespace vneq::linalg

#pragma once

#include "splitadmm/types.hpp"

namespace splitadmm::numkern {

// Symmetric eigendecomposition M = U diag(eigenvalues) U^T with eigenvalues
// sorted descending. U is orthogonal.
struct SymEigResult {
  Matrix basis;
  Vector eigenvalues;
};

// Thin singular value decomposition M = U diag(singulars) V^T with
// r = min(rows, cols) and singular values sorted descending.
struct SvdResult {
  Matrix left;
  Vector singulars;
  Matrix right;
};

// The input is symmetrized as (M + M^T)/2 before factoring; callers are
// expected to pass matrices that are symmetric up to roundoff.
SymEigResult sym_eig(const Matrix& M);

SvdResult svd(const Matrix& M);

// rho(A^T A) by power iteration with a deterministic all-ones start vector.
// tol is the requested relative accuracy; iteration stops once the Rayleigh
// estimate's relative change drops below min(tol, 1e-10), capped at 5000
// iterations. Returns 0 for the zero matrix without iterating.
double spectral_radius_gram(const Matrix& A, double tol = 1e-10);

}  // namespace splitadmm::numkern

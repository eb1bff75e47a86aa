#pragma once

#include "splitadmm/model.hpp"
#include "splitadmm/prox.hpp"

namespace splitadmm::problems {

// Low-rank + sparse + bounded-noise decomposition of an observed matrix:
//
//   min ||L||_* + tau_w*||S||_1
//   s.t. L + S + Z = M, ||P_Omega(Z)||_F <= delta.
struct RpcaInstance {
  Matrix M;
  double tau_w = 0.0;
  prox::MaskedBall ball;
  Matrix planted_L;  // empty when unknown
  Matrix planted_S;
  bool has_planted() const { return planted_L.size() > 0; }
};

// Three blocks (L, S, Z) over vectorized matrices, identity couplings,
// rhs = vec(M).
SeparableProblem rpca_build(const RpcaInstance& instance);

// Numerical rank: singular values at or below 1e-6 times the largest count
// as zero.
Index rpca_rank(const Matrix& L);

// Entries with |s| > 1e-8.
Index rpca_nnz(const Matrix& S);

}  // namespace splitadmm::problems

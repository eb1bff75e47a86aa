#pragma once

#include "splitadmm/model.hpp"

namespace splitadmm::problems {

// Sparse-plus-low-rank regularized maximum likelihood for inverse covariance
// estimation with latent variables:
//
//   min <R, sigma_hat> - logdet(R) + alpha1*||S||_1 + alpha2*Tr(L)
//   s.t. R - S + L = 0, L PSD (and R PD through the logdet barrier).
struct LvggmsInstance {
  Matrix sigma_hat;
  double alpha1 = 0.005;
  double alpha2 = 0.05;
};

// Three blocks (R, S, L) over vectorized p x p matrices with couplings
// (+I, -I, +I) and zero right-hand side. The L block's exact update is
// eigenvalue soft-thresholding clamped at zero, which is the true minimizer
// under the PSD constraint; literal_svt_l_update swaps in plain singular
// value thresholding instead (no clamping) for comparison.
SeparableProblem lvggms_build(const LvggmsInstance& instance,
                              bool literal_svt_l_update = false);

double lvggms_objective(const LvggmsInstance& instance, const Matrix& R, const Matrix& S,
                        const Matrix& L);

}  // namespace splitadmm::problems

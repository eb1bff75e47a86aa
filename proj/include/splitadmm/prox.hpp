#pragma once

#include "splitadmm/types.hpp"

#include <utility>
#include <vector>

namespace splitadmm::prox {

// Constraint set { Z : ||P_Omega(Z)||_F <= radius } where P_Omega keeps the
// masked entries and zeroes the rest.
struct MaskedBall {
  std::vector<std::pair<Index, Index>> mask;
  double radius = 0.0;
};

// min tau*||x||_1 + 0.5*||x - c||^2, componentwise sgn(c)*max(|c|-tau, 0).
Vector shrinkage(const Vector& c, double tau);

// Entrywise soft-thresholding: min mu*||S||_1 + 0.5*||S - T||_F^2.
Matrix matrix_shrink(const Matrix& T, double mu);

// Singular value thresholding: min mu*||L||_* + 0.5*||L - K||_F^2.
Matrix svt(const Matrix& K, double mu);

// min mu*Tr(L) + 0.5*||L - K||_F^2  s.t. L PSD; eigenvalues of (K + K^T)/2
// are soft-thresholded by mu and clamped at zero.
Matrix psd_trace_prox(const Matrix& K, double mu);

// min <R, sigma_hat> - logdet(R) + (beta/2)*||R - anchor||_F^2 over symmetric
// positive definite R. With U diag(s) U^T = (1/beta)*sigma_hat - anchor, the
// minimizer is U diag(g) U^T, g_i = (-s_i + sqrt(s_i^2 + 4/beta)) / 2 > 0.
Matrix logdet_quad_prox(const Matrix& sigma_hat, const Matrix& anchor, double beta);

// Euclidean projection of (u_1, ..., u_m) onto { y : sum_i y_i = 0 }:
// subtracts the mean vector from every component.
std::vector<Vector> project_sum_zero(const std::vector<Vector>& u);

// Projection onto a MaskedBall: entries off the mask pass through, masked
// entries are radially scaled so their Frobenius norm is at most the radius.
Matrix project_masked_fro_ball(const Matrix& N, const MaskedBall& ball);

}  // namespace splitadmm::prox

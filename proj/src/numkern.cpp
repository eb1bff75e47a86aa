#include "splitadmm/numkern.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <string>

namespace splitadmm::numkern {

namespace {

void require_finite(const Matrix& M, const char* who) {
  if (!M.allFinite()) {
    throw NumericError(std::string(who) + ": input has non-finite entries");
  }
}

}  // namespace

SymEigResult sym_eig(const Matrix& M) {
  if (M.rows() != M.cols()) {
    throw DimensionError("sym_eig: matrix is " + std::to_string(M.rows()) + "x" +
                         std::to_string(M.cols()) + ", expected square");
  }
  require_finite(M, "sym_eig");

  const Matrix S = 0.5 * (M + M.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(S);
  if (es.info() != Eigen::Success) {
    throw NumericError("sym_eig: eigendecomposition failed to converge");
  }

  // Eigen returns ascending order; flip to descending.
  const Index n = S.rows();
  SymEigResult out;
  out.basis.resize(n, n);
  out.eigenvalues.resize(n);
  for (Index i = 0; i < n; ++i) {
    out.eigenvalues[i] = es.eigenvalues()[n - 1 - i];
    out.basis.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return out;
}

SvdResult svd(const Matrix& M) {
  if (M.size() == 0) {
    throw DimensionError("svd: empty matrix");
  }
  require_finite(M, "svd");

  Eigen::JacobiSVD<Matrix> dec(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return SvdResult{dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

double spectral_radius_gram(const Matrix& A, double tol) {
  if (A.size() == 0) {
    throw DimensionError("spectral_radius_gram: empty matrix");
  }
  if (!(tol > 0.0)) {
    throw ArgumentError("spectral_radius_gram: tol must be positive");
  }
  require_finite(A, "spectral_radius_gram");
  if (A.isZero(0.0)) {
    return 0.0;
  }

  const double stop = std::min(tol, 1e-10);
  Vector v = Vector::Ones(A.cols());
  v /= v.norm();
  double estimate = 0.0;
  for (int iter = 0; iter < 5000; ++iter) {
    Vector w = A.transpose() * (A * v);
    const double norm = w.norm();
    if (norm == 0.0) {
      return 0.0;  // ones vector lies in the null space of A
    }
    const double previous = estimate;
    estimate = v.dot(w);  // Rayleigh quotient of A^T A at unit v
    v = w / norm;
    if (iter > 0 && std::abs(estimate - previous) <= stop * std::abs(estimate)) {
      break;
    }
  }
  return estimate;
}

}  // namespace splitadmm::numkern

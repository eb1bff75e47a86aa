#include "splitadmm/problems/lvggms.hpp"

#include "splitadmm/numkern.hpp"
#include "splitadmm/prox.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <limits>

namespace splitadmm::problems {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// logdet via Cholesky; +inf signals "not positive definite".
double logdet_pd(const Matrix& M) {
  Eigen::LLT<Matrix> llt(0.5 * (M + M.transpose()));
  if (llt.info() != Eigen::Success) {
    return -kInf;
  }
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

}  // namespace

double lvggms_objective(const LvggmsInstance& instance, const Matrix& R, const Matrix& S,
                        const Matrix& L) {
  const double ld = logdet_pd(R);
  if (!std::isfinite(ld)) {
    return kInf;
  }
  return (R.cwiseProduct(instance.sigma_hat)).sum() - ld +
         instance.alpha1 * S.cwiseAbs().sum() + instance.alpha2 * L.trace();
}

SeparableProblem lvggms_build(const LvggmsInstance& instance, bool literal_svt_l_update) {
  const Index p = instance.sigma_hat.rows();
  if (instance.sigma_hat.cols() != p) {
    throw DimensionError("lvggms_build: sample covariance not square");
  }
  const double defect = (instance.sigma_hat - instance.sigma_hat.transpose()).norm();
  if (defect > 1e-8 * (1.0 + instance.sigma_hat.norm())) {
    throw ArgumentError("lvggms_build: sample covariance not symmetric");
  }
  if (!(instance.alpha1 > 0.0) || !(instance.alpha2 > 0.0)) {
    throw ArgumentError("lvggms_build: regularization weights must be positive");
  }

  const Matrix sigma = 0.5 * (instance.sigma_hat + instance.sigma_hat.transpose());
  const double a1 = instance.alpha1;
  const double a2 = instance.alpha2;
  const Index n2 = p * p;

  SeparableProblem problem;
  problem.rhs = Vector::Zero(n2);

  BlockObjective r_obj;
  r_obj.dim = n2;
  r_obj.value = [sigma, p](const Vector& v) {
    const Matrix R = unvec(v, p, p);
    const double ld = logdet_pd(R);
    return std::isfinite(ld) ? (R.cwiseProduct(sigma)).sum() - ld : kInf;
  };
  r_obj.prox = [sigma, p](const Vector& c, double w) {
    return vec(prox::logdet_quad_prox(sigma, unvec(c, p, p), w));
  };
  problem.blocks.push_back({std::move(r_obj), CouplingOp::scaled_identity(1.0, n2)});

  BlockObjective s_obj;
  s_obj.dim = n2;
  s_obj.value = [a1](const Vector& v) { return a1 * v.lpNorm<1>(); };
  s_obj.prox = [a1, p](const Vector& c, double w) {
    return vec(prox::matrix_shrink(unvec(c, p, p), a1 / w));
  };
  problem.blocks.push_back({std::move(s_obj), CouplingOp::scaled_identity(-1.0, n2)});

  BlockObjective l_obj;
  l_obj.dim = n2;
  l_obj.value = [a2, p](const Vector& v) {
    const Matrix L = unvec(v, p, p);
    const numkern::SymEigResult f = numkern::sym_eig(L);
    const double floor = -1e-8 * (1.0 + f.eigenvalues.cwiseAbs().maxCoeff());
    if (f.eigenvalues.minCoeff() < floor) {
      return kInf;
    }
    return a2 * L.trace();
  };
  if (literal_svt_l_update) {
    l_obj.prox = [a2, p](const Vector& c, double w) {
      return vec(prox::svt(unvec(c, p, p), a2 / w));
    };
  } else {
    l_obj.prox = [a2, p](const Vector& c, double w) {
      return vec(prox::psd_trace_prox(unvec(c, p, p), a2 / w));
    };
  }
  problem.blocks.push_back({std::move(l_obj), CouplingOp::scaled_identity(1.0, n2)});

  return problem;
}

}  // namespace splitadmm::problems

#include "splitadmm/problems/rpca.hpp"

#include "splitadmm/numkern.hpp"

#include <cmath>
#include <limits>

namespace splitadmm::problems {

SeparableProblem rpca_build(const RpcaInstance& instance) {
  const Index rows = instance.M.rows();
  const Index cols = instance.M.cols();
  if (rows == 0 || cols == 0) {
    throw DimensionError("rpca_build: empty observation matrix");
  }
  if (!(instance.tau_w > 0.0)) {
    throw ArgumentError("rpca_build: tau_w must be positive");
  }
  for (const auto& [i, j] : instance.ball.mask) {
    if (i < 0 || j < 0 || i >= rows || j >= cols) {
      throw ArgumentError("rpca_build: mask index out of bounds");
    }
  }

  const double tau_w = instance.tau_w;
  const prox::MaskedBall ball = instance.ball;
  const Index n2 = rows * cols;

  SeparableProblem problem;
  problem.rhs = vec(instance.M);

  BlockObjective l_obj;
  l_obj.dim = n2;
  l_obj.value = [rows, cols](const Vector& v) {
    return numkern::svd(unvec(v, rows, cols)).singulars.sum();
  };
  l_obj.prox = [rows, cols](const Vector& c, double w) {
    return vec(prox::svt(unvec(c, rows, cols), 1.0 / w));
  };
  problem.blocks.push_back({std::move(l_obj), CouplingOp::scaled_identity(1.0, n2)});

  BlockObjective s_obj;
  s_obj.dim = n2;
  s_obj.value = [tau_w](const Vector& v) { return tau_w * v.lpNorm<1>(); };
  s_obj.prox = [tau_w, rows, cols](const Vector& c, double w) {
    return vec(prox::matrix_shrink(unvec(c, rows, cols), tau_w / w));
  };
  problem.blocks.push_back({std::move(s_obj), CouplingOp::scaled_identity(1.0, n2)});

  BlockObjective z_obj;
  z_obj.dim = n2;
  z_obj.value = [ball, rows, cols](const Vector& v) {
    const Matrix Z = unvec(v, rows, cols);
    double sq = 0.0;
    for (const auto& [i, j] : ball.mask) {
      sq += Z(i, j) * Z(i, j);
    }
    const double slack = 1e-9 * (1.0 + ball.radius);
    return std::sqrt(sq) <= ball.radius + slack ? 0.0
                                                : std::numeric_limits<double>::infinity();
  };
  z_obj.prox = [ball, rows, cols](const Vector& c, double /*w*/) {
    return vec(prox::project_masked_fro_ball(unvec(c, rows, cols), ball));
  };
  problem.blocks.push_back({std::move(z_obj), CouplingOp::scaled_identity(1.0, n2)});

  return problem;
}

Index rpca_rank(const Matrix& L) {
  const Vector s = numkern::svd(L).singulars;
  if (s.size() == 0 || s[0] <= 0.0) {
    return 0;
  }
  const double cutoff = 1e-6 * s[0];
  Index rank = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s[i] > cutoff) ++rank;
  }
  return rank;
}

Index rpca_nnz(const Matrix& S) {
  Index count = 0;
  for (Index j = 0; j < S.cols(); ++j) {
    for (Index i = 0; i < S.rows(); ++i) {
      if (std::abs(S(i, j)) > 1e-8) ++count;
    }
  }
  return count;
}

}  // namespace splitadmm::problems

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "splitadmm/datagen.hpp"
#include "splitadmm/model.hpp"
#include "splitadmm/problems/bp.hpp"
#include "splitadmm/problems/lvggms.hpp"
#include "splitadmm/problems/rpca.hpp"

#include <cmath>
#include <limits>

using namespace splitadmm;
using datagen::Rng;

namespace {

SeparableProblem two_identity_l1_blocks(Index dim) {
  SeparableProblem problem;
  problem.rhs = Vector::Zero(dim);
  for (int i = 0; i < 2; ++i) {
    BlockObjective obj;
    obj.dim = dim;
    obj.value = [](const Vector& x) { return x.lpNorm<1>(); };
    obj.prox = [](const Vector& c, double w) { return prox::shrinkage(c, 1.0 / w); };
    problem.blocks.push_back({std::move(obj), CouplingOp::scaled_identity(1.0, dim)});
  }
  return problem;
}

}  // namespace

TEST_CASE("objective_value sums block values") {
  SeparableProblem problem = two_identity_l1_blocks(3);
  std::vector<Vector> zero = {Vector::Zero(3), Vector::Zero(3)};
  CHECK(objective_value(problem, zero) == 0.0);

  std::vector<Vector> x = {Vector::Zero(3), Vector::Zero(3)};
  x[0][0] = 1.5;
  x[1][1] = -0.7;
  CHECK(objective_value(problem, x) == doctest::Approx(2.2));

  std::vector<Vector> bad = {Vector::Zero(2), Vector::Zero(3)};
  CHECK_THROWS_AS(objective_value(problem, bad), DimensionError);
}

TEST_CASE("objective_value matches the term-by-term sum on a lvggms triple") {
  Rng rng(41);
  Matrix base = oracles::random_matrix(4, 4, rng);
  problems::LvggmsInstance inst;
  inst.sigma_hat = base * base.transpose() / 4.0 + Matrix::Identity(4, 4);
  inst.alpha1 = 0.3;
  inst.alpha2 = 0.7;
  const SeparableProblem problem = problems::lvggms_build(inst);

  Matrix rmat = oracles::random_matrix(4, 4, rng);
  rmat = rmat * rmat.transpose() + Matrix::Identity(4, 4);  // PD
  const Matrix smat = oracles::random_symmetric(4, rng);
  Matrix lmat = oracles::random_matrix(4, 2, rng);
  lmat = lmat * lmat.transpose();  // PSD

  const std::vector<Vector> x = {vec(rmat), vec(smat), vec(lmat)};
  CHECK(objective_value(problem, x) ==
        doctest::Approx(problems::lvggms_objective(inst, rmat, smat, lmat)).epsilon(1e-12));
}

TEST_CASE("primal_residual desk values and direct evaluation") {
  SeparableProblem problem = two_identity_l1_blocks(2);
  std::vector<Vector> x = {Vector::Zero(2), Vector::Zero(2)};
  x[0][0] = 1.0;
  x[1][0] = -1.0;  // e1 and -e1 cancel against b = 0
  CHECK(primal_residual(problem, x) == 0.0);

  Rng rng(42);
  problems::BpInstance inst = datagen::gen_bp(4, 9, 0.3, rng);
  const SeparableProblem bp = problems::bp_build(inst, 3);
  std::vector<Vector> xb;
  Vector stacked(9);
  Index at = 0;
  for (const auto& blk : bp.blocks) {
    xb.push_back(oracles::random_vector(blk.objective.dim, rng));
    stacked.segment(at, blk.objective.dim) = xb.back();
    at += blk.objective.dim;
  }
  CHECK(primal_residual(bp, xb) ==
        doctest::Approx((inst.A * stacked - inst.b).norm()).epsilon(1e-12));
}

TEST_CASE("block values are midpoint convex and proxes land in the domain") {
  Rng rng(43);
  problems::RpcaInstance rinst;
  rinst.M = oracles::random_matrix(4, 4, rng);
  rinst.tau_w = 0.5;
  rinst.ball.radius = 0.3;
  rinst.ball.mask = {{0, 0}, {1, 2}, {3, 3}};
  const SeparableProblem rpca = problems::rpca_build(rinst);

  for (const auto& blk : rpca.blocks) {
    for (int rep = 0; rep < 20; ++rep) {
      const Vector a = oracles::random_vector(blk.objective.dim, rng);
      const Vector b = oracles::random_vector(blk.objective.dim, rng);
      const double fa = blk.objective.value(a);
      const double fb = blk.objective.value(b);
      if (std::isfinite(fa) && std::isfinite(fb)) {
        CHECK(blk.objective.value(0.5 * (a + b)) <= 0.5 * (fa + fb) + 1e-9);
      }
      const Vector p = blk.objective.prox(a, 1.0 + std::abs(rng.normal()));
      CHECK(std::isfinite(blk.objective.value(p)));
    }
  }
}

TEST_CASE("config validation enforces the proximal weight bounds") {
  Rng rng(44);
  problems::BpInstance inst = datagen::gen_bp(5, 12, 0.25, rng);
  const SeparableProblem problem = problems::bp_build(inst, 2);

  SolverConfig config;
  config.algorithm = Algorithm::PrimalSplit;
  config.mode = SubproblemMode::Inexact;
  config.beta = 2.0;

  // defaults sit just above the bound
  const std::vector<double> taus = resolve_taus(problem, config);
  for (Index i = 0; i < problem.num_blocks(); ++i) {
    const double bound =
        config.beta * problem.blocks[static_cast<std::size_t>(i)].coupling.gram_spectral_radius();
    CHECK(taus[static_cast<std::size_t>(i)] == doctest::Approx(1.01 * bound));
    CHECK(taus[static_cast<std::size_t>(i)] > bound);
  }

  // explicit taus below the bound are rejected unless overridden
  config.tau = {1e-6, 1e-6};
  CHECK_THROWS_AS(validate_config(problem, config), ArgumentError);
  config.allow_tau_below_bound = true;
  CHECK_NOTHROW(validate_config(problem, config));

  // the dual split flips the bound to rho / beta
  SolverConfig dual = config;
  dual.tau.clear();
  dual.allow_tau_below_bound = false;
  dual.algorithm = Algorithm::DualSplit;
  const std::vector<double> dual_taus = resolve_taus(problem, dual);
  for (Index i = 0; i < problem.num_blocks(); ++i) {
    const double rho = problem.blocks[static_cast<std::size_t>(i)].coupling.gram_spectral_radius();
    CHECK(dual_taus[static_cast<std::size_t>(i)] == doctest::Approx(1.01 * rho / dual.beta));
  }

  SolverConfig multi;
  multi.algorithm = Algorithm::MultiBlock;
  multi.mode = SubproblemMode::Inexact;
  CHECK_THROWS_AS(validate_config(problem, multi), ArgumentError);

  SolverConfig short_ref;
  short_ref.algorithm = Algorithm::MultiBlock;
  short_ref.stop.kind = StopKind::RelativeErrorToReference;
  short_ref.stop.reference = Vector::Ones(3);  // problem stacks to 12
  CHECK_THROWS_AS(validate_config(problem, short_ref), DimensionError);
}

TEST_CASE("capability depends on coupled solvers and identity couplings") {
  Rng rng(45);
  problems::BpInstance inst = datagen::gen_bp(4, 8, 0.25, rng);
  const SeparableProblem bp = problems::bp_build(inst, 2);
  CHECK(bp.capability(0) == BlockCapability::ExactProx);  // has a coupled solver

  SeparableProblem ident = two_identity_l1_blocks(3);
  CHECK(ident.capability(0) == BlockCapability::ExactProx);  // identity collapse

  SeparableProblem stripped = bp;
  stripped.blocks[0].objective.coupled_solve = nullptr;
  CHECK(stripped.capability(0) == BlockCapability::ProximalGradientOnly);
}

TEST_CASE("states initialize to zero with the right shapes") {
  Rng rng(46);
  problems::BpInstance inst = datagen::gen_bp(4, 8, 0.25, rng);
  const SeparableProblem bp = problems::bp_build(inst, 2);

  SolverConfig config;
  config.algorithm = Algorithm::DualSplit;
  const IterateState s = initial_state(bp, config);
  CHECK(s.x.size() == 2);
  CHECK(s.lambda.size() == 4);
  CHECK(s.t.size() == 2);
  CHECK(s.lambda_copies.size() == 2);
  CHECK(s.iteration == 0);

  SolverConfig primal;
  primal.algorithm = Algorithm::PrimalSplit;
  const IterateState sp = initial_state(bp, primal);
  CHECK(sp.y.empty());  // y has no iterate before the first step
  CHECK(sp.lambda_copies.size() == 2);
}

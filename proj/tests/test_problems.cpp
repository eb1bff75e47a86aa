#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "splitadmm/datagen.hpp"
#include "splitadmm/numkern.hpp"
#include "splitadmm/problems/bp.hpp"
#include "splitadmm/problems/lvggms.hpp"
#include "splitadmm/problems/rpca.hpp"
#include "splitadmm/solvers.hpp"

#include <cmath>
#include <limits>

using namespace splitadmm;
using datagen::Rng;

TEST_CASE("bp_partition shapes") {
  const auto groups = problems::bp_partition(10, 3);
  REQUIRE(groups.size() == 3);
  CHECK(groups[0].second == 4);
  CHECK(groups[1].second == 3);
  CHECK(groups[2].second == 3);
  CHECK(groups[0].first == 0);
  CHECK(groups[1].first == 4);
  CHECK(groups[2].first == 7);
  CHECK_THROWS_AS(problems::bp_partition(4, 5), ArgumentError);
}

TEST_CASE("bp_build splits columns and reassembles the matrix") {
  Rng rng(61);
  problems::BpInstance inst = datagen::gen_bp(4, 10, 0.2, rng);

  const SeparableProblem whole = problems::bp_build(inst, 1);
  CHECK(whole.num_blocks() == 1);
  CHECK(whole.blocks[0].objective.dim == 10);

  const SeparableProblem scalar = problems::bp_build(inst, 10);
  CHECK(scalar.num_blocks() == 10);
  CHECK(scalar.blocks[0].objective.dim == 1);

  const SeparableProblem three = problems::bp_build(inst, 3);
  Matrix reassembled(4, 10);
  Index at = 0;
  for (const auto& blk : three.blocks) {
    reassembled.middleCols(at, blk.objective.dim) = blk.coupling.matrix();
    at += blk.objective.dim;
  }
  CHECK((reassembled - inst.A).norm() == 0.0);
  CHECK_THROWS_AS(problems::bp_build(inst, 11), ArgumentError);
}

TEST_CASE("bp coordinate update desk cases") {
  Rng rng(62);
  // unit-norm column: the update is shrinkage(a^T c, 1/beta)
  Matrix A = oracles::random_matrix(5, 3, rng);
  A.col(1) /= A.col(1).norm();
  const Vector b = oracles::random_vector(5, rng);
  Vector x = oracles::random_vector(3, rng);
  const Vector lambda = oracles::random_vector(5, rng);
  const double beta = 2.0;

  const Vector c = b + lambda / beta - (A * x - A.col(1) * x[1]);
  const double expected = prox::shrinkage(Vector::Constant(1, A.col(1).dot(c)), 1.0 / beta)[0];
  CHECK(problems::bp_coordinate_update(A, b, x, lambda, 1, beta) ==
        doctest::Approx(expected).epsilon(1e-12));

  // all-zero surroundings with b = 0 keep the coordinate at zero
  CHECK(problems::bp_coordinate_update(A, Vector::Zero(5), Vector::Zero(3), Vector::Zero(5),
                                       0, beta) == 0.0);

  Matrix with_zero = A;
  with_zero.col(2).setZero();
  CHECK_THROWS_AS(problems::bp_coordinate_update(with_zero, b, x, lambda, 2, beta),
                  ArgumentError);
}

TEST_CASE("bp coordinate update matches the scalar search oracle") {
  Rng rng(63);
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix A = oracles::random_matrix(5, 4, rng);
    const Vector b = oracles::random_vector(5, rng);
    const Vector x = oracles::random_vector(4, rng);
    const Vector lambda = oracles::random_vector(5, rng);
    const double beta = 0.5 + std::abs(rng.normal());
    const Index i = rep % 4;

    const Vector c = b + lambda / beta - (A * x - A.col(i) * x[i]);
    auto objective = [&](long double s) {
      long double quad = 0.0L;
      for (Index r = 0; r < c.size(); ++r) {
        const long double d = static_cast<long double>(A(r, i)) * s - c[r];
        quad += d * d;
      }
      return std::abs(s) + 0.5L * beta * quad;
    };
    const double brute =
        static_cast<double>(oracles::minimize_scalar_convex_ld(objective, -10.0L, 10.0L, 4001));
    const double ours = problems::bp_coordinate_update(A, b, x, lambda, i, beta);
    CHECK(std::abs(ours - brute) <= 1e-8 * (1.0 + std::abs(brute)));
  }
}

TEST_CASE("the l1 coupled solver satisfies first-order optimality") {
  Rng rng(64);
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix A = oracles::random_matrix(8, 12, rng);
    const Vector c = oracles::random_vector(8, rng);
    const double w = 0.2 + std::abs(rng.normal());
    const Vector x = problems::l1_coupled_argmin(A, c, w, Vector());
    CHECK(oracles::l1_quadratic_kkt_residual(A, c, w, x) <= 1e-9);
  }
}

namespace {

struct Lvggms2dOracle {
  double r, s, l;
};

// grid + coordinate refinement over (s, l) with r = s - l for the scalar
// latent-variable model
Lvggms2dOracle lvggms_scalar_oracle(double sigma, double a1, double a2) {
  auto value = [&](double s, double l) {
    const double r = s - l;
    if (r <= 0.0 || l < 0.0) return std::numeric_limits<double>::infinity();
    return r * sigma - std::log(r) + a1 * std::abs(s) + a2 * l;
  };
  double best_s = 1.0, best_l = 0.0, best = value(1.0, 0.0);
  for (int i = 0; i <= 400; ++i) {
    for (int j = 0; j <= 400; ++j) {
      const double s = -2.0 + i * 0.01;
      const double l = j * 0.01;
      const double v = value(s, l);
      if (v < best) {
        best = v;
        best_s = s;
        best_l = l;
      }
    }
  }
  for (int pass = 0; pass < 60; ++pass) {
    const double l_now = best_l;
    best_s = oracles::minimize_scalar_convex(
        [&](double s) { return value(s, l_now); }, best_s - 0.5, best_s + 0.5, 101);
    const double s_now = best_s;
    best_l = oracles::minimize_scalar_convex(
        [&](double l) { return value(s_now, l); }, std::max(0.0, best_l - 0.5),
        best_l + 0.5, 101);
  }
  return {best_s - best_l, best_s, best_l};
}

}  // namespace

TEST_CASE("all three algorithms solve the scalar latent-variable model") {
  problems::LvggmsInstance inst;
  inst.sigma_hat = Matrix::Constant(1, 1, 1.0);
  inst.alpha1 = 0.1;
  inst.alpha2 = 0.1;
  const SeparableProblem problem = problems::lvggms_build(inst);
  const Lvggms2dOracle expected = lvggms_scalar_oracle(1.0, 0.1, 0.1);

  for (const Algorithm algo :
       {Algorithm::MultiBlock, Algorithm::PrimalSplit, Algorithm::DualSplit}) {
    SolverConfig config;
    config.algorithm = algo;
    config.beta = algo == Algorithm::MultiBlock ? 0.5 : 0.5;
    config.max_iter = 20000;
    config.stop.kind = StopKind::LvggmsRule;
    config.stop.tolerance = 1e-10;
    const SolveResult result = solve(problem, config);
    CHECK(result.report.termination == Termination::Converged);
    CHECK(result.state.x[0][0] == doctest::Approx(expected.r).epsilon(1e-4));
    CHECK(result.state.x[1][0] == doctest::Approx(expected.s).epsilon(1e-4));
    CHECK(std::abs(result.state.x[2][0] - expected.l) <= 1e-4);
  }
}

TEST_CASE("an overwhelming l1 weight drives S to zero") {
  Rng rng(65);
  Matrix base = oracles::random_matrix(4, 4, rng);
  problems::LvggmsInstance inst;
  inst.sigma_hat = base * base.transpose() / 4.0 + Matrix::Identity(4, 4);
  inst.alpha1 = 1e6;
  inst.alpha2 = 0.1;
  const SeparableProblem problem = problems::lvggms_build(inst);

  SolverConfig config;
  config.algorithm = Algorithm::MultiBlock;
  config.beta = 0.5;
  config.max_iter = 3000;
  config.stop.kind = StopKind::LvggmsRule;
  config.stop.tolerance = 1e-9;
  const SolveResult result = solve(problem, config);
  CHECK(unvec(result.state.x[1], 4, 4).norm() <= 1e-8);
}

TEST_CASE("lvggms_build validates its input") {
  problems::LvggmsInstance inst;
  inst.sigma_hat = Matrix::Zero(3, 3);
  inst.sigma_hat(0, 2) = 5.0;  // badly asymmetric
  CHECK_THROWS_AS(problems::lvggms_build(inst), ArgumentError);

  inst.sigma_hat = Matrix::Identity(3, 3);
  inst.alpha1 = -1.0;
  CHECK_THROWS_AS(problems::lvggms_build(inst), ArgumentError);
}

namespace {

struct LvggmsState {
  Matrix R, S, L;
};

LvggmsState random_lvggms_state(Index p, Rng& rng) {
  Matrix R = oracles::random_matrix(p, p, rng);
  R = R * R.transpose() / p + Matrix::Identity(p, p);
  Matrix L = oracles::random_matrix(p, 2, rng);
  return {R, oracles::random_symmetric(p, rng), Matrix(L * L.transpose())};
}

}  // namespace

TEST_CASE("lvggms solver steps reproduce the closed-form update set") {
  Rng rng(66);
  const Index p = 5;
  Matrix base = oracles::random_matrix(p, p, rng);
  problems::LvggmsInstance inst;
  inst.sigma_hat = base * base.transpose() / p + 0.5 * Matrix::Identity(p, p);
  inst.alpha1 = 0.07;
  inst.alpha2 = 0.21;
  const SeparableProblem problem = problems::lvggms_build(inst);
  const double beta = 0.8;

  SUBCASE("gauss-seidel sweep") {
    SolverConfig config;
    config.algorithm = Algorithm::MultiBlock;
    config.beta = beta;
    IterateState state = initial_state(problem, config);
    const LvggmsState st = random_lvggms_state(p, rng);
    state.x = {vec(st.R), vec(st.S), vec(st.L)};
    const Matrix lambda = oracles::random_symmetric(p, rng);
    state.lambda = vec(lambda);

    multi_block_step(problem, state, config);

    const Matrix Rn = prox::logdet_quad_prox(
        inst.sigma_hat, Matrix(st.S - st.L + lambda / beta), beta);
    const Matrix Sn =
        prox::matrix_shrink(Matrix(Rn + st.L - lambda / beta), inst.alpha1 / beta);
    const Matrix Ln =
        prox::psd_trace_prox(Matrix(lambda / beta - Rn + Sn), inst.alpha2 / beta);
    CHECK((unvec(state.x[0], p, p) - Rn).norm() <= 1e-8);
    CHECK((unvec(state.x[1], p, p) - Sn).norm() <= 1e-8);
    CHECK((unvec(state.x[2], p, p) - Ln).norm() <= 1e-8);
  }

  SUBCASE("primal splitting iteration") {
    SolverConfig config;
    config.algorithm = Algorithm::PrimalSplit;
    config.beta = beta;
    IterateState state = initial_state(problem, config);
    const LvggmsState st = random_lvggms_state(p, rng);
    state.x = {vec(st.R), vec(st.S), vec(st.L)};
    std::vector<Matrix> lam;
    for (int i = 0; i < 3; ++i) {
      lam.push_back(oracles::random_symmetric(p, rng));
      state.lambda_copies[static_cast<std::size_t>(i)] = vec(lam.back());
    }

    primal_split_step(problem, state, config);

    // split update: projection of (A_i x_i - lambda_i/beta) onto sum zero
    std::vector<Vector> u = {vec(Matrix(st.R - lam[0] / beta)),
                             vec(Matrix(-st.S - lam[1] / beta)),
                             vec(Matrix(st.L - lam[2] / beta))};
    const auto y = prox::project_sum_zero(u);
    for (int i = 0; i < 3; ++i) {
      CHECK((state.y[static_cast<std::size_t>(i)] - y[static_cast<std::size_t>(i)]).norm() <=
            1e-10);
    }
    const Matrix y1 = unvec(y[0], p, p);
    const Matrix y2 = unvec(y[1], p, p);
    const Matrix y3 = unvec(y[2], p, p);
    const Matrix Rn =
        prox::logdet_quad_prox(inst.sigma_hat, Matrix(y1 + lam[0] / beta), beta);
    const Matrix Sn =
        prox::matrix_shrink(Matrix(-y2 - lam[1] / beta), inst.alpha1 / beta);
    const Matrix Ln =
        prox::psd_trace_prox(Matrix(y3 + lam[2] / beta), inst.alpha2 / beta);
    CHECK((unvec(state.x[0], p, p) - Rn).norm() <= 1e-8);
    CHECK((unvec(state.x[1], p, p) - Sn).norm() <= 1e-8);
    CHECK((unvec(state.x[2], p, p) - Ln).norm() <= 1e-8);
  }

  SUBCASE("dual splitting iteration") {
    SolverConfig config;
    config.algorithm = Algorithm::DualSplit;
    config.beta = beta;
    IterateState state = initial_state(problem, config);
    const LvggmsState st = random_lvggms_state(p, rng);
    state.x = {vec(st.R), vec(st.S), vec(st.L)};
    std::vector<Matrix> lam, tm;
    for (int i = 0; i < 3; ++i) {
      lam.push_back(oracles::random_symmetric(p, rng));
      tm.push_back(oracles::random_symmetric(p, rng));
      state.lambda_copies[static_cast<std::size_t>(i)] = vec(lam.back());
      state.t[static_cast<std::size_t>(i)] = vec(tm.back());
    }

    dual_split_step(problem, state, config);

    const Matrix lambda_new =
        (tm[0] + tm[1] + tm[2] + beta * (lam[0] + lam[1] + lam[2])) / (3.0 * beta);
    CHECK((unvec(state.lambda, p, p) - lambda_new).norm() <= 1e-10);

    // subproblem weight is 1/beta, so thresholds scale by beta
    const Matrix Rn = prox::logdet_quad_prox(
        inst.sigma_hat, Matrix(beta * lambda_new - tm[0]), 1.0 / beta);
    const Matrix Sn =
        prox::matrix_shrink(Matrix(-(beta * lambda_new) + tm[1]), inst.alpha1 * beta);
    const Matrix Ln =
        prox::psd_trace_prox(Matrix(beta * lambda_new - tm[2]), inst.alpha2 * beta);
    CHECK((unvec(state.x[0], p, p) - Rn).norm() <= 1e-8);
    CHECK((unvec(state.x[1], p, p) - Sn).norm() <= 1e-8);
    CHECK((unvec(state.x[2], p, p) - Ln).norm() <= 1e-8);
  }
}

TEST_CASE("rpca solver steps reproduce the closed-form update set") {
  Rng rng(67);
  const Index rows = 5, cols = 4;
  problems::RpcaInstance inst;
  inst.M = oracles::random_matrix(rows, cols, rng);
  inst.tau_w = 0.4;
  inst.ball.radius = 0.3;
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      if ((i * cols + j) % 3 != 0) inst.ball.mask.emplace_back(i, j);
    }
  }
  const SeparableProblem problem = problems::rpca_build(inst);
  const double beta = 0.9;

  auto random_state = [&](IterateState& state) {
    state.x = {vec(oracles::random_matrix(rows, cols, rng)),
               vec(oracles::random_matrix(rows, cols, rng)),
               vec(oracles::random_matrix(rows, cols, rng))};
  };

  SUBCASE("gauss-seidel sweep") {
    SolverConfig config;
    config.algorithm = Algorithm::MultiBlock;
    config.beta = beta;
    IterateState state = initial_state(problem, config);
    random_state(state);
    const Matrix L0 = unvec(state.x[0], rows, cols);
    const Matrix S0 = unvec(state.x[1], rows, cols);
    const Matrix Z0 = unvec(state.x[2], rows, cols);
    const Matrix lambda = oracles::random_matrix(rows, cols, rng);
    state.lambda = vec(lambda);

    multi_block_step(problem, state, config);

    const Matrix Ln = prox::svt(Matrix(inst.M + lambda / beta - S0 - Z0), 1.0 / beta);
    const Matrix Sn =
        prox::matrix_shrink(Matrix(inst.M + lambda / beta - Ln - Z0), inst.tau_w / beta);
    const Matrix anchor = inst.M + lambda / beta - Ln - Sn;
    const Matrix Zn = prox::project_masked_fro_ball(anchor, inst.ball);
    CHECK((unvec(state.x[0], rows, cols) - Ln).norm() <= 1e-8);
    CHECK((unvec(state.x[1], rows, cols) - Sn).norm() <= 1e-8);
    CHECK((unvec(state.x[2], rows, cols) - Zn).norm() <= 1e-8);
  }

  SUBCASE("primal splitting iteration") {
    SolverConfig config;
    config.algorithm = Algorithm::PrimalSplit;
    config.beta = beta;
    IterateState state = initial_state(problem, config);
    random_state(state);
    std::vector<Matrix> lam;
    for (int i = 0; i < 3; ++i) {
      lam.push_back(oracles::random_matrix(rows, cols, rng));
      state.lambda_copies[static_cast<std::size_t>(i)] = vec(lam.back());
    }
    const Matrix L0 = unvec(state.x[0], rows, cols);
    const Matrix S0 = unvec(state.x[1], rows, cols);
    const Matrix Z0 = unvec(state.x[2], rows, cols);

    primal_split_step(problem, state, config);

    std::vector<Vector> u = {vec(Matrix(L0 - inst.M / 3.0 - lam[0] / beta)),
                             vec(Matrix(S0 - inst.M / 3.0 - lam[1] / beta)),
                             vec(Matrix(Z0 - inst.M / 3.0 - lam[2] / beta))};
    const auto y = prox::project_sum_zero(u);
    const Matrix y1 = unvec(y[0], rows, cols);
    const Matrix y2 = unvec(y[1], rows, cols);
    const Matrix y3 = unvec(y[2], rows, cols);

    const Matrix Ln = prox::svt(Matrix(inst.M / 3.0 + y1 + lam[0] / beta), 1.0 / beta);
    const Matrix Sn = prox::matrix_shrink(Matrix(inst.M / 3.0 + y2 + lam[1] / beta),
                                          inst.tau_w / beta);
    const Matrix Zn = prox::project_masked_fro_ball(
        Matrix(inst.M / 3.0 + y3 + lam[2] / beta), inst.ball);
    CHECK((unvec(state.x[0], rows, cols) - Ln).norm() <= 1e-8);
    CHECK((unvec(state.x[1], rows, cols) - Sn).norm() <= 1e-8);
    CHECK((unvec(state.x[2], rows, cols) - Zn).norm() <= 1e-8);
  }

  SUBCASE("dual splitting iteration") {
    SolverConfig config;
    config.algorithm = Algorithm::DualSplit;
    config.beta = beta;
    IterateState state = initial_state(problem, config);
    random_state(state);
    std::vector<Matrix> lam, tm;
    for (int i = 0; i < 3; ++i) {
      lam.push_back(oracles::random_matrix(rows, cols, rng));
      tm.push_back(oracles::random_matrix(rows, cols, rng));
      state.lambda_copies[static_cast<std::size_t>(i)] = vec(lam.back());
      state.t[static_cast<std::size_t>(i)] = vec(tm.back());
    }

    dual_split_step(problem, state, config);

    const Matrix lambda_new =
        (inst.M + tm[0] + tm[1] + tm[2] + beta * (lam[0] + lam[1] + lam[2])) / (3.0 * beta);
    CHECK((unvec(state.lambda, rows, cols) - lambda_new).norm() <= 1e-10);

    const Matrix Ln = prox::svt(Matrix(beta * lambda_new - tm[0]), beta);
    const Matrix Sn = prox::matrix_shrink(Matrix(beta * lambda_new - tm[1]), inst.tau_w * beta);
    const Matrix Zn =
        prox::project_masked_fro_ball(Matrix(beta * lambda_new - tm[2]), inst.ball);
    CHECK((unvec(state.x[0], rows, cols) - Ln).norm() <= 1e-8);
    CHECK((unvec(state.x[1], rows, cols) - Sn).norm() <= 1e-8);
    CHECK((unvec(state.x[2], rows, cols) - Zn).norm() <= 1e-8);
  }
}

TEST_CASE("a loose ball radius passes anchors through") {
  Rng rng(68);
  problems::RpcaInstance inst;
  inst.M = oracles::random_matrix(4, 4, rng);
  inst.tau_w = 0.3;
  inst.ball.radius = 1e9;
  for (Index i = 0; i < 4; ++i) {
    for (Index j = 0; j < 4; ++j) inst.ball.mask.emplace_back(i, j);
  }
  const SeparableProblem problem = problems::rpca_build(inst);
  const Vector anchor = vec(oracles::random_matrix(4, 4, rng));
  CHECK((problem.blocks[2].objective.prox(anchor, 1.0) - anchor).norm() == 0.0);
}

TEST_CASE("rank-one observations with no sparse part are returned intact") {
  Rng rng(71);
  const Index n = 12;
  const Vector u = oracles::random_vector(n, rng);
  const Vector v = oracles::random_vector(n, rng);
  problems::RpcaInstance inst;
  inst.M = u * v.transpose();
  inst.tau_w = 1.0 / std::sqrt(static_cast<double>(n));
  inst.ball.radius = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) inst.ball.mask.emplace_back(i, j);
  }
  const SeparableProblem problem = problems::rpca_build(inst);

  SolverConfig config;
  config.algorithm = Algorithm::MultiBlock;
  config.beta = 0.25;
  config.max_iter = 4000;
  config.stop.kind = StopKind::RpcaRule;
  config.stop.tolerance = 1e-9;
  const SolveResult result = solve(problem, config);
  const Matrix L = unvec(result.state.x[0], n, n);
  const Matrix S = unvec(result.state.x[1], n, n);
  CHECK((L - inst.M).norm() <= 1e-5 * inst.M.norm());
  CHECK(S.cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("planted low-rank plus sparse structure is recovered") {
  Rng rng(72);
  problems::RpcaInstance inst = datagen::gen_rpca(20, 20, 2, 0.05, 1.0, 0.0, rng);
  const SeparableProblem problem = problems::rpca_build(inst);

  SolverConfig config;
  config.algorithm = Algorithm::MultiBlock;
  config.beta = 0.25;
  config.max_iter = 4000;
  config.stop.kind = StopKind::RpcaRule;
  config.stop.tolerance = 1e-7;
  const SolveResult result = solve(problem, config);
  const Matrix L = unvec(result.state.x[0], 20, 20);
  CHECK(problems::rpca_rank(L) == 2);
  CHECK((L - inst.planted_L).norm() <= 1e-2 * inst.planted_L.norm());
}

TEST_CASE("rpca_build validates the mask") {
  problems::RpcaInstance inst;
  inst.M = Matrix::Zero(3, 3);
  inst.tau_w = 0.5;
  inst.ball.mask.emplace_back(7, 0);
  CHECK_THROWS_AS(problems::rpca_build(inst), ArgumentError);
}

TEST_CASE("rank and support counting helpers") {
  Rng rng(73);
  const Matrix tall = oracles::random_matrix(6, 2, rng);
  CHECK(problems::rpca_rank(Matrix(tall * tall.transpose())) == 2);
  Matrix S = Matrix::Zero(3, 3);
  S(0, 0) = 0.5;
  S(2, 1) = -1e-9;  // below the support threshold
  CHECK(problems::rpca_nnz(S) == 1);
}

TEST_CASE("the literal thresholding flag swaps the low-rank update") {
  Rng rng(74);
  Matrix base = oracles::random_matrix(4, 4, rng);
  problems::LvggmsInstance inst;
  inst.sigma_hat = base * base.transpose() / 4.0 + Matrix::Identity(4, 4);
  inst.alpha1 = 0.1;
  inst.alpha2 = 0.2;
  const SeparableProblem clamped = problems::lvggms_build(inst, false);
  const SeparableProblem literal = problems::lvggms_build(inst, true);

  // indefinite anchor: the exact prox clamps at zero, plain thresholding keeps
  // shrunken negative directions
  const Matrix anchor = oracles::random_symmetric(4, rng);
  const Vector a = vec(anchor);
  const Matrix exact_up = unvec(clamped.blocks[2].objective.prox(a, 1.0), 4, 4);
  const Matrix literal_up = unvec(literal.blocks[2].objective.prox(a, 1.0), 4, 4);
  CHECK((exact_up - prox::psd_trace_prox(anchor, 0.2)).norm() <= 1e-12);
  CHECK((literal_up - prox::svt(anchor, 0.2)).norm() <= 1e-12);
  CHECK((exact_up - literal_up).norm() > 1e-8);

  // on a PSD anchor with large eigenvalues the two coincide
  Matrix psd = oracles::random_matrix(4, 4, rng);
  psd = psd * psd.transpose() + 3.0 * Matrix::Identity(4, 4);
  CHECK((unvec(clamped.blocks[2].objective.prox(vec(psd), 1.0), 4, 4) -
         unvec(literal.blocks[2].objective.prox(vec(psd), 1.0), 4, 4)).norm() <= 1e-10);
}

TEST_CASE("the three methods reach matching objectives on a fixed seed") {
  SUBCASE("basis pursuit") {
    Rng rng(5);
    auto inst = datagen::gen_bp(20, 60, 0.06, rng);
    double objs[3];
    const Algorithm algos[3] = {Algorithm::MultiBlock, Algorithm::PrimalSplit,
                                Algorithm::DualSplit};
    for (int i = 0; i < 3; ++i) {
      SolverConfig c;
      c.algorithm = algos[i];
      c.mode = i == 0 ? SubproblemMode::Exact : SubproblemMode::Inexact;
      c.beta = i == 2 ? 10.0 : 50.0 / inst.b.lpNorm<1>();
      c.max_iter = 4000;
      c.stop.kind = StopKind::RelativeErrorToReference;
      c.stop.reference = inst.planted;
      c.stop.tolerance = 1e-5;
      RunHooks h;
      h.record_x_history = false;
      const auto problem = problems::bp_build(inst, i == 0 ? 60 : 3);
      const auto r = solve(problem, c, h);
      REQUIRE(r.report.termination == Termination::Converged);
      objs[i] = objective_value(problem, r.state.x);
    }
    CHECK(std::abs(objs[0] - objs[1]) <= 1e-3 * std::abs(objs[1]));
    CHECK(std::abs(objs[0] - objs[2]) <= 1e-3 * std::abs(objs[2]));
    CHECK(std::abs(objs[1] - objs[2]) <= 1e-3 * std::abs(objs[2]));
  }

  SUBCASE("low-rank plus sparse") {
    Rng rng(3);
    auto inst = datagen::gen_rpca(24, 24, 2, 0.05, 0.85, 0.0, rng);
    const auto problem = problems::rpca_build(inst);
    double objs[3];
    const Algorithm algos[3] = {Algorithm::MultiBlock, Algorithm::PrimalSplit,
                                Algorithm::DualSplit};
    const double betas[3] = {0.1, 0.1, 10.0};
    for (int i = 0; i < 3; ++i) {
      SolverConfig c;
      c.algorithm = algos[i];
      c.beta = betas[i];
      c.max_iter = 2000;
      c.stop.kind = StopKind::RpcaRule;
      c.stop.tolerance = 1e-4;
      RunHooks h;
      h.record_x_history = false;
      const auto r = solve(problem, c, h);
      REQUIRE(r.report.termination == Termination::Converged);
      objs[i] = objective_value(problem, r.state.x);
    }
    CHECK(std::abs(objs[0] - objs[1]) <= 1e-3 * std::abs(objs[1]));
    CHECK(std::abs(objs[0] - objs[2]) <= 1e-3 * std::abs(objs[2]));
    CHECK(std::abs(objs[1] - objs[2]) <= 1e-3 * std::abs(objs[2]));
  }
}

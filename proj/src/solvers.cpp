#include "splitadmm/solvers.hpp"

#include "splitadmm/prox.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <string>

namespace splitadmm {

namespace {

std::size_t idx(Index i) { return static_cast<std::size_t>(i); }

bool all_finite(const std::vector<Vector>& xs) {
  for (const Vector& v : xs) {
    if (!v.allFinite()) return false;
  }
  return true;
}

std::vector<double> taus_for_mode(const SeparableProblem& problem, const SolverConfig& config) {
  if (config.mode == SubproblemMode::Inexact) {
    return resolve_taus(problem, config);
  }
  return {};
}

}  // namespace

Vector solve_block_coupled(const SeparableProblem::Block& block, const Vector& c,
                           double weight, const Vector& warm_start) {
  if (block.objective.coupled_solve) {
    return block.objective.coupled_solve(block.coupling, c, weight, warm_start);
  }
  if (block.coupling.is_scaled_identity()) {
    const double a = block.coupling.scale();
    if (a == 0.0) {
      throw CapabilityError("solve_block_coupled: zero coupling scale");
    }
    // ||a x - c||^2 = a^2 ||x - c/a||^2
    return block.objective.prox(c / a, weight * a * a);
  }
  throw CapabilityError(
      "solve_block_coupled: block has a general coupling matrix and no coupled "
      "solver; use the inexact (proximal gradient) mode");
}

void multi_block_step(const SeparableProblem& problem, IterateState& state,
                      const SolverConfig& config) {
  const Index m = problem.num_blocks();
  const double beta = config.beta;

  Vector r = -problem.rhs;
  for (Index i = 0; i < m; ++i) {
    r += problem.blocks[idx(i)].coupling.apply(state.x[idx(i)]);
  }

  for (Index i = 0; i < m; ++i) {
    const SeparableProblem::Block& blk = problem.blocks[idx(i)];
    r -= blk.coupling.apply(state.x[idx(i)]);
    // min f_i(x) + (beta/2)*||A_i x - (b + lambda/beta - sum_{j != i} A_j x_j)||^2
    const Vector c = state.lambda / beta - r;
    state.x[idx(i)] = solve_block_coupled(blk, c, beta, state.x[idx(i)]);
    r += blk.coupling.apply(state.x[idx(i)]);
  }

  state.lambda -= beta * r;
  ++state.iteration;
}

void primal_split_step(const SeparableProblem& problem, IterateState& state,
                       const SolverConfig& config) {
  const Index m = problem.num_blocks();
  const double beta = config.beta;
  const Vector b_share = problem.rhs / static_cast<double>(m);
  const std::vector<double> taus = taus_for_mode(problem, config);

  std::vector<Vector> u(idx(m));
  for (Index i = 0; i < m; ++i) {
    u[idx(i)] = problem.blocks[idx(i)].coupling.apply(state.x[idx(i)]) - b_share -
                state.lambda_copies[idx(i)] / beta;
  }
  state.y = prox::project_sum_zero(u);

  for (Index i = 0; i < m; ++i) {
    const SeparableProblem::Block& blk = problem.blocks[idx(i)];
    if (config.mode == SubproblemMode::Exact) {
      const Vector c = b_share + state.y[idx(i)] + state.lambda_copies[idx(i)] / beta;
      state.x[idx(i)] = solve_block_coupled(blk, c, beta, state.x[idx(i)]);
    } else {
      const double tau = taus[idx(i)];
      const Vector grad = blk.coupling.apply_adjoint(
          blk.coupling.apply(state.x[idx(i)]) - b_share - state.y[idx(i)] -
          state.lambda_copies[idx(i)] / beta);
      state.x[idx(i)] = blk.objective.prox(state.x[idx(i)] - (beta / tau) * grad, tau);
    }
  }

  for (Index i = 0; i < m; ++i) {
    state.lambda_copies[idx(i)] -=
        beta * (problem.blocks[idx(i)].coupling.apply(state.x[idx(i)]) - b_share -
                state.y[idx(i)]);
  }
  ++state.iteration;
}

void dual_split_step(const SeparableProblem& problem, IterateState& state,
                     const SolverConfig& config) {
  const Index m = problem.num_blocks();
  const double beta = config.beta;
  const std::vector<double> taus = taus_for_mode(problem, config);

  Vector acc = problem.rhs;
  for (Index i = 0; i < m; ++i) {
    acc += state.t[idx(i)] + beta * state.lambda_copies[idx(i)];
  }
  state.lambda = acc / (static_cast<double>(m) * beta);

  for (Index i = 0; i < m; ++i) {
    const SeparableProblem::Block& blk = problem.blocks[idx(i)];
    if (config.mode == SubproblemMode::Exact) {
      // min f_i(x) + (1/(2 beta))*||A_i x - (beta lambda - t_i)||^2
      const Vector c = beta * state.lambda - state.t[idx(i)];
      state.x[idx(i)] = solve_block_coupled(blk, c, 1.0 / beta, state.x[idx(i)]);
    } else {
      const double tau = taus[idx(i)];
      const Vector grad = blk.coupling.apply_adjoint(
          blk.coupling.apply(state.x[idx(i)]) - beta * state.lambda + state.t[idx(i)]);
      state.x[idx(i)] = blk.objective.prox(state.x[idx(i)] - grad / (tau * beta), tau);
    }
  }

  for (Index i = 0; i < m; ++i) {
    state.lambda_copies[idx(i)] =
        state.lambda - state.t[idx(i)] / beta -
        problem.blocks[idx(i)].coupling.apply(state.x[idx(i)]) / beta;
    state.t[idx(i)] -= beta * (state.lambda - state.lambda_copies[idx(i)]);
  }
  ++state.iteration;
}

namespace {

double guarded_ratio(double num, double den) { return num / (den > 0.0 ? den : 1.0); }

// Stopping metric; also reported as the per-iteration Error column.
double stop_metric(const StoppingRule& rule,
                   const std::vector<Vector>& prev_x, const std::vector<Vector>& curr_x,
                   double curr_residual, double prev_objective, double curr_objective) {
  switch (rule.kind) {
    case StopKind::RelativeErrorToReference: {
      const Vector stacked = stack_blocks(curr_x);
      if (stacked.size() != rule.reference.size()) {
        throw DimensionError("stopping rule: reference length mismatch");
      }
      return (stacked - rule.reference).norm() / rule.reference.norm();
    }
    case StopKind::LvggmsRule: {
      double metric = 0.0;
      double max_norm = 1.0;
      for (std::size_t i = 0; i < curr_x.size(); ++i) {
        const double prev_norm = prev_x[i].norm();
        metric = std::max(metric, guarded_ratio((curr_x[i] - prev_x[i]).norm(), prev_norm));
        max_norm = std::max(max_norm, prev_norm);
      }
      return std::max(metric, curr_residual / max_norm);
    }
    case StopKind::RpcaRule: {
      double metric = 0.0;
      for (std::size_t i = 0; i < 2 && i < curr_x.size(); ++i) {
        metric = std::max(metric, (curr_x[i] - prev_x[i]).norm() / (1.0 + prev_x[i].norm()));
      }
      if (std::isfinite(prev_objective)) {
        const double df = std::abs(curr_objective - prev_objective);
        // a zero previous objective falls back to the absolute difference
        metric = std::max(metric, prev_objective != 0.0 ? df / std::abs(prev_objective) : df);
      } else {
        metric = std::numeric_limits<double>::infinity();  // no previous objective yet
      }
      return metric;
    }
    case StopKind::ResidualOnly:
      return curr_residual;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

SolveResult solve(const SeparableProblem& problem, const SolverConfig& config,
                  const RunHooks& hooks) {
  validate_config(problem, config);

  SolveResult result;
  result.state = initial_state(problem, config);
  IterateState& state = result.state;
  ConvergenceReport& report = result.report;
  report.termination = Termination::MaxIterations;

  if (hooks.record_state_history) {
    report.state_history.push_back(state);
  }

  std::vector<Vector> running_sum;
  double prev_objective = objective_value(problem, state.x);
  const auto start = std::chrono::steady_clock::now();

  for (long k = 1; k <= config.max_iter; ++k) {
    const std::vector<Vector> prev_x = state.x;

    switch (config.algorithm) {
      case Algorithm::MultiBlock:
        multi_block_step(problem, state, config);
        break;
      case Algorithm::PrimalSplit:
        primal_split_step(problem, state, config);
        break;
      case Algorithm::DualSplit:
        dual_split_step(problem, state, config);
        break;
    }

    if (!all_finite(state.x)) {
      report.termination = Termination::NumericFailure;
      break;
    }

    IterationRecord rec;
    rec.k = k;
    rec.objective = objective_value(problem, state.x);
    rec.residual = primal_residual(problem, state.x);
    rec.error = stop_metric(config.stop, prev_x, state.x, rec.residual,
                            prev_objective, rec.objective);
    rec.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    prev_objective = rec.objective;

    report.records.push_back(rec);
    if (hooks.record_x_history) {
      report.x_history.push_back(state.x);
      if (running_sum.empty()) {
        running_sum = state.x;
      } else {
        for (std::size_t i = 0; i < running_sum.size(); ++i) {
          running_sum[i] += state.x[i];
        }
      }
    }
    if (hooks.record_state_history) {
      report.state_history.push_back(state);
    }
    if (hooks.observer) {
      hooks.observer(k, state, rec);
    }

    if (!std::isfinite(rec.residual) || std::isnan(rec.objective) ||
        (std::isinf(rec.objective) && rec.objective < 0.0)) {
      report.termination = Termination::NumericFailure;
      break;
    }
    if (rec.error <= config.stop.tolerance) {
      report.termination = Termination::Converged;
      break;
    }
  }

  if (!running_sum.empty()) {
    report.ergodic_average = running_sum;
    for (Vector& v : report.ergodic_average) {
      v /= static_cast<double>(report.records.size());
    }
  }
  return result;
}

std::vector<Vector> ergodic_average(const ConvergenceReport& report, long K) {
  if (K < 1 || K > static_cast<long>(report.x_history.size())) {
    throw ArgumentError("ergodic_average: K out of range");
  }
  std::vector<Vector> avg = report.x_history.front();
  for (long k = 1; k < K; ++k) {
    const auto& xs = report.x_history[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < avg.size(); ++i) {
      avg[i] += xs[i];
    }
  }
  for (Vector& v : avg) {
    v /= static_cast<double>(K);
  }
  return avg;
}

Vector stack_blocks(const std::vector<Vector>& x) {
  Index total = 0;
  for (const Vector& xi : x) total += xi.size();
  Vector out(total);
  Index at = 0;
  for (const Vector& xi : x) {
    out.segment(at, xi.size()) = xi;
    at += xi.size();
  }
  return out;
}

std::vector<Vector> split_blocks(const SeparableProblem& problem, const Vector& stacked) {
  std::vector<Vector> out;
  out.reserve(problem.blocks.size());
  Index at = 0;
  for (const auto& blk : problem.blocks) {
    if (at + blk.objective.dim > stacked.size()) {
      throw DimensionError("split_blocks: stacked vector too short");
    }
    out.push_back(stacked.segment(at, blk.objective.dim));
    at += blk.objective.dim;
  }
  if (at != stacked.size()) {
    throw DimensionError("split_blocks: stacked vector too long");
  }
  return out;
}

SeparableProblem primal_split_reformulation(const SeparableProblem& problem) {
  problem.validate();
  const Index m = problem.num_blocks();
  const Index l = problem.constraint_dim();
  const Vector b_share = problem.rhs / static_cast<double>(m);

  auto chunks = [l, m](const Vector& stacked) {
    std::vector<Vector> parts;
    parts.reserve(idx(m));
    for (Index i = 0; i < m; ++i) {
      parts.push_back(stacked.segment(i * l, l));
    }
    return parts;
  };

  // Linking block: indicator of sum_i y_i = 0; prox is the exact projection.
  BlockObjective y_obj;
  y_obj.dim = m * l;
  y_obj.value = [l, chunks](const Vector& ystack) {
    Vector sum = Vector::Zero(l);
    double scale = 1.0;
    for (const Vector& yi : chunks(ystack)) {
      sum += yi;
      scale = std::max(scale, yi.norm());
    }
    return sum.norm() <= 1e-9 * scale ? 0.0 : std::numeric_limits<double>::infinity();
  };
  y_obj.prox = [chunks](const Vector& c, double /*weight*/) {
    return stack_blocks(prox::project_sum_zero(chunks(c)));
  };

  // Stacked original blocks; both the prox and the exact coupled solve act
  // blockwise.
  Index xdim = 0;
  for (const auto& blk : problem.blocks) xdim += blk.objective.dim;

  std::vector<Index> offsets(idx(m), 0);
  {
    Index at = 0;
    for (Index i = 0; i < m; ++i) {
      offsets[idx(i)] = at;
      at += problem.blocks[idx(i)].objective.dim;
    }
  }

  Matrix block_diag = Matrix::Zero(m * l, xdim);
  for (Index i = 0; i < m; ++i) {
    const auto& op = problem.blocks[idx(i)].coupling;
    Matrix Ai = op.is_scaled_identity()
                    ? Matrix(op.scale() * Matrix::Identity(op.rows(), op.cols()))
                    : op.matrix();
    block_diag.block(i * l, offsets[idx(i)], l, problem.blocks[idx(i)].objective.dim) = Ai;
  }

  SeparableProblem refo;
  const SeparableProblem base = problem;  // value copy keeps lambdas self-contained

  BlockObjective x_obj;
  x_obj.dim = xdim;
  x_obj.value = [base](const Vector& xstack) {
    const std::vector<Vector> parts = split_blocks(base, xstack);
    return objective_value(base, parts);
  };
  x_obj.prox = [base, offsets, m](const Vector& c, double weight) {
    Vector out(c.size());
    for (Index i = 0; i < m; ++i) {
      const auto& blk = base.blocks[idx(i)];
      out.segment(offsets[idx(i)], blk.objective.dim) =
          blk.objective.prox(c.segment(offsets[idx(i)], blk.objective.dim), weight);
    }
    return out;
  };
  x_obj.coupled_solve = [base, offsets, m, l, xdim](const CouplingOp&, const Vector& c,
                                                    double weight, const Vector& warm) {
    Vector out(xdim);
    for (Index i = 0; i < m; ++i) {
      const auto& blk = base.blocks[idx(i)];
      const Vector wi = warm.size() == xdim
                            ? Vector(warm.segment(offsets[idx(i)], blk.objective.dim))
                            : Vector();
      out.segment(offsets[idx(i)], blk.objective.dim) =
          solve_block_coupled(blk, c.segment(i * l, l), weight, wi);
    }
    return out;
  };

  refo.blocks.push_back({std::move(y_obj), CouplingOp::scaled_identity(-1.0, m * l)});
  refo.blocks.push_back({std::move(x_obj), CouplingOp::dense(std::move(block_diag))});
  refo.rhs = Vector(m * l);
  for (Index i = 0; i < m; ++i) {
    refo.rhs.segment(i * l, l) = b_share;
  }
  return refo;
}

}  // namespace splitadmm

#pragma once

#include "splitadmm/model.hpp"

#include <functional>

namespace splitadmm {

// Exact block subproblem: argmin_x f(x) + (weight/2)*||A x - c||^2.
// Falls back to the plain prox when A is a scaled identity; throws
// CapabilityError when the block offers neither route. warm_start seeds
// iterative coupled solvers and is ignored by closed forms.
Vector solve_block_coupled(const SeparableProblem::Block& block, const Vector& c,
                           double weight, const Vector& warm_start);

// One Gauss-Seidel sweep of the multi-block method: each block minimizes the
// augmented Lagrangian with the other blocks frozen at their latest values,
// then the multiplier takes a gradient ascent step. Subproblems are always
// solved exactly.
void multi_block_step(const SeparableProblem& problem, IterateState& state,
                      const SolverConfig& config);

// One iteration of the primal splitting method: project the split variables
// onto the sum-zero hyperplane, update each block (exactly or by one proximal
// gradient step with weight tau_i), then update the per-block multipliers.
void primal_split_step(const SeparableProblem& problem, IterateState& state,
                       const SolverConfig& config);

// One iteration of the dual splitting method: closed-form update of the
// shared dual iterate, per-block primal subproblem (exact or proximal
// gradient), then the dual copies and their multipliers.
void dual_split_step(const SeparableProblem& problem, IterateState& state,
                     const SolverConfig& config);

struct RunHooks {
  // Called after every iteration with the post-update state; must not mutate.
  std::function<void(long, const IterateState&, const IterationRecord&)> observer;
  bool record_x_history = true;
  bool record_state_history = false;
};

struct SolveResult {
  IterateState state;
  ConvergenceReport report;
};

SolveResult solve(const SeparableProblem& problem, const SolverConfig& config,
                  const RunHooks& hooks = {});

// Mean of the first K recorded post-update iterates (k = 1..K).
std::vector<Vector> ergodic_average(const ConvergenceReport& report, long K);

// Two-block reformulation that introduces split variables y_i = A_i x_i - b/m
// with a sum-zero linking block. Block order is (y, x), so the multi-block
// method applied to it reproduces the primal splitting method exactly.
SeparableProblem primal_split_reformulation(const SeparableProblem& problem);

// Stacked-to-blocks helpers for problems whose reference solutions live in a
// single vector.
Vector stack_blocks(const std::vector<Vector>& x);
std::vector<Vector> split_blocks(const SeparableProblem& problem, const Vector& stacked);

}  // namespace splitadmm

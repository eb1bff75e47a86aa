#pragma once

// Shared helpers for tests that need converged reference solutions.

#include "splitadmm/solvers.hpp"

namespace test_support {

using namespace splitadmm;

struct ReferenceRun {
  std::vector<Vector> x;
  std::vector<Vector> lambda_copies;
  double objective = 0.0;
  long iterations = 0;
};

// Exact-mode run pushed far past the bound-check window: stops on a 1e-13
// successive-change metric or the iteration cap, whichever comes first.
inline ReferenceRun high_accuracy_reference(const SeparableProblem& problem,
                                            Algorithm algorithm, double beta,
                                            int max_iter) {
  SolverConfig config;
  config.algorithm = algorithm;
  config.mode = SubproblemMode::Exact;
  config.beta = beta;
  config.max_iter = max_iter;
  config.stop.kind = StopKind::LvggmsRule;
  config.stop.tolerance = 1e-13;
  RunHooks hooks;
  hooks.record_x_history = false;
  const SolveResult result = solve(problem, config, hooks);
  ReferenceRun ref;
  ref.x = result.state.x;
  ref.lambda_copies = result.state.lambda_copies;
  ref.objective = objective_value(problem, result.state.x);
  ref.iterations = static_cast<long>(result.report.records.size());
  return ref;
}

}  // namespace test_support

#pragma once

#include "splitadmm/model.hpp"

#include <vector>

namespace splitadmm::diagnostics {

// ||x - x_ref||_2 / ||x_ref||_2
double relative_error(const Vector& x, const Vector& x_ref);

// Per-block state snapshot used by the standalone stopping predicates.
struct TripleState {
  std::vector<Vector> x;
};

// max of the per-block relative changes and the scaled feasibility ratio;
// zero-norm denominators fall back to 1 so the first iteration is defined.
bool lvggms_stop(const SeparableProblem& problem, const std::vector<Vector>& prev,
                 const std::vector<Vector>& curr, double eps);

// max of the first two blocks' changes (1 + norm denominators) and the
// relative successive objective difference; a zero previous objective falls
// back to the absolute difference.
bool rpca_stop(const SeparableProblem& problem, const std::vector<Vector>& prev,
               const std::vector<Vector>& curr, double eps);

struct BoundViolation {
  long K = 0;
  double gap = 0.0;
  double bound = 0.0;
};

struct BoundCheckResult {
  long checked = 0;
  double constant = 0.0;                  // the C in gap <= C / (2K)
  std::vector<double> gaps;               // theta(ergodic x at K) - theta(x*)
  std::vector<double> bounds;             // C / (2K) for K = 1..checked
  std::vector<BoundViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Ergodic objective-gap bound for the primal splitting method:
// gap(K) <= C / (2K) with
// C = sum_i { ||lambda_i0||^2/beta + ||x_i* - x_i0||_{P_i}^2
//             + beta*||y_i* - A_i x_i0 + b/m||^2 },  y_i* = A_i x_i* - b/m.
// For exact subproblems the middle term carries the plain norm; for proximal
// gradient subproblems it carries P_i = tau_i I - beta A_i^T A_i, the weight
// the telescoping argument actually controls (the unweighted form is valid
// only when P_i has spectral norm at most one).
// The report must carry the iterate history; slack is 1e-8*(1+|theta(x*)|).
BoundCheckResult check_primal_bound(const ConvergenceReport& report,
                                    const SeparableProblem& problem,
                                    const std::vector<Vector>& x_star,
                                    const std::vector<Vector>& lambda0,
                                    const std::vector<Vector>& x0, double beta,
                                    SubproblemMode mode = SubproblemMode::Exact,
                                    const std::vector<double>& taus = {});

// Ergodic objective-gap bound for the dual splitting method:
// gap(K) <= C / (2K) with
// C = (beta/2) sum ||lambda_i0||^2 + (1/(2 beta)) sum ||t_i* - t_i0||^2
//     + (1/2) sum ||x_i* - x_i0||_{P_i}^2,
// P_i = 0 for exact subproblems and tau_i I - (1/beta) A_i^T A_i otherwise;
// t_i* = -A_i x_i*.
BoundCheckResult check_dual_bound(const ConvergenceReport& report,
                                  const SeparableProblem& problem,
                                  const std::vector<Vector>& x_star,
                                  const std::vector<Vector>& lambda_copies0,
                                  const std::vector<Vector>& t0,
                                  const std::vector<Vector>& x0, double beta,
                                  SubproblemMode mode, const std::vector<double>& taus);

// Lyapunov values V^k = ||x^k - x*||_T^2 + beta*||lambda_copies^k - ref||^2
// with T = diag(tau_i I), evaluated over the recorded state history (k = 0
// included when the run recorded it). The inexact dual splitting method makes
// this sequence non-increasing.
std::vector<double> dual_split_lyapunov_trace(const ConvergenceReport& report,
                                              const std::vector<Vector>& x_star,
                                              const std::vector<Vector>& lambda_copies_star,
                                              const std::vector<double>& taus, double beta);

}  // namespace splitadmm::diagnostics

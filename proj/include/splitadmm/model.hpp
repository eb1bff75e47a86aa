#pragma once

#include "splitadmm/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace splitadmm {

// Linear coupling map A_i : R^{n_i} -> R^l. Most matrix problems couple
// through (multiples of) the identity, which deserves a fast path and an
// exact Gram spectral radius.
class CouplingOp {
 public:
  static CouplingOp dense(Matrix A);
  static CouplingOp scaled_identity(double alpha, Index dim);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  bool is_scaled_identity() const { return scaled_identity_; }
  double scale() const;          // only for scaled-identity ops
  const Matrix& matrix() const;  // only for dense ops

  Vector apply(const Vector& x) const;
  Vector apply_adjoint(const Vector& r) const;

  // rho(A^T A); exact alpha^2 for scaled identities, power iteration (cached)
  // for dense operators.
  double gram_spectral_radius() const;

 private:
  CouplingOp() = default;
  bool scaled_identity_ = false;
  double alpha_ = 0.0;
  Matrix A_;
  Index rows_ = 0;
  Index cols_ = 0;
  mutable double gram_radius_ = -1.0;
};

// One separable term f_i together with the subproblem solvers it can offer.
//
//   value(x)             f_i(x), +inf outside the block's constraint set
//   prox(c, w)           argmin f_i(x) + (w/2)*||x - c||^2
//   coupled_solve(A,c,w,x0)  argmin f_i(x) + (w/2)*||A x - c||^2, warm-started
//                        at x0 (optional; only needed for exact subproblems
//                        with a non-identity A)
struct BlockObjective {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&, double)> prox;
  std::function<Vector(const CouplingOp&, const Vector&, double, const Vector&)>
      coupled_solve;
  Index dim = 0;
};

enum class BlockCapability { ExactProx, ProximalGradientOnly };

// min sum_i f_i(x_i)  s.t.  sum_i A_i x_i = b, m >= 2 blocks.
struct SeparableProblem {
  struct Block {
    BlockObjective objective;
    CouplingOp coupling;
  };

  std::vector<Block> blocks;
  Vector rhs;

  Index num_blocks() const { return static_cast<Index>(blocks.size()); }
  Index constraint_dim() const { return rhs.size(); }

  // A block supports exact subproblems when it has a coupled solver or when
  // its coupling is a scaled identity (the quadratic collapses to a prox).
  BlockCapability capability(Index block) const;

  void validate() const;
};

double objective_value(const SeparableProblem& problem, const std::vector<Vector>& x);

// ||sum_i A_i x_i - b||_2
double primal_residual(const SeparableProblem& problem, const std::vector<Vector>& x);

enum class Algorithm { MultiBlock, PrimalSplit, DualSplit };
enum class SubproblemMode { Exact, Inexact };

enum class StopKind {
  RelativeErrorToReference,  // ||x - ref||_2 / ||ref||_2 <= tol
  LvggmsRule,                // max of per-block relative changes and scaled feasibility
  RpcaRule,                  // max of first-two-block changes and objective change
  ResidualOnly               // ||sum A_i x_i - b||_2 <= tol
};

struct StoppingRule {
  StopKind kind = StopKind::ResidualOnly;
  double tolerance = 1e-5;
  Vector reference;  // stacked blocks; required by RelativeErrorToReference
};

struct SolverConfig {
  Algorithm algorithm = Algorithm::MultiBlock;
  SubproblemMode mode = SubproblemMode::Exact;
  double beta = 1.0;
  std::vector<double> tau;    // per-block proximal weights; empty -> defaults
  double tau_safety = 1.01;   // multiplier on the convergence lower bound
  int max_iter = 2000;
  StoppingRule stop;
  std::uint64_t seed = 0;
  bool allow_tau_below_bound = false;
};

// Per-block proximal weights for inexact runs. Defaults to
// safety * beta * rho(A_i^T A_i) for the primal split and
// safety * rho(A_i^T A_i) / beta for the dual split. Explicit taus below the
// convergence bound are rejected unless allow_tau_below_bound is set.
std::vector<double> resolve_taus(const SeparableProblem& problem, const SolverConfig& config);

void validate_config(const SeparableProblem& problem, const SolverConfig& config);

// Block iterates plus the splitting variables of whichever algorithm is
// running. Primal split: y and lambda_copies. Dual split: lambda (the shared
// dual iterate), lambda_copies and t. Multi-block: lambda only.
struct IterateState {
  std::vector<Vector> x;
  std::vector<Vector> y;
  Vector lambda;
  std::vector<Vector> lambda_copies;
  std::vector<Vector> t;
  long iteration = 0;
};

IterateState initial_state(const SeparableProblem& problem, const SolverConfig& config);

enum class Termination { Converged, MaxIterations, NumericFailure };

struct IterationRecord {
  long k = 0;
  double objective = 0.0;
  double residual = 0.0;     // ||sum A_i x_i - b||_2
  double error = 0.0;        // stopping-rule metric (NaN when undefined)
  double elapsed_seconds = 0.0;
};

struct ConvergenceReport {
  std::vector<IterationRecord> records;           // one per iteration, k = 1..
  std::vector<std::vector<Vector>> x_history;     // post-update iterates, k = 1..
  std::vector<IterateState> state_history;        // k = 0 initial, then k = 1..
  std::vector<Vector> ergodic_average;            // mean of x_history
  Termination termination = Termination::MaxIterations;

  long iterations() const { return static_cast<long>(records.size()); }
};

}  // namespace splitadmm

#include "splitadmm/diagnostics.hpp"

#include "splitadmm/solvers.hpp"

#include <cmath>
#include <string>

namespace splitadmm::diagnostics {

namespace {

std::size_t idx(Index i) { return static_cast<std::size_t>(i); }

void check_block_list(const SeparableProblem& problem, const std::vector<Vector>& xs,
                      const char* who) {
  if (static_cast<Index>(xs.size()) != problem.num_blocks()) {
    throw DimensionError(std::string(who) + ": block count mismatch");
  }
}

// theta(ergodic average at K) - theta(x*), for K = 1..checked, plus the
// violations against C/(2K) with the shared relative slack.
BoundCheckResult evaluate_gaps(const ConvergenceReport& report,
                               const SeparableProblem& problem,
                               const std::vector<Vector>& x_star, double constant) {
  if (report.x_history.empty()) {
    throw ArgumentError("bound check: report has no recorded iterates");
  }
  const double theta_star = objective_value(problem, x_star);
  const double slack = 1e-8 * (1.0 + std::abs(theta_star));

  BoundCheckResult out;
  out.constant = constant;
  out.checked = static_cast<long>(report.x_history.size());
  out.gaps.reserve(idx(out.checked));
  out.bounds.reserve(idx(out.checked));

  std::vector<Vector> sum = report.x_history.front();
  std::vector<Vector> avg(sum.size());
  for (long K = 1; K <= out.checked; ++K) {
    if (K > 1) {
      const auto& xs = report.x_history[static_cast<std::size_t>(K - 1)];
      for (std::size_t i = 0; i < sum.size(); ++i) {
        sum[i] += xs[i];
      }
    }
    for (std::size_t i = 0; i < sum.size(); ++i) {
      avg[i] = sum[i] / static_cast<double>(K);
    }
    const double gap = objective_value(problem, avg) - theta_star;
    const double bound = constant / (2.0 * static_cast<double>(K));
    out.gaps.push_back(gap);
    out.bounds.push_back(bound);
    if (gap > bound + slack) {
      out.violations.push_back({K, gap, bound});
    }
  }
  return out;
}

}  // namespace

double relative_error(const Vector& x, const Vector& x_ref) {
  if (x.size() != x_ref.size()) {
    throw DimensionError("relative_error: length mismatch");
  }
  const double ref_norm = x_ref.norm();
  if (ref_norm == 0.0) {
    throw ArgumentError("relative_error: zero reference");
  }
  return (x - x_ref).norm() / ref_norm;
}

bool lvggms_stop(const SeparableProblem& problem, const std::vector<Vector>& prev,
                 const std::vector<Vector>& curr, double eps) {
  check_block_list(problem, prev, "lvggms_stop");
  check_block_list(problem, curr, "lvggms_stop");
  double metric = 0.0;
  double max_norm = 1.0;
  for (std::size_t i = 0; i < curr.size(); ++i) {
    const double prev_norm = prev[i].norm();
    const double denom = prev_norm > 0.0 ? prev_norm : 1.0;
    metric = std::max(metric, (curr[i] - prev[i]).norm() / denom);
    max_norm = std::max(max_norm, prev_norm);
  }
  metric = std::max(metric, primal_residual(problem, curr) / max_norm);
  return metric <= eps;
}

bool rpca_stop(const SeparableProblem& problem, const std::vector<Vector>& prev,
               const std::vector<Vector>& curr, double eps) {
  check_block_list(problem, prev, "rpca_stop");
  check_block_list(problem, curr, "rpca_stop");
  double metric = 0.0;
  for (std::size_t i = 0; i < 2 && i < curr.size(); ++i) {
    metric = std::max(metric, (curr[i] - prev[i]).norm() / (1.0 + prev[i].norm()));
  }
  const double f_prev = objective_value(problem, prev);
  const double f_curr = objective_value(problem, curr);
  if (std::isfinite(f_prev) && std::isfinite(f_curr)) {
    const double df = std::abs(f_curr - f_prev);
    metric = std::max(metric, f_prev != 0.0 ? df / std::abs(f_prev) : df);
  } else {
    return false;
  }
  return metric <= eps;
}

BoundCheckResult check_primal_bound(const ConvergenceReport& report,
                                    const SeparableProblem& problem,
                                    const std::vector<Vector>& x_star,
                                    const std::vector<Vector>& lambda0,
                                    const std::vector<Vector>& x0, double beta,
                                    SubproblemMode mode, const std::vector<double>& taus) {
  check_block_list(problem, x_star, "check_primal_bound");
  check_block_list(problem, x0, "check_primal_bound");
  if (static_cast<Index>(lambda0.size()) != problem.num_blocks()) {
    throw ArgumentError("check_primal_bound: need one multiplier copy per block");
  }
  const Index m = problem.num_blocks();
  if (mode == SubproblemMode::Inexact && static_cast<Index>(taus.size()) != m) {
    throw ArgumentError("check_primal_bound: inexact mode needs per-block taus");
  }
  const Vector b_share = problem.rhs / static_cast<double>(m);

  double constant = 0.0;
  for (Index i = 0; i < m; ++i) {
    const auto& op = problem.blocks[idx(i)].coupling;
    const Vector y_star = op.apply(x_star[idx(i)]) - b_share;
    const Vector d = x_star[idx(i)] - x0[idx(i)];
    constant += lambda0[idx(i)].squaredNorm() / beta;
    if (mode == SubproblemMode::Inexact) {
      constant += taus[idx(i)] * d.squaredNorm() - beta * op.apply(d).squaredNorm();
    } else {
      constant += d.squaredNorm();
    }
    constant += beta * (y_star - op.apply(x0[idx(i)]) + b_share).squaredNorm();
  }
  return evaluate_gaps(report, problem, x_star, constant);
}

BoundCheckResult check_dual_bound(const ConvergenceReport& report,
                                  const SeparableProblem& problem,
                                  const std::vector<Vector>& x_star,
                                  const std::vector<Vector>& lambda_copies0,
                                  const std::vector<Vector>& t0,
                                  const std::vector<Vector>& x0, double beta,
                                  SubproblemMode mode, const std::vector<double>& taus) {
  check_block_list(problem, x_star, "check_dual_bound");
  check_block_list(problem, x0, "check_dual_bound");
  const Index m = problem.num_blocks();
  if (static_cast<Index>(lambda_copies0.size()) != m ||
      static_cast<Index>(t0.size()) != m) {
    throw ArgumentError("check_dual_bound: need one multiplier and copy per block");
  }
  if (mode == SubproblemMode::Inexact && static_cast<Index>(taus.size()) != m) {
    throw ArgumentError("check_dual_bound: inexact mode needs per-block taus");
  }

  double constant = 0.0;
  for (Index i = 0; i < m; ++i) {
    const auto& op = problem.blocks[idx(i)].coupling;
    const Vector t_star = -op.apply(x_star[idx(i)]);
    constant += 0.5 * beta * lambda_copies0[idx(i)].squaredNorm();
    constant += (t_star - t0[idx(i)]).squaredNorm() / (2.0 * beta);
    if (mode == SubproblemMode::Inexact) {
      const Vector d = x_star[idx(i)] - x0[idx(i)];
      constant += 0.5 * (taus[idx(i)] * d.squaredNorm() -
                         op.apply(d).squaredNorm() / beta);
    }
  }
  return evaluate_gaps(report, problem, x_star, constant);
}

std::vector<double> dual_split_lyapunov_trace(const ConvergenceReport& report,
                                              const std::vector<Vector>& x_star,
                                              const std::vector<Vector>& lambda_copies_star,
                                              const std::vector<double>& taus, double beta) {
  if (report.state_history.empty()) {
    throw ArgumentError("dual_split_lyapunov_trace: report has no state history");
  }
  std::vector<double> trace;
  trace.reserve(report.state_history.size());
  for (const IterateState& s : report.state_history) {
    if (s.lambda_copies.size() != lambda_copies_star.size() ||
        s.x.size() != x_star.size()) {
      throw ArgumentError("dual_split_lyapunov_trace: state lacks dual copies");
    }
    double v = 0.0;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      v += taus[i] * (s.x[i] - x_star[i]).squaredNorm();
      v += beta * (s.lambda_copies[i] - lambda_copies_star[i]).squaredNorm();
    }
    trace.push_back(v);
  }
  return trace;
}

}  // namespace splitadmm::diagnostics

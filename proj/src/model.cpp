#include "splitadmm/model.hpp"

#include "splitadmm/numkern.hpp"

#include <cmath>
#include <string>

namespace splitadmm {

CouplingOp CouplingOp::dense(Matrix A) {
  if (A.size() == 0) {
    throw DimensionError("CouplingOp: empty matrix");
  }
  if (!A.allFinite()) {
    throw NumericError("CouplingOp: non-finite entries");
  }
  CouplingOp op;
  op.scaled_identity_ = false;
  op.rows_ = A.rows();
  op.cols_ = A.cols();
  op.A_ = std::move(A);
  return op;
}

CouplingOp CouplingOp::scaled_identity(double alpha, Index dim) {
  if (dim <= 0) {
    throw DimensionError("CouplingOp: non-positive dimension");
  }
  if (!std::isfinite(alpha)) {
    throw NumericError("CouplingOp: non-finite scale");
  }
  CouplingOp op;
  op.scaled_identity_ = true;
  op.alpha_ = alpha;
  op.rows_ = dim;
  op.cols_ = dim;
  return op;
}

double CouplingOp::scale() const {
  if (!scaled_identity_) {
    throw ArgumentError("CouplingOp::scale: dense operator");
  }
  return alpha_;
}

const Matrix& CouplingOp::matrix() const {
  if (scaled_identity_) {
    throw ArgumentError("CouplingOp::matrix: scaled-identity operator");
  }
  return A_;
}

Vector CouplingOp::apply(const Vector& x) const {
  if (x.size() != cols_) {
    throw DimensionError("CouplingOp::apply: length " + std::to_string(x.size()) +
                         ", expected " + std::to_string(cols_));
  }
  return scaled_identity_ ? Vector(alpha_ * x) : Vector(A_ * x);
}

Vector CouplingOp::apply_adjoint(const Vector& r) const {
  if (r.size() != rows_) {
    throw DimensionError("CouplingOp::apply_adjoint: length " + std::to_string(r.size()) +
                         ", expected " + std::to_string(rows_));
  }
  return scaled_identity_ ? Vector(alpha_ * r) : Vector(A_.transpose() * r);
}

double CouplingOp::gram_spectral_radius() const {
  if (scaled_identity_) {
    return alpha_ * alpha_;
  }
  if (gram_radius_ < 0.0) {
    gram_radius_ = numkern::spectral_radius_gram(A_);
  }
  return gram_radius_;
}

BlockCapability SeparableProblem::capability(Index block) const {
  const Block& blk = blocks.at(static_cast<std::size_t>(block));
  if (blk.objective.coupled_solve || blk.coupling.is_scaled_identity()) {
    return BlockCapability::ExactProx;
  }
  return BlockCapability::ProximalGradientOnly;
}

void SeparableProblem::validate() const {
  if (blocks.size() < 2) {
    throw ArgumentError("SeparableProblem: need at least 2 blocks");
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Block& blk = blocks[i];
    if (!blk.objective.value || !blk.objective.prox) {
      throw ArgumentError("SeparableProblem: block " + std::to_string(i) +
                          " lacks value or prox");
    }
    if (blk.objective.dim != blk.coupling.cols()) {
      throw DimensionError("SeparableProblem: block " + std::to_string(i) +
                           " dimension mismatch with coupling");
    }
    if (blk.coupling.rows() != rhs.size()) {
      throw DimensionError("SeparableProblem: block " + std::to_string(i) +
                           " coupling rows != rhs length");
    }
  }
}

namespace {

void check_conformal(const SeparableProblem& problem, const std::vector<Vector>& x,
                     const char* who) {
  if (static_cast<Index>(x.size()) != problem.num_blocks()) {
    throw DimensionError(std::string(who) + ": block count mismatch");
  }
  for (Index i = 0; i < problem.num_blocks(); ++i) {
    if (x[static_cast<std::size_t>(i)].size() != problem.blocks[static_cast<std::size_t>(i)].objective.dim) {
      throw DimensionError(std::string(who) + ": block " + std::to_string(i) +
                           " length mismatch");
    }
  }
}

}  // namespace

double objective_value(const SeparableProblem& problem, const std::vector<Vector>& x) {
  check_conformal(problem, x, "objective_value");
  double total = 0.0;
  for (Index i = 0; i < problem.num_blocks(); ++i) {
    total += problem.blocks[static_cast<std::size_t>(i)].objective.value(
        x[static_cast<std::size_t>(i)]);
  }
  return total;
}

double primal_residual(const SeparableProblem& problem, const std::vector<Vector>& x) {
  check_conformal(problem, x, "primal_residual");
  Vector r = -problem.rhs;
  for (Index i = 0; i < problem.num_blocks(); ++i) {
    r += problem.blocks[static_cast<std::size_t>(i)].coupling.apply(
        x[static_cast<std::size_t>(i)]);
  }
  return r.norm();
}

std::vector<double> resolve_taus(const SeparableProblem& problem, const SolverConfig& config) {
  const Index m = problem.num_blocks();
  std::vector<double> bounds(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) {
    const double rho = problem.blocks[static_cast<std::size_t>(i)].coupling.gram_spectral_radius();
    bounds[static_cast<std::size_t>(i)] =
        config.algorithm == Algorithm::DualSplit ? rho / config.beta : config.beta * rho;
  }

  std::vector<double> taus;
  if (config.tau.empty()) {
    taus.resize(static_cast<std::size_t>(m));
    for (Index i = 0; i < m; ++i) {
      taus[static_cast<std::size_t>(i)] = config.tau_safety * bounds[static_cast<std::size_t>(i)];
    }
  } else {
    if (static_cast<Index>(config.tau.size()) != m) {
      throw DimensionError("resolve_taus: tau list length != block count");
    }
    taus = config.tau;
  }

  for (Index i = 0; i < m; ++i) {
    const double tau = taus[static_cast<std::size_t>(i)];
    if (!(tau > 0.0)) {
      throw ArgumentError("resolve_taus: tau must be positive");
    }
    if (!config.allow_tau_below_bound && tau <= bounds[static_cast<std::size_t>(i)]) {
      throw ArgumentError("resolve_taus: tau[" + std::to_string(i) + "] = " +
                          std::to_string(tau) + " violates the convergence bound " +
                          std::to_string(bounds[static_cast<std::size_t>(i)]));
    }
  }
  return taus;
}

void validate_config(const SeparableProblem& problem, const SolverConfig& config) {
  problem.validate();
  if (!(config.beta > 0.0)) {
    throw ArgumentError("SolverConfig: beta must be positive");
  }
  if (config.max_iter < 1) {
    throw ArgumentError("SolverConfig: max_iter must be at least 1");
  }
  if (!(config.stop.tolerance > 0.0)) {
    throw ArgumentError("SolverConfig: stopping tolerance must be positive");
  }
  if (config.stop.kind == StopKind::RelativeErrorToReference) {
    if (config.stop.reference.size() == 0) {
      throw ArgumentError("SolverConfig: relative-error rule needs a reference");
    }
    if (config.stop.reference.norm() == 0.0) {
      throw ArgumentError("SolverConfig: relative-error reference has zero norm");
    }
    Index total = 0;
    for (const auto& blk : problem.blocks) total += blk.objective.dim;
    if (config.stop.reference.size() != total) {
      throw DimensionError("SolverConfig: reference length != stacked block dimension");
    }
  }
  if (config.mode == SubproblemMode::Inexact) {
    if (config.algorithm == Algorithm::MultiBlock) {
      throw ArgumentError("SolverConfig: the multi-block algorithm has no inexact mode");
    }
    resolve_taus(problem, config);  // throws on tau violations
  }
}

IterateState initial_state(const SeparableProblem& problem, const SolverConfig& config) {
  // Everything starts at zero; the primal split's y has no k = 0 value (the
  // first step computes y^1 from x^0 and the multipliers).
  IterateState s;
  const Index m = problem.num_blocks();
  s.x.reserve(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) {
    s.x.emplace_back(Vector::Zero(problem.blocks[static_cast<std::size_t>(i)].objective.dim));
  }
  const Vector zero_l = Vector::Zero(problem.constraint_dim());
  switch (config.algorithm) {
    case Algorithm::MultiBlock:
      s.lambda = zero_l;
      break;
    case Algorithm::PrimalSplit:
      s.lambda_copies.assign(static_cast<std::size_t>(m), zero_l);
      break;
    case Algorithm::DualSplit:
      s.lambda = zero_l;
      s.lambda_copies.assign(static_cast<std::size_t>(m), zero_l);
      s.t.assign(static_cast<std::size_t>(m), zero_l);
      break;
  }
  s.iteration = 0;
  return s;
}

}  // namespace splitadmm

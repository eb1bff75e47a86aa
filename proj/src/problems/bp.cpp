#include "splitadmm/problems/bp.hpp"

#include "splitadmm/prox.hpp"

#include <cmath>
#include <string>

namespace splitadmm::problems {

namespace {

double soft_scalar(double v, double t) {
  const double m = std::abs(v) - t;
  return m > 0.0 ? (v > 0.0 ? m : -m) : 0.0;
}

}  // namespace

std::vector<std::pair<Index, Index>> bp_partition(Index p, Index m) {
  if (m < 1 || m > p) {
    throw ArgumentError("bp_partition: need 1 <= m <= p");
  }
  std::vector<std::pair<Index, Index>> groups;
  groups.reserve(static_cast<std::size_t>(m));
  const Index base = p / m;
  const Index extra = p % m;
  Index at = 0;
  for (Index i = 0; i < m; ++i) {
    const Index len = base + (i < extra ? 1 : 0);
    groups.emplace_back(at, len);
    at += len;
  }
  return groups;
}

Vector l1_coupled_argmin(const Matrix& A, const Vector& c, double weight,
                         const Vector& warm_start) {
  const Index n = A.cols();
  if (c.size() != A.rows()) {
    throw DimensionError("l1_coupled_argmin: rhs length mismatch");
  }
  if (!(weight > 0.0)) {
    throw ArgumentError("l1_coupled_argmin: weight must be positive");
  }

  Vector x = warm_start.size() == n ? warm_start : Vector::Zero(n);
  Vector col_sq(n);
  for (Index j = 0; j < n; ++j) {
    col_sq[j] = A.col(j).squaredNorm();
    if (col_sq[j] == 0.0) {
      throw ArgumentError("l1_coupled_argmin: column " + std::to_string(j) + " is zero");
    }
  }

  Vector r = A * x - c;
  constexpr int kMaxSweeps = 20000;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double max_change = 0.0;
    double max_abs = 0.0;
    for (Index j = 0; j < n; ++j) {
      const double old = x[j];
      // 1-D subproblem: min |s| + (weight/2)*||r - a_j old + a_j s||^2
      const double g = A.col(j).dot(r) - col_sq[j] * old;
      const double next = soft_scalar(-g / col_sq[j], 1.0 / (weight * col_sq[j]));
      if (next != old) {
        r += (next - old) * A.col(j);
        x[j] = next;
      }
      max_change = std::max(max_change, std::abs(next - old));
      max_abs = std::max(max_abs, std::abs(next));
    }
    if (max_change <= 1e-14 * (1.0 + max_abs)) {
      break;
    }
  }
  return x;
}

double bp_coordinate_update(const Matrix& A, const Vector& b, const Vector& x,
                            const Vector& lambda, Index i, double beta) {
  if (i < 0 || i >= A.cols()) {
    throw ArgumentError("bp_coordinate_update: column index out of range");
  }
  const double sq = A.col(i).squaredNorm();
  if (sq == 0.0) {
    throw ArgumentError("bp_coordinate_update: singular (zero) column");
  }
  const Vector c = b + lambda / beta - (A * x - A.col(i) * x[i]);
  return soft_scalar(A.col(i).dot(c) / sq, 1.0 / (beta * sq));
}

SeparableProblem bp_build(const BpInstance& instance, Index m) {
  const Index p = instance.A.cols();
  if (instance.A.rows() != instance.b.size()) {
    throw DimensionError("bp_build: A rows != b length");
  }
  if (m > p) {
    throw ArgumentError("bp_build: more blocks than columns");
  }
  const auto groups = bp_partition(p, m);

  SeparableProblem problem;
  problem.rhs = instance.b;
  problem.blocks.reserve(groups.size());
  for (const auto& [start, len] : groups) {
    Matrix Ai = instance.A.middleCols(start, len);

    BlockObjective obj;
    obj.dim = len;
    obj.value = [](const Vector& xi) { return xi.lpNorm<1>(); };
    obj.prox = [](const Vector& c, double w) { return prox::shrinkage(c, 1.0 / w); };
    if (len == 1) {
      obj.coupled_solve = [](const CouplingOp& A, const Vector& c, double w,
                             const Vector&) {
        const Vector& a = A.matrix().col(0);
        const double sq = a.squaredNorm();
        if (sq == 0.0) {
          throw ArgumentError("bp block: singular (zero) column");
        }
        Vector out(1);
        out[0] = soft_scalar(a.dot(c) / sq, 1.0 / (w * sq));
        return out;
      };
    } else {
      obj.coupled_solve = [](const CouplingOp& A, const Vector& c, double w,
                             const Vector& warm) {
        return l1_coupled_argmin(A.matrix(), c, w, warm);
      };
    }

    problem.blocks.push_back({std::move(obj), CouplingOp::dense(std::move(Ai))});
  }
  return problem;
}

}  // namespace splitadmm::problems

#pragma once

#include "splitadmm/model.hpp"

#include <utility>
#include <vector>

namespace splitadmm::problems {

// min ||x||_1  s.t.  A x = b, optionally with a planted solution for
// relative-error reporting.
struct BpInstance {
  Matrix A;
  Vector b;
  Vector planted;  // empty when unknown
  bool has_planted() const { return planted.size() > 0; }
};

// Contiguous column groups: the first (p mod m) groups get one extra column.
std::vector<std::pair<Index, Index>> bp_partition(Index p, Index m);

// Builds the m-block problem: block i carries the l1 norm over its column
// group with the corresponding column submatrix as coupling. Every block has
// an exact coupled solver (closed form for single columns, cyclic coordinate
// descent otherwise).
SeparableProblem bp_build(const BpInstance& instance, Index m);

// argmin_x ||x||_1 + (weight/2)*||A x - c||^2 by cyclic coordinate descent
// with closed-form coordinate minimizers. Deterministic; iterates until the
// sweep change is at machine-level or the sweep cap is hit.
Vector l1_coupled_argmin(const Matrix& A, const Vector& c, double weight,
                         const Vector& warm_start);

// Closed-form coordinate minimizer of the multi-block sweep on the m = p
// split: argmin_s |s| + (beta/2)*||residual_without_i + a_i s||^2 where
// x carries the in-progress sweep values and column i is excluded.
double bp_coordinate_update(const Matrix& A, const Vector& b, const Vector& x,
                            const Vector& lambda, Index i, double beta);

}  // namespace splitadmm::problems

#include "splitadmm/prox.hpp"

#include "splitadmm/numkern.hpp"

#include <cmath>
#include <string>

namespace splitadmm::prox {

namespace {

double soft(double v, double t) {
  const double m = std::abs(v) - t;
  return m > 0.0 ? (v > 0.0 ? m : -m) : 0.0;
}

}  // namespace

Vector shrinkage(const Vector& c, double tau) {
  if (tau < 0.0) {
    throw ArgumentError("shrinkage: negative threshold");
  }
  if (!c.allFinite()) {
    throw NumericError("shrinkage: non-finite input");
  }
  return c.unaryExpr([tau](double v) { return soft(v, tau); });
}

Matrix matrix_shrink(const Matrix& T, double mu) {
  if (mu < 0.0) {
    throw ArgumentError("matrix_shrink: negative threshold");
  }
  return T.unaryExpr([mu](double v) { return soft(v, mu); });
}

Matrix svt(const Matrix& K, double mu) {
  if (mu < 0.0) {
    throw ArgumentError("svt: negative threshold");
  }
  const numkern::SvdResult f = numkern::svd(K);
  const Vector kept = shrinkage(f.singulars, mu);
  return f.left * kept.asDiagonal() * f.right.transpose();
}

Matrix psd_trace_prox(const Matrix& K, double mu) {
  if (mu < 0.0) {
    throw ArgumentError("psd_trace_prox: negative threshold");
  }
  const numkern::SymEigResult f = numkern::sym_eig(K);
  const Vector clamped =
      f.eigenvalues.unaryExpr([mu](double v) { return std::max(v - mu, 0.0); });
  return f.basis * clamped.asDiagonal() * f.basis.transpose();
}

Matrix logdet_quad_prox(const Matrix& sigma_hat, const Matrix& anchor, double beta) {
  if (!(beta > 0.0)) {
    throw ArgumentError("logdet_quad_prox: beta must be positive");
  }
  if (sigma_hat.rows() != anchor.rows() || sigma_hat.cols() != anchor.cols()) {
    throw DimensionError("logdet_quad_prox: sigma_hat and anchor shapes differ");
  }
  const Matrix W = sigma_hat / beta - anchor;
  const numkern::SymEigResult f = numkern::sym_eig(W);
  const Vector gamma = f.eigenvalues.unaryExpr([beta](double s) {
    return 0.5 * (-s + std::sqrt(s * s + 4.0 / beta));
  });
  return f.basis * gamma.asDiagonal() * f.basis.transpose();
}

std::vector<Vector> project_sum_zero(const std::vector<Vector>& u) {
  if (u.empty()) {
    throw DimensionError("project_sum_zero: empty input");
  }
  const Index len = u.front().size();
  Vector mean = Vector::Zero(len);
  for (const Vector& ui : u) {
    if (ui.size() != len) {
      throw DimensionError("project_sum_zero: component lengths differ");
    }
    mean += ui;
  }
  mean /= static_cast<double>(u.size());

  std::vector<Vector> out;
  out.reserve(u.size());
  for (const Vector& ui : u) {
    out.push_back(ui - mean);
  }
  return out;
}

Matrix project_masked_fro_ball(const Matrix& N, const MaskedBall& ball) {
  if (ball.radius < 0.0) {
    throw ArgumentError("project_masked_fro_ball: negative radius");
  }
  double sq = 0.0;
  for (const auto& [i, j] : ball.mask) {
    if (i < 0 || j < 0 || i >= N.rows() || j >= N.cols()) {
      throw ArgumentError("project_masked_fro_ball: mask index (" + std::to_string(i) +
                          "," + std::to_string(j) + ") out of bounds");
    }
    sq += N(i, j) * N(i, j);
  }
  const double norm = std::sqrt(sq);
  // norm == 0 leaves the masked entries untouched (scale 1), covering the
  // radius == 0 case without a 0/0.
  const double scale = norm > 0.0 ? std::min(norm, ball.radius) / norm : 1.0;

  Matrix out = N;
  if (scale != 1.0) {
    for (const auto& [i, j] : ball.mask) {
      out(i, j) *= scale;
    }
  }
  return out;
}

}  // namespace splitadmm::prox

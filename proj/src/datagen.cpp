#include "splitadmm/datagen.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace splitadmm::datagen {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed) {
  std::uint64_t x = seed;
  for (auto& s : state_) {
    s = splitmix64(x);
  }
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::uniform01() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_normal_ = radius * std::sin(angle);
  has_cached_normal_ = true;
  return radius * std::cos(angle);
}

Index Rng::uniform_index(Index n) {
  if (n <= 0) {
    throw ArgumentError("Rng::uniform_index: n must be positive");
  }
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
  std::uint64_t v = next_u64();
  while (v >= limit) {
    v = next_u64();
  }
  return static_cast<Index>(v % un);
}

bool Rng::coin() { return (next_u64() & 1ULL) != 0; }

Rng Rng::substream(std::uint64_t stream) const {
  std::uint64_t x = seed_ ^ (0xd1342543de82ef95ULL * (stream + 1));
  return Rng(splitmix64(x));
}

namespace {

Matrix gaussian_matrix(Index rows, Index cols, Rng& rng) {
  Matrix A(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      A(i, j) = rng.normal();
    }
  }
  return A;
}

// First k entries of a Fisher-Yates shuffle of [0, n): k distinct positions.
std::vector<Index> sample_positions(Index n, Index k, Rng& rng) {
  std::vector<Index> pool(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    pool[static_cast<std::size_t>(i)] = i;
  }
  for (Index i = 0; i < k; ++i) {
    const Index j = i + rng.uniform_index(n - i);
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(k));
  return pool;
}

}  // namespace

problems::BpInstance gen_bp(Index n, Index p, double sparsity, Rng& rng) {
  if (n < 1 || p < 1 || n > p) {
    throw ArgumentError("gen_bp: need 1 <= n <= p");
  }
  if (sparsity < 0.0 || sparsity > 1.0) {
    throw ArgumentError("gen_bp: sparsity outside [0, 1]");
  }

  problems::BpInstance inst;
  inst.A = gaussian_matrix(n, p, rng);
  inst.planted = Vector::Zero(p);
  const Index k = static_cast<Index>(std::ceil(sparsity * static_cast<double>(p)));
  if (k > 0) {
    const std::vector<Index> positions = sample_positions(p, k, rng);
    for (const Index pos : positions) {
      inst.planted[pos] = rng.normal();
    }
  }
  inst.b = inst.A * inst.planted;
  return inst;
}

LvggmsGen gen_lvggms(Index p, Index r, Rng& rng) {
  if (p < 1 || r < 0 || r >= p) {
    throw ArgumentError("gen_lvggms: need p >= 1 and 0 <= r < p");
  }
  const Index n = p + r;
  const Index total = n * n;
  const Index nnz = static_cast<Index>(std::ceil(0.1 * static_cast<double>(total)));

  for (std::uint64_t attempt = 0; attempt < 5; ++attempt) {
    Rng local = attempt == 0 ? rng : rng.substream(attempt);
    Matrix U = Matrix::Zero(n, n);
    Index placed = 0;
    for (const Index pos : sample_positions(total, nnz, local)) {
      U(pos / n, pos % n) = local.coin() ? 1.0 : -1.0;
      ++placed;
    }

    Matrix theta = U * U.transpose();
    Eigen::SelfAdjointEigenSolver<Matrix> es(theta);
    if (es.eigenvalues().minCoeff() < 1e-10) {
      theta += 1e-6 * Matrix::Identity(n, n);
      Eigen::SelfAdjointEigenSolver<Matrix> es2(theta);
      if (es2.eigenvalues().minCoeff() < 1e-10) {
        continue;  // retry with a fresh substream
      }
    }

    const Matrix sigma_full = theta.llt().solve(Matrix::Identity(n, n));
    const Matrix theta_x = theta.topLeftCorner(p, p);
    const Matrix theta_xy = theta.topRightCorner(p, r);
    const Matrix theta_y = theta.bottomRightCorner(r, r);
    const Matrix low_rank =
        r > 0 ? Matrix(theta_xy * theta_y.llt().solve(theta_xy.transpose()))
              : Matrix(Matrix::Zero(p, p));

    // The observed marginal has covariance sigma_x, the top-left block of the
    // full covariance (equivalently the inverse of theta_x - low_rank).
    const Matrix sigma_x = sigma_full.topLeftCorner(p, p);
    const Matrix chol = Matrix(sigma_x.llt().matrixL());

    const Index samples = 5 * p;
    Matrix sigma_hat = Matrix::Zero(p, p);
    Vector z(p);
    for (Index s = 0; s < samples; ++s) {
      for (Index i = 0; i < p; ++i) {
        z[i] = local.normal();
      }
      const Vector y = chol * z;
      sigma_hat.noalias() += y * y.transpose();
    }
    sigma_hat /= static_cast<double>(samples);

    LvggmsGen out;
    out.instance.sigma_hat = 0.5 * (sigma_hat + sigma_hat.transpose());
    out.theta_x = theta_x;
    out.low_rank = low_rank;
    out.marginal_concentration = theta_x - low_rank;
    out.sigma_x = sigma_x;
    out.factor_nnz = placed;
    return out;
  }
  throw GenerationError("gen_lvggms: could not build an invertible concentration matrix");
}

problems::RpcaInstance gen_rpca(Index rows, Index cols, Index rank, double sparse_frac,
                                double sr, double noise, Rng& rng) {
  if (rows < 1 || cols < 1) {
    throw ArgumentError("gen_rpca: empty shape");
  }
  if (rank < 0 || rank > std::min(rows, cols)) {
    throw ArgumentError("gen_rpca: rank outside [0, min(rows, cols)]");
  }
  if (sparse_frac < 0.0 || sparse_frac > 1.0 || !(sr > 0.0) || sr > 1.0) {
    throw ArgumentError("gen_rpca: fractions outside their ranges");
  }

  problems::RpcaInstance inst;
  const Matrix P = gaussian_matrix(rows, rank, rng);
  const Matrix Q = gaussian_matrix(cols, rank, rng);
  inst.planted_L = P * Q.transpose();

  inst.planted_S = Matrix::Zero(rows, cols);
  const Index total = rows * cols;
  const Index nnz = static_cast<Index>(std::ceil(sparse_frac * static_cast<double>(total)));
  for (const Index pos : sample_positions(total, nnz, rng)) {
    inst.planted_S(pos / cols, pos % cols) = rng.coin() ? 1.0 : -1.0;
  }

  const Index observed = static_cast<Index>(std::ceil(sr * static_cast<double>(total)));
  std::vector<Index> mask_positions = sample_positions(total, observed, rng);
  std::sort(mask_positions.begin(), mask_positions.end());
  inst.ball.mask.reserve(mask_positions.size());
  for (const Index pos : mask_positions) {
    inst.ball.mask.emplace_back(pos / cols, pos % cols);
  }
  inst.ball.radius = 1e-2;
  inst.tau_w = 1.0 / std::sqrt(static_cast<double>(rows));

  inst.M = inst.planted_L + inst.planted_S;
  if (noise > 0.0) {
    for (const auto& [i, j] : inst.ball.mask) {
      inst.M(i, j) += noise * rng.normal();
    }
  }
  return inst;
}

}  // namespace splitadmm::datagen

#pragma once

#include "splitadmm/problems/bp.hpp"
#include "splitadmm/problems/lvggms.hpp"
#include "splitadmm/problems/rpca.hpp"
#include "splitadmm/types.hpp"

#include <array>
#include <cstdint>

namespace splitadmm::datagen {

// xoshiro256++ seeded through splitmix64, with Box-Muller normals. The state
// transition is fixed by this implementation, so a seed produces the same
// stream on every platform. substream(i) derives an independent generator
// for parallel or retry use.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  double uniform01();              // in (0, 1]
  double normal();                 // standard normal, Box-Muller pair cache
  Index uniform_index(Index n);    // unbiased draw from [0, n)
  bool coin();

  Rng substream(std::uint64_t stream) const;

 private:
  std::array<std::uint64_t, 4> state_{};
  std::uint64_t seed_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

// Gaussian sensing matrix, planted sparse solution with ceil(sparsity*p)
// standard normal nonzeros at uniform positions, b = A x*.
problems::BpInstance gen_bp(Index n, Index p, double sparsity, Rng& rng);

struct LvggmsGen {
  problems::LvggmsInstance instance;
  Matrix theta_x;                   // sparse part of the true concentration
  Matrix low_rank;                  // theta_xy * theta_y^{-1} * theta_yx
  Matrix marginal_concentration;    // theta_x - low_rank
  Matrix sigma_x;                   // observed-marginal covariance used for sampling
  Index factor_nnz = 0;             // realized nonzeros in the sparse factor
};

// Sparse +/-1 factor U on (p+r) variables, true concentration U U^T
// (regularized to be invertible), and a sample covariance from 5p draws of
// the observed marginal.
LvggmsGen gen_lvggms(Index p, Index r, Rng& rng);

// Planted low-rank-plus-sparse observation with a uniform mask of
// ceil(sr*rows*cols) observed entries. noise > 0 adds Gaussian noise of that
// standard deviation on the observed entries.
problems::RpcaInstance gen_rpca(Index rows, Index cols, Index rank, double sparse_frac,
                                double sr, double noise, Rng& rng);

}  // namespace splitadmm::datagen

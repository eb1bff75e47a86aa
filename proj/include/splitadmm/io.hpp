#pragma once

#include "splitadmm/problems/bp.hpp"
#include "splitadmm/problems/lvggms.hpp"
#include "splitadmm/problems/rpca.hpp"
#include "splitadmm/types.hpp"

#include <filesystem>
#include <string>

namespace splitadmm::io {

// Dense matrix text format: a self-describing header
//
//   splitadmm-matrix v1
//   kind <matrix|vector|mask>
//   rows <R>
//   cols <C>
//
// followed by R lines of C decimal values in row-major order, printed with
// 17 significant digits so round-trips are exact. Vectors are R x 1; masks
// list (row, col) index pairs, one pair per line.
void write_matrix(const std::filesystem::path& path, const Matrix& M,
                  const std::string& kind = "matrix");
void write_vector(const std::filesystem::path& path, const Vector& v);
void write_mask(const std::filesystem::path& path,
                const std::vector<std::pair<Index, Index>>& mask);

struct Loaded {
  std::string kind;
  Matrix matrix;                                  // matrix / vector payload
  std::vector<std::pair<Index, Index>> mask;      // mask payload
};

Loaded read_file(const std::filesystem::path& path);
Matrix read_matrix(const std::filesystem::path& path);
Vector read_vector(const std::filesystem::path& path);
std::vector<std::pair<Index, Index>> read_mask(const std::filesystem::path& path);

// An instance on disk is a JSON manifest naming the problem kind, its scalar
// parameters, and the matrix files next to it.
struct InstanceManifest {
  std::string problem;  // "bp" | "lvggms" | "rpca"
  std::uint64_t seed = 0;
  problems::BpInstance bp;
  problems::LvggmsInstance lvggms;
  problems::RpcaInstance rpca;
};

void write_bp_instance(const std::filesystem::path& manifest_path,
                       const problems::BpInstance& inst, std::uint64_t seed);
void write_lvggms_instance(const std::filesystem::path& manifest_path,
                           const problems::LvggmsInstance& inst, std::uint64_t seed,
                           const Matrix* theta_x = nullptr, const Matrix* low_rank = nullptr);
void write_rpca_instance(const std::filesystem::path& manifest_path,
                         const problems::RpcaInstance& inst, std::uint64_t seed);

InstanceManifest read_instance(const std::filesystem::path& manifest_path);

std::string format_double(double v);  // shortest exact decimal form

}  // namespace splitadmm::io

#include "splitadmm/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace splitadmm::io {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void write_header(std::ostream& out, const std::string& kind, Index rows, Index cols) {
  out << "splitadmm-matrix v1\n"
      << "kind " << kind << '\n'
      << "rows " << rows << '\n'
      << "cols " << cols << '\n';
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open for writing: " + path.string());
  }
  return out;
}

}  // namespace

void write_matrix(const fs::path& path, const Matrix& M, const std::string& kind) {
  std::ofstream out = open_out(path);
  write_header(out, kind, M.rows(), M.cols());
  for (Index i = 0; i < M.rows(); ++i) {
    for (Index j = 0; j < M.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_double(M(i, j));
    }
    out << '\n';
  }
  if (!out) {
    throw IoError("write failed: " + path.string());
  }
}

void write_vector(const fs::path& path, const Vector& v) {
  write_matrix(path, v, "vector");
}

void write_mask(const fs::path& path, const std::vector<std::pair<Index, Index>>& mask) {
  std::ofstream out = open_out(path);
  write_header(out, "mask", static_cast<Index>(mask.size()), 2);
  for (const auto& [i, j] : mask) {
    out << i << ' ' << j << '\n';
  }
  if (!out) {
    throw IoError("write failed: " + path.string());
  }
}

Loaded read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open for reading: " + path.string());
  }
  std::string magic, version;
  in >> magic >> version;
  if (magic != "splitadmm-matrix" || version != "v1") {
    throw IoError("not a splitadmm matrix file: " + path.string());
  }
  std::string key;
  Loaded loaded;
  Index rows = -1, cols = -1;
  in >> key >> loaded.kind;
  if (key != "kind") throw IoError("malformed header in " + path.string());
  in >> key >> rows;
  if (key != "rows") throw IoError("malformed header in " + path.string());
  in >> key >> cols;
  if (key != "cols") throw IoError("malformed header in " + path.string());
  if (rows < 0 || cols < 0) throw IoError("negative shape in " + path.string());

  if (loaded.kind == "mask") {
    loaded.mask.reserve(static_cast<std::size_t>(rows));
    for (Index k = 0; k < rows; ++k) {
      Index i, j;
      if (!(in >> i >> j)) throw IoError("truncated mask in " + path.string());
      loaded.mask.emplace_back(i, j);
    }
  } else {
    loaded.matrix.resize(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      for (Index j = 0; j < cols; ++j) {
        if (!(in >> loaded.matrix(i, j))) {
          throw IoError("truncated values in " + path.string());
        }
      }
    }
  }
  return loaded;
}

Matrix read_matrix(const fs::path& path) {
  Loaded loaded = read_file(path);
  if (loaded.kind == "mask") {
    throw IoError("expected a matrix, found a mask: " + path.string());
  }
  return loaded.matrix;
}

Vector read_vector(const fs::path& path) {
  const Matrix m = read_matrix(path);
  if (m.cols() != 1) {
    throw IoError("expected a vector (1 column): " + path.string());
  }
  return m.col(0);
}

std::vector<std::pair<Index, Index>> read_mask(const fs::path& path) {
  Loaded loaded = read_file(path);
  if (loaded.kind != "mask") {
    throw IoError("expected a mask: " + path.string());
  }
  return loaded.mask;
}

namespace {

void write_manifest(const fs::path& path, const json& j) {
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) {
    throw IoError("write failed: " + path.string());
  }
}

std::string stem_of(const fs::path& manifest_path) {
  std::string name = manifest_path.filename().string();
  const std::string suffix = ".json";
  if (name.size() > suffix.size() && name.ends_with(suffix)) {
    name.resize(name.size() - suffix.size());
  }
  return name;
}

}  // namespace

void write_bp_instance(const fs::path& manifest_path, const problems::BpInstance& inst,
                       std::uint64_t seed) {
  const fs::path dir = manifest_path.parent_path();
  const std::string stem = stem_of(manifest_path);
  json j;
  j["problem"] = "bp";
  j["seed"] = seed;
  j["n"] = inst.A.rows();
  j["p"] = inst.A.cols();
  j["files"]["A"] = stem + ".A.mtx";
  j["files"]["b"] = stem + ".b.mtx";
  write_matrix(dir / (stem + ".A.mtx"), inst.A);
  write_vector(dir / (stem + ".b.mtx"), inst.b);
  if (inst.has_planted()) {
    j["files"]["planted"] = stem + ".xstar.mtx";
    write_vector(dir / (stem + ".xstar.mtx"), inst.planted);
  }
  write_manifest(manifest_path, j);
}

void write_lvggms_instance(const fs::path& manifest_path,
                           const problems::LvggmsInstance& inst, std::uint64_t seed,
                           const Matrix* theta_x, const Matrix* low_rank) {
  const fs::path dir = manifest_path.parent_path();
  const std::string stem = stem_of(manifest_path);
  json j;
  j["problem"] = "lvggms";
  j["seed"] = seed;
  j["p"] = inst.sigma_hat.rows();
  j["alpha1"] = inst.alpha1;
  j["alpha2"] = inst.alpha2;
  j["files"]["sigma_hat"] = stem + ".sigma.mtx";
  write_matrix(dir / (stem + ".sigma.mtx"), inst.sigma_hat);
  if (theta_x != nullptr) {
    j["files"]["theta_x"] = stem + ".thetax.mtx";
    write_matrix(dir / (stem + ".thetax.mtx"), *theta_x);
  }
  if (low_rank != nullptr) {
    j["files"]["low_rank"] = stem + ".lowrank.mtx";
    write_matrix(dir / (stem + ".lowrank.mtx"), *low_rank);
  }
  write_manifest(manifest_path, j);
}

void write_rpca_instance(const fs::path& manifest_path, const problems::RpcaInstance& inst,
                         std::uint64_t seed) {
  const fs::path dir = manifest_path.parent_path();
  const std::string stem = stem_of(manifest_path);
  json j;
  j["problem"] = "rpca";
  j["seed"] = seed;
  j["rows"] = inst.M.rows();
  j["cols"] = inst.M.cols();
  j["tau_w"] = inst.tau_w;
  j["delta"] = inst.ball.radius;
  j["files"]["M"] = stem + ".M.mtx";
  j["files"]["mask"] = stem + ".mask.mtx";
  write_matrix(dir / (stem + ".M.mtx"), inst.M);
  write_mask(dir / (stem + ".mask.mtx"), inst.ball.mask);
  if (inst.has_planted()) {
    j["files"]["planted_L"] = stem + ".Lstar.mtx";
    j["files"]["planted_S"] = stem + ".Sstar.mtx";
    write_matrix(dir / (stem + ".Lstar.mtx"), inst.planted_L);
    write_matrix(dir / (stem + ".Sstar.mtx"), inst.planted_S);
  }
  write_manifest(manifest_path, j);
}

InstanceManifest read_instance(const fs::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) {
    throw IoError("cannot open instance manifest: " + manifest_path.string());
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError("bad instance manifest " + manifest_path.string() + ": " + e.what());
  }
  const fs::path dir = manifest_path.parent_path();

  InstanceManifest m;
  m.problem = j.at("problem").get<std::string>();
  m.seed = j.value("seed", 0ULL);
  const auto& files = j.at("files");

  if (m.problem == "bp") {
    m.bp.A = read_matrix(dir / files.at("A").get<std::string>());
    m.bp.b = read_vector(dir / files.at("b").get<std::string>());
    if (files.contains("planted")) {
      m.bp.planted = read_vector(dir / files.at("planted").get<std::string>());
    }
  } else if (m.problem == "lvggms") {
    m.lvggms.sigma_hat = read_matrix(dir / files.at("sigma_hat").get<std::string>());
    m.lvggms.alpha1 = j.at("alpha1").get<double>();
    m.lvggms.alpha2 = j.at("alpha2").get<double>();
  } else if (m.problem == "rpca") {
    m.rpca.M = read_matrix(dir / files.at("M").get<std::string>());
    m.rpca.tau_w = j.at("tau_w").get<double>();
    m.rpca.ball.radius = j.at("delta").get<double>();
    m.rpca.ball.mask = read_mask(dir / files.at("mask").get<std::string>());
    if (files.contains("planted_L")) {
      m.rpca.planted_L = read_matrix(dir / files.at("planted_L").get<std::string>());
      m.rpca.planted_S = read_matrix(dir / files.at("planted_S").get<std::string>());
    }
  } else {
    throw IoError("unknown problem kind in manifest: " + m.problem);
  }
  return m;
}

}  // namespace splitadmm::io

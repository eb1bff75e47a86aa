#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace splitadmm {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = MatrixX<double>;
using Vector = VectorX<double>;
using Index = Eigen::Index;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape mismatch between operands (rows/cols/lengths).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Non-finite data or a numerically meaningless request.
class NumericError : public Error {
 public:
  using Error::Error;
};

// A parameter outside its documented domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A solver mode was requested that the problem's blocks cannot support.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// A synthetic-instance generator could not produce a usable instance.
class GenerationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Reshape between stacked column-vector form and matrix form (column-major).
inline Matrix unvec(const Vector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) {
    throw DimensionError("unvec: vector length " + std::to_string(v.size()) +
                         " != " + std::to_string(rows) + "x" + std::to_string(cols));
  }
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

inline Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

}  // namespace splitadmm

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace corank {

/// Raised for malformed user input: unreadable files, invalid matrices,
/// inconsistent dimensions, disconnected neighbor graphs.
class input_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major matrix, the storage type behind every grid in the library.
template <typename T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T value = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  T* row(std::size_t i) { return data_.data() + i * cols_; }
  const T* row(std::size_t i) const { return data_.data() + i * cols_; }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  bool operator==(const Matrix&) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// N points in D dimensions, one row per point.
struct PointSet {
  Matrix<double> coords;

  std::size_t size() const { return coords.rows(); }
  std::size_t dim() const { return coords.cols(); }

  /// Enforces N >= 2, D >= 1 and finite coordinates.
  void validate() const {
    if (size() < 2) {
      throw input_error("point set needs at least 2 points, got " +
                        std::to_string(size()));
    }
    if (dim() < 1) {
      throw input_error("point set needs at least 1 dimension");
    }
    for (double v : coords.data()) {
      if (!std::isfinite(v)) {
        throw input_error("point set contains a non-finite coordinate");
      }
    }
  }
};

/// N x N symmetric distances with zero diagonal.
struct DistanceMatrix {
  Matrix<double> d;

  std::size_t size() const { return d.rows(); }
};

/// N x N integer ranks; each off-diagonal row is a permutation of 1..N-1,
/// the diagonal is 0.
struct RankMatrix {
  Matrix<std::int32_t> rank;

  std::size_t size() const { return rank.rows(); }
};

/// Elementwise absolute rank deviations between two rank matrices.
struct RankErrorMatrix {
  Matrix<std::int32_t> err;

  std::size_t size() const { return err.rows(); }
};

}  // namespace corank

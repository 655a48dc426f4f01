#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "wavefuse/error.hpp"

namespace wavefuse {

/// Dense row-major matrix of double samples. Grayscale images live here with
/// a working range of 0-255; intermediate pipeline values are not clamped
/// until export.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows),
        cols_(cols),
        data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(int r, int c) {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  double operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool same_shape(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

using Image = Matrix;

/// Three equal-dimension planes, samples in [0, 255].
struct ColorImage {
  Matrix r, g, b;

  int rows() const { return r.rows(); }
  int cols() const { return r.cols(); }
  bool valid() const { return r.same_shape(g) && r.same_shape(b); }
};

/// Rows [top, top+height) x cols [left, left+width).
struct Rect {
  int top = 0;
  int left = 0;
  int height = 0;
  int width = 0;
};

inline double clamp255(double v) { return v < 0.0 ? 0.0 : (v > 255.0 ? 255.0 : v); }

/// Round half up, then clamp to the 8-bit range.
inline std::uint8_t quantize255(double v) {
  return static_cast<std::uint8_t>(clamp255(std::floor(v + 0.5)));
}

}  // namespace wavefuse

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "wavefuse/image.hpp"

namespace wavefuse {

namespace detail {

/// Normalized Gaussian taps with radius ceil(3*sigma).
inline std::vector<double> gaussian_kernel(double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> taps(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double w = std::exp(-(i * i) / (2.0 * sigma * sigma));
    taps[i + radius] = w;
    sum += w;
  }
  for (double& w : taps) w /= sum;
  return taps;
}

/// Symmetric reflection at the borders: -1 -> 0, n -> n-1.
inline int reflect_index(int i, int n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - 1 - i;
  }
  return i;
}

}  // namespace detail

/// Gaussian-blur the pixels inside `region`, leaving everything outside
/// untouched. The blur reads the whole source image with reflective borders,
/// so region edges blend with their unblurred neighborhood.
inline Image blur_region(const Image& img, double sigma, const Rect& region) {
  if (sigma < 0.0) throw std::invalid_argument("blur sigma must be >= 0");
  if (region.top < 0 || region.left < 0 || region.height < 0 || region.width < 0 ||
      region.top + region.height > img.rows() ||
      region.left + region.width > img.cols()) {
    fail(ErrorCode::Region, "blur region out of bounds");
  }
  if (sigma == 0.0 || region.height == 0 || region.width == 0) return img;

  const std::vector<double> taps = detail::gaussian_kernel(sigma);
  const int radius = static_cast<int>(taps.size()) / 2;
  const int rows = img.rows();
  const int cols = img.cols();

  Matrix horiz(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        acc += taps[k + radius] * img(r, detail::reflect_index(c + k, cols));
      }
      horiz(r, c) = acc;
    }
  }
  Matrix blurred(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        acc += taps[k + radius] * horiz(detail::reflect_index(r + k, rows), c);
      }
      blurred(r, c) = acc;
    }
  }

  Image out = img;
  for (int r = region.top; r < region.top + region.height; ++r) {
    for (int c = region.left; c < region.left + region.width; ++c) {
      out(r, c) = blurred(r, c);
    }
  }
  return out;
}

}  // namespace wavefuse

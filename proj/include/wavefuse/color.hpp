#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "wavefuse/fusion.hpp"
#include "wavefuse/image.hpp"

namespace wavefuse {

/// Hue in degrees [0, 360), saturation in [0, 1], intensity in [0, 255].
/// Hue is 0 wherever saturation is 0.
struct HsiImage {
  Matrix h, s, i;

  int rows() const { return i.rows(); }
  int cols() const { return i.cols(); }
};

namespace detail {

constexpr double kPi = 3.14159265358979323846;

}  // namespace detail

/// Geometric (arccos) HSI decomposition: I = (R+G+B)/3,
/// S = 1 - 3 min(R,G,B)/(R+G+B), H the chromatic angle with the
/// H := 360 - H branch when B > G.
inline HsiImage rgb_to_hsi(const ColorImage& img) {
  if (!img.valid()) fail(ErrorCode::ShapeMismatch, "color planes differ in size");
  const int rows = img.rows();
  const int cols = img.cols();
  HsiImage out{Matrix(rows, cols), Matrix(rows, cols), Matrix(rows, cols)};
  for (int y = 0; y < rows; ++y) {
    for (int x = 0; x < cols; ++x) {
      const double r = img.r(y, x);
      const double g = img.g(y, x);
      const double b = img.b(y, x);
      const double sum = r + g + b;
      const double intensity = sum / 3.0;
      const double saturation =
          sum > 0.0 ? 1.0 - 3.0 * std::min({r, g, b}) / sum : 0.0;

      double hue = 0.0;
      const double num = 0.5 * ((r - g) + (r - b));
      const double den_sq = (r - g) * (r - g) + (r - b) * (g - b);
      if (den_sq > 0.0) {
        const double cosv = std::clamp(num / std::sqrt(den_sq), -1.0, 1.0);
        hue = std::acos(cosv) * 180.0 / detail::kPi;
        if (b > g) hue = 360.0 - hue;
        if (hue >= 360.0) hue -= 360.0;
      }
      out.h(y, x) = hue;
      out.s(y, x) = saturation;
      out.i(y, x) = intensity;
    }
  }
  return out;
}

/// Sector-based inverse of rgb_to_hsi. Hue is wrapped into [0, 360) and
/// saturation clamped to [0, 1] before conversion; RGB outputs are clamped
/// to [0, 255].
inline ColorImage hsi_to_rgb(const HsiImage& img) {
  if (!img.h.same_shape(img.s) || !img.h.same_shape(img.i)) {
    fail(ErrorCode::ShapeMismatch, "HSI planes differ in size");
  }
  const int rows = img.rows();
  const int cols = img.cols();
  ColorImage out{Matrix(rows, cols), Matrix(rows, cols), Matrix(rows, cols)};
  for (int y = 0; y < rows; ++y) {
    for (int x = 0; x < cols; ++x) {
      double hue = std::fmod(img.h(y, x), 360.0);
      if (hue < 0.0) hue += 360.0;
      const double s = std::clamp(img.s(y, x), 0.0, 1.0);
      const double in = img.i(y, x);

      double r, g, b;
      if (s == 0.0) {
        r = g = b = in;
      } else {
        double sector_hue = hue;
        if (hue >= 240.0) {
          sector_hue = hue - 240.0;
        } else if (hue >= 120.0) {
          sector_hue = hue - 120.0;
        }
        const double hr = sector_hue * detail::kPi / 180.0;
        const double x1 = in * (1.0 - s);
        const double x2 =
            in * (1.0 + s * std::cos(hr) / std::cos(detail::kPi / 3.0 - hr));
        const double x3 = 3.0 * in - (x1 + x2);
        if (hue < 120.0) {
          r = x2; g = x3; b = x1;
        } else if (hue < 240.0) {
          r = x1; g = x2; b = x3;
        } else {
          r = x3; g = x1; b = x2;
        }
      }
      out.r(y, x) = clamp255(r);
      out.g(y, x) = clamp255(g);
      out.b(y, x) = clamp255(b);
    }
  }
  return out;
}

/// Color fusion: convert every source to HSI, fuse the three planes
/// independently (hue and saturation rescaled into the 0-255 working range
/// for the transform), convert back. Hue is fused as a linear plane; inputs
/// straddling the 0/360 wrap can blend across it.
inline ColorImage fuse_color(const std::vector<ColorImage>& images,
                             const FusionConfig& cfg) {
  if (images.size() < 2) {
    fail(ErrorCode::ShapeMismatch, "fusion needs at least two source images");
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!images[i].valid()) {
      fail(ErrorCode::ShapeMismatch,
           "source " + std::to_string(i) + " has mismatched planes");
    }
    if (images[i].rows() != images[0].rows() || images[i].cols() != images[0].cols()) {
      fail(ErrorCode::ShapeMismatch,
           "source " + std::to_string(i) + " dimensions differ from source 0");
    }
  }

  const double hue_scale = 255.0 / 360.0;
  std::vector<Image> hs, ss, is;
  for (const auto& img : images) {
    HsiImage hsi = rgb_to_hsi(img);
    for (double& v : hsi.h.data()) v *= hue_scale;
    for (double& v : hsi.s.data()) v *= 255.0;
    hs.push_back(std::move(hsi.h));
    ss.push_back(std::move(hsi.s));
    is.push_back(std::move(hsi.i));
  }

  HsiImage fused{fuse_gray(hs, cfg), fuse_gray(ss, cfg), fuse_gray(is, cfg)};
  for (double& v : fused.h.data()) {
    v /= hue_scale;
    v = std::fmod(v, 360.0);
    if (v < 0.0) v += 360.0;
  }
  for (double& v : fused.s.data()) v = std::clamp(v / 255.0, 0.0, 1.0);
  for (double& v : fused.i.data()) v = clamp255(v);
  return hsi_to_rgb(fused);
}

/// (R+G+B)/3, the plane the indices are computed on for color inputs.
inline Image intensity_plane(const ColorImage& img) {
  if (!img.valid()) fail(ErrorCode::ShapeMismatch, "color planes differ in size");
  Image out(img.rows(), img.cols());
  for (int y = 0; y < img.rows(); ++y) {
    for (int x = 0; x < img.cols(); ++x) {
      out(y, x) = (img.r(y, x) + img.g(y, x) + img.b(y, x)) / 3.0;
    }
  }
  return out;
}

}  // namespace wavefuse

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "wavefuse/color.hpp"

using testutil::random_image;
using testutil::throws_code;
using namespace wavefuse;

namespace {

ColorImage one_pixel(double r, double g, double b) {
  ColorImage img{Matrix(1, 1, r), Matrix(1, 1, g), Matrix(1, 1, b)};
  return img;
}

}  // namespace

TEST_CASE("achromatic pixels have zero hue and saturation") {
  for (double v : {0.0, 1.0, 64.0, 255.0}) {
    const HsiImage hsi = rgb_to_hsi(one_pixel(v, v, v));
    REQUIRE(hsi.h(0, 0) == 0.0);
    REQUIRE(hsi.s(0, 0) == 0.0);
    REQUIRE(hsi.i(0, 0) == Catch::Approx(v).margin(1e-12));
  }
}

TEST_CASE("primary color anchors") {
  const HsiImage red = rgb_to_hsi(one_pixel(255.0, 0.0, 0.0));
  REQUIRE(red.h(0, 0) == Catch::Approx(0.0).margin(1e-9));
  REQUIRE(red.s(0, 0) == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(red.i(0, 0) == Catch::Approx(85.0).margin(1e-12));

  const HsiImage green = rgb_to_hsi(one_pixel(0.0, 255.0, 0.0));
  REQUIRE(green.h(0, 0) == Catch::Approx(120.0).margin(1e-9));
  REQUIRE(green.s(0, 0) == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(green.i(0, 0) == Catch::Approx(85.0).margin(1e-12));

  const HsiImage blue = rgb_to_hsi(one_pixel(0.0, 0.0, 255.0));
  REQUIRE(blue.h(0, 0) == Catch::Approx(240.0).margin(1e-9));
}

TEST_CASE("inverse anchors") {
  const ColorImage gray = hsi_to_rgb(HsiImage{Matrix(1, 1, 0.0), Matrix(1, 1, 0.0),
                                              Matrix(1, 1, 77.0)});
  REQUIRE(gray.r(0, 0) == Catch::Approx(77.0).margin(1e-12));
  REQUIRE(gray.g(0, 0) == Catch::Approx(77.0).margin(1e-12));
  REQUIRE(gray.b(0, 0) == Catch::Approx(77.0).margin(1e-12));

  const ColorImage green = hsi_to_rgb(HsiImage{Matrix(1, 1, 120.0), Matrix(1, 1, 1.0),
                                               Matrix(1, 1, 85.0)});
  REQUIRE(green.r(0, 0) == Catch::Approx(0.0).margin(1e-9));
  REQUIRE(green.g(0, 0) == Catch::Approx(255.0).margin(1e-9));
  REQUIRE(green.b(0, 0) == Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("round trip over the step-17 RGB lattice") {
  double worst = 0.0;
  for (int r = 0; r <= 255; r += 17) {
    for (int g = 0; g <= 255; g += 17) {
      for (int b = 0; b <= 255; b += 17) {
        const ColorImage back = hsi_to_rgb(rgb_to_hsi(one_pixel(r, g, b)));
        worst = std::max({worst, std::abs(back.r(0, 0) - r),
                          std::abs(back.g(0, 0) - g), std::abs(back.b(0, 0) - b)});
      }
    }
  }
  REQUIRE(worst <= 1.0);
}

TEST_CASE("fuse_color of identical images is the identity up to quantization") {
  std::mt19937 rng(51);
  const ColorImage img{random_image(rng, 16, 16), random_image(rng, 16, 16),
                       random_image(rng, 16, 16)};
  const ColorImage fused = fuse_color({img, img}, FusionConfig{});
  double worst = 0.0;
  for (int r = 0; r < 16; ++r) {
    for (int c = 0; c < 16; ++c) {
      worst = std::max({worst, std::abs(fused.r(r, c) - img.r(r, c)),
                        std::abs(fused.g(r, c) - img.g(r, c)),
                        std::abs(fused.b(r, c) - img.b(r, c))});
    }
  }
  REQUIRE(worst <= 1.0);
}

TEST_CASE("gray color content reduces to the grayscale pipeline") {
  std::mt19937 rng(52);
  const Image plane_a = random_image(rng, 16, 16);
  const Image plane_b = random_image(rng, 16, 16);
  const ColorImage a{plane_a, plane_a, plane_a};
  const ColorImage b{plane_b, plane_b, plane_b};

  const ColorImage fused = fuse_color({a, b}, FusionConfig{});
  const Image gray = fuse_gray({plane_a, plane_b}, FusionConfig{});
  for (int r = 0; r < 16; ++r) {
    for (int c = 0; c < 16; ++c) {
      const double expect = clamp255(gray(r, c));
      REQUIRE(std::abs(fused.r(r, c) - expect) <= 1.0);
      REQUIRE(std::abs(fused.g(r, c) - expect) <= 1.0);
      REQUIRE(std::abs(fused.b(r, c) - expect) <= 1.0);
    }
  }
}

TEST_CASE("fuse_color rejects mismatched planes") {
  const ColorImage good{Matrix(8, 8), Matrix(8, 8), Matrix(8, 8)};
  const ColorImage ragged{Matrix(8, 8), Matrix(8, 4), Matrix(8, 8)};
  const ColorImage smaller{Matrix(4, 4), Matrix(4, 4), Matrix(4, 4)};
  REQUIRE(throws_code([&] { fuse_color({good, ragged}, FusionConfig{}); },
                      ErrorCode::ShapeMismatch));
  REQUIRE(throws_code([&] { fuse_color({good, smaller}, FusionConfig{}); },
                      ErrorCode::ShapeMismatch));
  REQUIRE(throws_code([&] { fuse_color({good}, FusionConfig{}); },
                      ErrorCode::ShapeMismatch));
}

TEST_CASE("fusion outputs stay inside the declared ranges") {
  std::mt19937 rng(53);
  // Extreme inputs: saturated primaries against black and white noise.
  ColorImage a{Matrix(16, 16, 255.0), Matrix(16, 16, 0.0), Matrix(16, 16, 0.0)};
  ColorImage b{random_image(rng, 16, 16), random_image(rng, 16, 16),
               random_image(rng, 16, 16)};
  const ColorImage fused = fuse_color({a, b}, FusionConfig{});
  for (const Matrix* plane : {&fused.r, &fused.g, &fused.b}) {
    for (double v : plane->data()) {
      REQUIRE(v >= 0.0);
      REQUIRE(v <= 255.0);
    }
  }
}

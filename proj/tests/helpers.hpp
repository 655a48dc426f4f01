#pragma once

#include <cmath>
#include <random>
#include <string>

#include "wavefuse/error.hpp"
#include "wavefuse/image.hpp"

namespace testutil {

/// True when f() throws a wavefuse::Error carrying the given code.
template <typename F>
bool throws_code(F&& f, wavefuse::ErrorCode code) {
  try {
    f();
  } catch (const wavefuse::Error& e) {
    return e.code() == code;
  } catch (...) {
    return false;
  }
  return false;
}

inline wavefuse::Image random_image(std::mt19937& rng, int rows, int cols,
                                    double lo = 0.0, double hi = 255.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  wavefuse::Image img(rows, cols);
  for (double& v : img.data()) v = dist(rng);
  return img;
}

inline double max_abs_diff(const wavefuse::Image& a, const wavefuse::Image& b) {
  double worst = 0.0;
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) {
      worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
    }
  }
  return worst;
}

inline double sum_squares(const wavefuse::Image& img) {
  double sum = 0.0;
  for (double v : img.data()) sum += v * v;
  return sum;
}

}  // namespace testutil

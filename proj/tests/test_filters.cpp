#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "helpers.hpp"
#include "wavefuse/filters.hpp"

using testutil::throws_code;
using wavefuse::Error;
using wavefuse::ErrorCode;
using wavefuse::FilterBank;
using wavefuse::get_filter;

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

// Shifted inner product lo[k] * lo[k + 2m] over the overlapping range.
double even_shift_corr(const std::vector<double>& lo, int m) {
  double sum = 0.0;
  for (std::size_t k = 0; k + 2 * m < lo.size(); ++k) sum += lo[k] * lo[k + 2 * m];
  return sum;
}

}  // namespace

TEST_CASE("haar taps are 1/sqrt(2)") {
  const FilterBank& fb = get_filter("haar");
  const double s = 1.0 / std::sqrt(2.0);
  REQUIRE(fb.name == "haar");
  REQUIRE(fb.taps() == 2);
  REQUIRE(fb.analysis_lo[0] == Catch::Approx(s).epsilon(1e-12));
  REQUIRE(fb.analysis_lo[1] == Catch::Approx(s).epsilon(1e-12));
  REQUIRE(fb.analysis_hi[0] == Catch::Approx(s).epsilon(1e-12));
  REQUIRE(fb.analysis_hi[1] == Catch::Approx(-s).epsilon(1e-12));
}

TEST_CASE("unknown filter name") {
  REQUIRE(throws_code([] { get_filter("nosuch"); }, ErrorCode::FilterUnknown));
}

TEST_CASE("registered banks satisfy the orthonormality invariants") {
  for (const auto& name : wavefuse::filter_names()) {
    CAPTURE(name);
    const FilterBank& fb = get_filter(name);
    const int taps = fb.taps();

    // Unit norm and even-shift orthogonality of the low-pass taps.
    REQUIRE(dot(fb.analysis_lo, fb.analysis_lo) == Catch::Approx(1.0).margin(1e-12));
    for (int m = 1; 2 * m < taps; ++m) {
      CAPTURE(m);
      REQUIRE(even_shift_corr(fb.analysis_lo, m) == Catch::Approx(0.0).margin(1e-12));
    }

    // Quadrature-mirror relation hi[k] = (-1)^k lo[L-1-k].
    for (int k = 0; k < taps; ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      REQUIRE(fb.analysis_hi[k] ==
              Catch::Approx(sign * fb.analysis_lo[taps - 1 - k]).margin(1e-15));
    }

    // Synthesis taps are the time-reversed analysis taps.
    for (int k = 0; k < taps; ++k) {
      REQUIRE(fb.synthesis_lo[k] == fb.analysis_lo[taps - 1 - k]);
      REQUIRE(fb.synthesis_hi[k] == fb.analysis_hi[taps - 1 - k]);
    }

    REQUIRE(dot(fb.analysis_lo, fb.analysis_hi) == Catch::Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("registry carries the required banks") {
  REQUIRE(get_filter("haar").taps() == 2);
  REQUIRE(get_filter("db2").taps() == 4);
  REQUIRE(get_filter("db4").taps() == 8);
}

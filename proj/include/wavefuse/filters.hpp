#pragma once

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wavefuse/error.hpp"

namespace wavefuse {

/// Orthonormal two-channel filter bank. High-pass taps follow the
/// quadrature-mirror relation hi[k] = (-1)^k lo[L-1-k]; the synthesis taps
/// are the time-reversed analysis taps.
struct FilterBank {
  std::string name;
  std::vector<double> analysis_lo;
  std::vector<double> analysis_hi;
  std::vector<double> synthesis_lo;
  std::vector<double> synthesis_hi;

  int taps() const { return static_cast<int>(analysis_lo.size()); }
};

namespace detail {

inline FilterBank make_bank(std::string name, std::vector<double> lo) {
  FilterBank fb;
  fb.name = std::move(name);
  fb.analysis_lo = std::move(lo);
  const std::size_t n = fb.analysis_lo.size();
  fb.analysis_hi.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    fb.analysis_hi[k] = sign * fb.analysis_lo[n - 1 - k];
  }
  fb.synthesis_lo.assign(fb.analysis_lo.rbegin(), fb.analysis_lo.rend());
  fb.synthesis_hi.assign(fb.analysis_hi.rbegin(), fb.analysis_hi.rend());
  return fb;
}

inline const std::map<std::string, FilterBank>& filter_registry() {
  static const std::map<std::string, FilterBank> banks = [] {
    std::map<std::string, FilterBank> m;
    const double s = 1.0 / std::sqrt(2.0);
    m.emplace("haar", make_bank("haar", {s, s}));

    const double r3 = std::sqrt(3.0);
    const double d = 4.0 * std::sqrt(2.0);
    m.emplace("db2", make_bank("db2", {(1.0 + r3) / d, (3.0 + r3) / d,
                                       (3.0 - r3) / d, (1.0 - r3) / d}));

    // Daubechies 8-tap scaling coefficients.
    m.emplace("db4", make_bank("db4", {0.23037781330885523,
                                       0.71484657055254150,
                                       0.63088076792959040,
                                       -0.02798376941698385,
                                       -0.18703481171888114,
                                       0.030841381835986965,
                                       0.032883011666982945,
                                       -0.010597401784997278}));
    return m;
  }();
  return banks;
}

}  // namespace detail

inline const FilterBank& get_filter(const std::string& name) {
  const auto& banks = detail::filter_registry();
  auto it = banks.find(name);
  if (it == banks.end()) {
    fail(ErrorCode::FilterUnknown, "no wavelet named '" + name + "'");
  }
  return it->second;
}

inline std::vector<std::string> filter_names() {
  std::vector<std::string> names;
  for (const auto& [name, bank] : detail::filter_registry()) names.push_back(name);
  return names;
}

}  // namespace wavefuse

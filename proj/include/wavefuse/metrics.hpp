#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wavefuse/image.hpp"

namespace wavefuse {

/// Sample mean and standard deviation (N-1 denominator).
inline std::pair<double, double> mean_std(const Image& img) {
  const std::size_t n = img.size();
  if (n < 2) fail(ErrorCode::Empty, "mean/std needs at least two samples");
  double sum = 0.0;
  for (double v : img.data()) sum += v;
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double v : img.data()) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(n - 1))};
}

/// Natural-log entropy of the 256-bin histogram. Samples are rounded half up
/// and clamped to [0,255] before binning; empty bins contribute nothing.
inline double entropy(const Image& img) {
  const std::size_t n = img.size();
  if (n == 0) fail(ErrorCode::Empty, "entropy of an empty image");
  std::array<std::size_t, 256> hist{};
  for (double v : img.data()) ++hist[quantize255(v)];
  double e = 0.0;
  for (std::size_t count : hist) {
    if (count == 0) continue;
    const double p = static_cast<double>(count) / static_cast<double>(n);
    e -= p * std::log(p);
  }
  return e;
}

/// Mean of sqrt((dx^2 + dy^2)/2) over forward differences on the
/// (rows-1) x (cols-1) interior grid.
inline double average_gradient(const Image& img) {
  if (img.rows() < 2 || img.cols() < 2) {
    fail(ErrorCode::Empty, "average gradient needs at least 2x2 samples");
  }
  double sum = 0.0;
  for (int r = 0; r + 1 < img.rows(); ++r) {
    for (int c = 0; c + 1 < img.cols(); ++c) {
      const double dx = img(r + 1, c) - img(r, c);
      const double dy = img(r, c + 1) - img(r, c);
      sum += std::sqrt((dx * dx + dy * dy) / 2.0);
    }
  }
  return sum / (static_cast<double>(img.rows() - 1) * (img.cols() - 1));
}

struct RmsePsnr {
  double rmse = 0.0;
  double psnr = 0.0;  // +infinity for identical images
};

inline RmsePsnr rmse_psnr(const Image& a, const Image& b) {
  if (!a.same_shape(b)) fail(ErrorCode::ShapeMismatch, "images differ in size");
  if (a.size() == 0) fail(ErrorCode::Empty, "rmse of empty images");
  double sum = 0.0;
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) {
      const double d = a(r, c) - b(r, c);
      sum += d * d;
    }
  }
  const double rmse = std::sqrt(sum / static_cast<double>(a.size()));
  if (rmse == 0.0) return {0.0, std::numeric_limits<double>::infinity()};
  return {rmse, 20.0 * std::log10(255.0 / rmse)};
}

/// Root of the mean squared difference, as printed; coincides with rmse.
inline double rho_index(const Image& ideal, const Image& fused) {
  if (!ideal.same_shape(fused)) fail(ErrorCode::ShapeMismatch, "images differ in size");
  if (ideal.size() == 0) fail(ErrorCode::Empty, "rho of empty images");
  double sum = 0.0;
  for (int r = 0; r < ideal.rows(); ++r) {
    for (int c = 0; c < ideal.cols(); ++c) {
      const double d = ideal(r, c) - fused(r, c);
      sum += d * d;
    }
  }
  return std::sqrt(sum / static_cast<double>(ideal.size()));
}

/// One table column: per-image indices. Empty optionals render as the
/// unavailable-reference marker.
struct ImageEntry {
  std::string label;
  std::optional<double> mean;
  std::optional<double> std_dev;
  std::optional<double> entropy;
  std::optional<double> avg_gradient;
};

/// Pair indices against a reference, attached to the column `label`.
struct PairEntry {
  std::string label;
  double rmse = 0.0;
  double psnr = 0.0;
  double rho = 0.0;
};

struct MetricsReport {
  std::vector<ImageEntry> entries;
  std::vector<PairEntry> pairs;
};

inline ImageEntry measure_image(std::string label, const Image& img) {
  const auto [mean, sd] = mean_std(img);
  return {std::move(label), mean, sd, entropy(img), average_gradient(img)};
}

inline PairEntry measure_pair(std::string label, const Image& ideal, const Image& img) {
  const RmsePsnr rp = rmse_psnr(ideal, img);
  return {std::move(label), rp.rmse, rp.psnr, rho_index(ideal, img)};
}

inline MetricsReport build_report(std::vector<ImageEntry> entries,
                                  std::vector<PairEntry> pairs) {
  std::set<std::string> seen;
  for (const auto& e : entries) {
    if (!seen.insert(e.label).second) {
      fail(ErrorCode::LabelDup, "duplicate column label '" + e.label + "'");
    }
  }
  seen.clear();
  for (const auto& p : pairs) {
    if (!seen.insert(p.label).second) {
      fail(ErrorCode::LabelDup, "duplicate pair label '" + p.label + "'");
    }
  }
  return {std::move(entries), std::move(pairs)};
}

namespace detail {

inline std::string format_index(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

inline std::string format_porcelain(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

// The em dash occupies one display column but three bytes.
inline std::size_t display_width(const std::string& cell) {
  return cell == "—" ? 1 : cell.size();
}

inline void put_right(std::ostringstream& out, const std::string& cell,
                      std::size_t width) {
  const std::size_t w = display_width(cell);
  for (std::size_t i = w; i < width; ++i) out << ' ';
  out << cell;
}

inline const PairEntry* find_pair(const MetricsReport& report, const std::string& label) {
  for (const auto& p : report.pairs) {
    if (p.label == label) return &p;
  }
  return nullptr;
}

}  // namespace detail

/// Six-row text table: Mean, S.D., Entropy, Gradient, PSNR, C.C, one column
/// per image/method. Unavailable cells render as an em dash.
inline std::string render_table(const MetricsReport& report) {
  static const char* kRowNames[6] = {"Mean", "S.D.", "Entropy", "Gradient",
                                     "PSNR", "C.C"};
  auto put_left = [](std::ostringstream& out, const std::string& cell,
                     std::size_t width) {
    out << cell;
    for (std::size_t i = cell.size(); i < width; ++i) out << ' ';
  };

  std::ostringstream out;
  if (report.entries.empty()) {
    out << "Index\n";
    return out.str();
  }
  put_left(out, "Index", 8);

  std::vector<std::size_t> widths;
  for (const auto& e : report.entries) {
    widths.push_back(std::max<std::size_t>(10, e.label.size() + 2));
  }
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    detail::put_right(out, report.entries[i].label, widths[i]);
  }
  out << '\n';

  for (int row = 0; row < 6; ++row) {
    put_left(out, kRowNames[row], 8);
    for (std::size_t i = 0; i < report.entries.size(); ++i) {
      const auto& e = report.entries[i];
      std::optional<double> value;
      switch (row) {
        case 0: value = e.mean; break;
        case 1: value = e.std_dev; break;
        case 2: value = e.entropy; break;
        case 3: value = e.avg_gradient; break;
        case 4:
        case 5: {
          const PairEntry* p = detail::find_pair(report, e.label);
          if (p) value = (row == 4) ? p->psnr : p->rho;
          break;
        }
      }
      const std::string cell = value ? detail::format_index(*value) : "—";
      detail::put_right(out, cell, widths[i]);
    }
    out << '\n';
  }
  return out.str();
}

/// Machine mode: `<row>.<label>=<value>` lines, one per cell, where value is
/// a decimal, "inf", or "-" for unavailable. Rows: mean, sd, entropy,
/// gradient, rmse, psnr, cc.
inline std::string render_porcelain(const MetricsReport& report) {
  std::ostringstream out;
  auto line = [&out](const char* row, const std::string& label,
                     std::optional<double> v) {
    out << row << '.' << label << '=' << (v ? detail::format_porcelain(*v) : "-")
        << '\n';
  };
  for (const auto& e : report.entries) {
    line("mean", e.label, e.mean);
    line("sd", e.label, e.std_dev);
    line("entropy", e.label, e.entropy);
    line("gradient", e.label, e.avg_gradient);
  }
  for (const auto& e : report.entries) {
    const PairEntry* p = detail::find_pair(report, e.label);
    line("rmse", e.label, p ? std::optional<double>(p->rmse) : std::nullopt);
    line("psnr", e.label, p ? std::optional<double>(p->psnr) : std::nullopt);
    line("cc", e.label, p ? std::optional<double>(p->rho) : std::nullopt);
  }
  return out.str();
}

}  // namespace wavefuse

#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wavefuse/filters.hpp"
#include "wavefuse/image.hpp"

namespace wavefuse {

/// FullWpt re-splits every subband (complete 4-ary tree); Dwt re-splits only
/// the approximation band.
enum class TreeShape { FullWpt, Dwt };

inline const char* to_string(TreeShape shape) {
  return shape == TreeShape::FullWpt ? "wpt" : "dwt";
}

/// Subband address: a word over {A,H,V,D} read from the root. The empty word
/// is the undecomposed image.
using SubbandPath = std::string;

struct QuadSplit {
  Matrix a, h, v, d;
};

/// One-stage separable split with periodic extension. Filters along rows
/// first, then columns, keeping even-phase outputs. H is row-high/column-low,
/// V row-low/column-high, D row-high/column-high.
inline QuadSplit analyze_2d(const Matrix& block, const FilterBank& fb) {
  const int rows = block.rows();
  const int cols = block.cols();
  if (rows % 2 != 0 || cols % 2 != 0) {
    fail(ErrorCode::Dim, "analysis needs even dimensions, got " +
                             std::to_string(rows) + "x" + std::to_string(cols));
  }
  const int half_rows = rows / 2;
  const int half_cols = cols / 2;
  const int taps = fb.taps();

  Matrix row_lo(rows, half_cols);
  Matrix row_hi(rows, half_cols);
  for (int r = 0; r < rows; ++r) {
    for (int i = 0; i < half_cols; ++i) {
      double lo = 0.0, hi = 0.0;
      for (int k = 0; k < taps; ++k) {
        const double v = block(r, (2 * i + k) % cols);
        lo += fb.analysis_lo[k] * v;
        hi += fb.analysis_hi[k] * v;
      }
      row_lo(r, i) = lo;
      row_hi(r, i) = hi;
    }
  }

  QuadSplit out{Matrix(half_rows, half_cols), Matrix(half_rows, half_cols),
                Matrix(half_rows, half_cols), Matrix(half_rows, half_cols)};
  for (int j = 0; j < half_cols; ++j) {
    for (int i = 0; i < half_rows; ++i) {
      double ca = 0.0, cv = 0.0, ch = 0.0, cd = 0.0;
      for (int k = 0; k < taps; ++k) {
        const int rr = (2 * i + k) % rows;
        ca += fb.analysis_lo[k] * row_lo(rr, j);
        cv += fb.analysis_hi[k] * row_lo(rr, j);
        ch += fb.analysis_lo[k] * row_hi(rr, j);
        cd += fb.analysis_hi[k] * row_hi(rr, j);
      }
      out.a(i, j) = ca;
      out.v(i, j) = cv;
      out.h(i, j) = ch;
      out.d(i, j) = cd;
    }
  }
  return out;
}

/// Exact inverse of analyze_2d. The synthesis taps are the reversed analysis
/// taps; indexing them reversed realizes the adjoint of the analysis stage.
inline Matrix synthesize_2d(const Matrix& a, const Matrix& h, const Matrix& v,
                            const Matrix& d, const FilterBank& fb) {
  if (!a.same_shape(h) || !a.same_shape(v) || !a.same_shape(d)) {
    fail(ErrorCode::Dim, "subband dimensions disagree");
  }
  const int half_rows = a.rows();
  const int half_cols = a.cols();
  const int rows = 2 * half_rows;
  const int cols = 2 * half_cols;
  const int taps = fb.taps();
  const auto& lo = fb.synthesis_lo;
  const auto& hi = fb.synthesis_hi;

  Matrix row_lo(rows, half_cols, 0.0);
  Matrix row_hi(rows, half_cols, 0.0);
  for (int j = 0; j < half_cols; ++j) {
    for (int i = 0; i < half_rows; ++i) {
      for (int k = 0; k < taps; ++k) {
        const int rr = (2 * i + k) % rows;
        row_lo(rr, j) += lo[taps - 1 - k] * a(i, j) + hi[taps - 1 - k] * v(i, j);
        row_hi(rr, j) += lo[taps - 1 - k] * h(i, j) + hi[taps - 1 - k] * d(i, j);
      }
    }
  }

  Matrix out(rows, cols, 0.0);
  for (int r = 0; r < rows; ++r) {
    for (int i = 0; i < half_cols; ++i) {
      for (int k = 0; k < taps; ++k) {
        out(r, (2 * i + k) % cols) +=
            lo[taps - 1 - k] * row_lo(r, i) + hi[taps - 1 - k] * row_hi(r, i);
      }
    }
  }
  return out;
}

struct PacketDecomposition {
  TreeShape shape = TreeShape::FullWpt;
  int level = 0;
  std::string filter_name;
  int original_rows = 0;
  int original_cols = 0;
  std::map<SubbandPath, Matrix> leaves;

  SubbandPath approx_path() const { return SubbandPath(level, 'A'); }
  const Matrix& approx() const { return leaves.at(approx_path()); }
};

/// Leaf addresses of a complete tree of the given shape and level.
inline std::set<SubbandPath> expected_leaf_paths(TreeShape shape, int level) {
  std::set<SubbandPath> paths;
  if (shape == TreeShape::FullWpt) {
    std::vector<SubbandPath> frontier{""};
    for (int depth = 0; depth < level; ++depth) {
      std::vector<SubbandPath> next;
      for (const auto& p : frontier) {
        for (char theta : {'A', 'H', 'V', 'D'}) next.push_back(p + theta);
      }
      frontier = std::move(next);
    }
    paths.insert(frontier.begin(), frontier.end());
  } else {
    std::string prefix;
    for (int depth = 0; depth < level; ++depth) {
      paths.insert(prefix + "H");
      paths.insert(prefix + "V");
      paths.insert(prefix + "D");
      prefix += "A";
    }
    paths.insert(prefix);
  }
  return paths;
}

inline PacketDecomposition decompose(const Image& img, const FilterBank& fb,
                                     int level, TreeShape shape) {
  if (level < 0) fail(ErrorCode::Level, "negative decomposition level");
  const long div = 1L << level;
  if (img.rows() % div != 0 || img.cols() % div != 0) {
    fail(ErrorCode::Dim, "image " + std::to_string(img.rows()) + "x" +
                             std::to_string(img.cols()) +
                             " not divisible by 2^" + std::to_string(level));
  }

  PacketDecomposition dec;
  dec.shape = shape;
  dec.level = level;
  dec.filter_name = fb.name;
  dec.original_rows = img.rows();
  dec.original_cols = img.cols();

  std::vector<std::pair<SubbandPath, Matrix>> frontier;
  frontier.emplace_back("", img);
  for (int depth = 0; depth < level; ++depth) {
    std::vector<std::pair<SubbandPath, Matrix>> next;
    for (auto& [path, block] : frontier) {
      QuadSplit q = analyze_2d(block, fb);
      if (shape == TreeShape::FullWpt) {
        next.emplace_back(path + "A", std::move(q.a));
        next.emplace_back(path + "H", std::move(q.h));
        next.emplace_back(path + "V", std::move(q.v));
        next.emplace_back(path + "D", std::move(q.d));
      } else {
        dec.leaves.emplace(path + "H", std::move(q.h));
        dec.leaves.emplace(path + "V", std::move(q.v));
        dec.leaves.emplace(path + "D", std::move(q.d));
        next.emplace_back(path + "A", std::move(q.a));
      }
    }
    frontier = std::move(next);
  }
  for (auto& [path, block] : frontier) dec.leaves.emplace(path, std::move(block));
  return dec;
}

inline Image reconstruct(const PacketDecomposition& dec) {
  const FilterBank& fb = get_filter(dec.filter_name);

  const std::set<SubbandPath> expected = expected_leaf_paths(dec.shape, dec.level);
  if (dec.leaves.size() != expected.size()) {
    fail(ErrorCode::Tree, "expected " + std::to_string(expected.size()) +
                              " leaves, got " + std::to_string(dec.leaves.size()));
  }
  for (const auto& path : expected) {
    auto it = dec.leaves.find(path);
    if (it == dec.leaves.end()) {
      fail(ErrorCode::Tree, "missing leaf '" + path + "'");
    }
    const int depth = static_cast<int>(path.size());
    const int er = dec.original_rows >> depth;
    const int ec = dec.original_cols >> depth;
    if ((er << depth) != dec.original_rows || (ec << depth) != dec.original_cols ||
        it->second.rows() != er || it->second.cols() != ec) {
      fail(ErrorCode::Tree, "leaf '" + path + "' has unexpected dimensions");
    }
  }

  if (dec.shape == TreeShape::Dwt) {
    Matrix cur = dec.leaves.at(SubbandPath(dec.level, 'A'));
    for (int depth = dec.level; depth >= 1; --depth) {
      const std::string prefix(depth - 1, 'A');
      cur = synthesize_2d(cur, dec.leaves.at(prefix + "H"),
                          dec.leaves.at(prefix + "V"),
                          dec.leaves.at(prefix + "D"), fb);
    }
    return cur;
  }

  std::map<SubbandPath, Matrix> nodes = dec.leaves;
  for (int depth = dec.level; depth >= 1; --depth) {
    std::set<SubbandPath> prefixes;
    for (const auto& [path, m] : nodes) prefixes.insert(path.substr(0, depth - 1));
    std::map<SubbandPath, Matrix> parents;
    for (const auto& prefix : prefixes) {
      parents.emplace(prefix,
                      synthesize_2d(nodes.at(prefix + "A"), nodes.at(prefix + "H"),
                                    nodes.at(prefix + "V"), nodes.at(prefix + "D"),
                                    fb));
    }
    nodes = std::move(parents);
  }
  return nodes.at("");
}

}  // namespace wavefuse

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "wavefuse/transform.hpp"

namespace wavefuse {

/// Directive contrast of every detail leaf: coefficient over the magnitude of
/// the spatially corresponding coarsest-approximation value.
struct ContrastMap {
  std::map<SubbandPath, Matrix> leaves;
  double epsilon = 1e-12;
};

struct FusionConfig {
  std::string filter_name = "haar";
  int level = 2;
  TreeShape shape = TreeShape::FullWpt;
  double epsilon = 1e-12;
  // Ties in |contrast| always resolve to the lowest source index.
};

inline ContrastMap directive_contrast(const PacketDecomposition& dec, double epsilon) {
  if (dec.level < 1) {
    fail(ErrorCode::Level, "contrast needs at least one detail level");
  }
  const Matrix& base = dec.approx();
  const SubbandPath approx = dec.approx_path();

  ContrastMap cm;
  cm.epsilon = epsilon;
  for (const auto& [path, w] : dec.leaves) {
    if (path == approx) continue;
    // For the Dwt shape, coarser detail leaves see the approximation
    // replicated 2x per missing level; for FullWpt rep is always 1.
    const int depth = static_cast<int>(path.size());
    if (depth > dec.level) {
      fail(ErrorCode::Tree, "leaf '" + path + "' deeper than the declared level");
    }
    const int rep = 1 << (dec.level - depth);
    Matrix contrast(w.rows(), w.cols());
    for (int r = 0; r < w.rows(); ++r) {
      for (int c = 0; c < w.cols(); ++c) {
        const double denom = std::max(std::abs(base(r / rep, c / rep)), epsilon);
        contrast(r, c) = w(r, c) / denom;
      }
    }
    cm.leaves.emplace(path, std::move(contrast));
  }
  return cm;
}

namespace detail {

inline void check_same_provenance(const std::vector<PacketDecomposition>& decs) {
  const auto& first = decs.front();
  for (std::size_t i = 1; i < decs.size(); ++i) {
    const auto& dec = decs[i];
    if (dec.shape != first.shape || dec.level != first.level ||
        dec.filter_name != first.filter_name ||
        dec.original_rows != first.original_rows ||
        dec.original_cols != first.original_cols) {
      fail(ErrorCode::ShapeMismatch,
           "source " + std::to_string(i) + " disagrees on filter, level, "
           "tree shape, or dimensions");
    }
    if (dec.leaves.size() != first.leaves.size()) {
      fail(ErrorCode::ShapeMismatch,
           "source " + std::to_string(i) + " has a different leaf set");
    }
    for (const auto& [path, leaf] : first.leaves) {
      auto it = dec.leaves.find(path);
      if (it == dec.leaves.end() || !it->second.same_shape(leaf)) {
        fail(ErrorCode::ShapeMismatch,
             "source " + std::to_string(i) + " disagrees on leaf '" + path + "'");
      }
    }
  }
}

inline double median_of(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace detail

/// Fuse k >= 2 decompositions: per-position max-|contrast| selection in the
/// detail leaves, elementwise median in the approximation leaf.
inline PacketDecomposition fuse_decompositions(
    const std::vector<PacketDecomposition>& decs,
    const std::vector<ContrastMap>& maps) {
  if (decs.size() < 2) {
    fail(ErrorCode::ShapeMismatch, "fusion needs at least two sources");
  }
  if (maps.size() != decs.size()) {
    fail(ErrorCode::ShapeMismatch, "need one contrast map per source");
  }
  detail::check_same_provenance(decs);

  const auto& first = decs.front();
  const SubbandPath approx = first.approx_path();
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (maps[i].leaves.size() != first.leaves.size() - 1) {
      fail(ErrorCode::ShapeMismatch,
           "contrast map " + std::to_string(i) + " does not cover the detail leaves");
    }
    for (const auto& [path, leaf] : first.leaves) {
      if (path == approx) continue;
      auto it = maps[i].leaves.find(path);
      if (it == maps[i].leaves.end() || !it->second.same_shape(leaf)) {
        fail(ErrorCode::ShapeMismatch,
             "contrast map " + std::to_string(i) + " disagrees on leaf '" + path + "'");
      }
    }
  }

  const std::size_t k = decs.size();
  PacketDecomposition out;
  out.shape = first.shape;
  out.level = first.level;
  out.filter_name = first.filter_name;
  out.original_rows = first.original_rows;
  out.original_cols = first.original_cols;

  std::vector<double> column(k);
  for (const auto& [path, leaf] : first.leaves) {
    Matrix fused(leaf.rows(), leaf.cols());
    if (path == approx) {
      for (int r = 0; r < leaf.rows(); ++r) {
        for (int c = 0; c < leaf.cols(); ++c) {
          for (std::size_t s = 0; s < k; ++s) column[s] = decs[s].leaves.at(path)(r, c);
          fused(r, c) = detail::median_of(column);
        }
      }
    } else {
      std::vector<const Matrix*> contrasts(k);
      std::vector<const Matrix*> coeffs(k);
      for (std::size_t s = 0; s < k; ++s) {
        contrasts[s] = &maps[s].leaves.at(path);
        coeffs[s] = &decs[s].leaves.at(path);
      }
      for (int r = 0; r < leaf.rows(); ++r) {
        for (int c = 0; c < leaf.cols(); ++c) {
          std::size_t best = 0;
          double best_abs = std::abs((*contrasts[0])(r, c));
          for (std::size_t s = 1; s < k; ++s) {
            const double cand = std::abs((*contrasts[s])(r, c));
            if (cand > best_abs) {
              best = s;
              best_abs = cand;
            }
          }
          fused(r, c) = (*coeffs[best])(r, c);
        }
      }
    }
    out.leaves.emplace(path, std::move(fused));
  }
  return out;
}

/// Full grayscale pipeline: decompose, contrast, fuse, reconstruct. The
/// result stays in scalar working range; clamp only at export.
inline Image fuse_gray(const std::vector<Image>& images, const FusionConfig& cfg) {
  if (images.size() < 2) {
    fail(ErrorCode::ShapeMismatch, "fusion needs at least two source images");
  }
  for (std::size_t i = 1; i < images.size(); ++i) {
    if (!images[i].same_shape(images[0])) {
      fail(ErrorCode::ShapeMismatch,
           "source " + std::to_string(i) + " dimensions differ from source 0");
    }
  }
  if (cfg.level < 1) fail(ErrorCode::Level, "fusion level must be >= 1");
  if (!(cfg.epsilon > 0.0)) {
    throw std::invalid_argument("fusion epsilon must be positive");
  }
  const FilterBank& fb = get_filter(cfg.filter_name);

  std::vector<PacketDecomposition> decs;
  decs.reserve(images.size());
  for (const auto& img : images) decs.push_back(decompose(img, fb, cfg.level, cfg.shape));

  std::vector<ContrastMap> maps;
  maps.reserve(decs.size());
  for (const auto& dec : decs) maps.push_back(directive_contrast(dec, cfg.epsilon));

  return reconstruct(fuse_decompositions(decs, maps));
}

}  // namespace wavefuse

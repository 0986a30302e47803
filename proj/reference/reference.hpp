#pragma once

// Serial reference implementations used by the tests and the kernel
// benchmark. Everything here is written for obviousness, not speed, and
// deliberately shares no algorithmic code with the library it checks.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tubeforge/cluster.hpp"
#include "tubeforge/geometry.hpp"
#include "tubeforge/image.hpp"
#include "tubeforge/label.hpp"

namespace tubeforge::ref {

// IoU by counting unit lattice cells inside each region. Only sensible for
// small coordinates.
double iou_rasterized(const BoundingBox& a, const BoundingBox& b);

struct RefCluster {
  std::vector<MemberRef> members;  // sorted by (frame, ordinal)
  BoundingBox best_box;
};

// O(n^2) pairwise clustering: every eligible pair with iou >= threshold
// merges its two groups by eagerly relabeling the whole membership array.
// Clusters below min_cluster_boxes are dropped; output is sorted by first
// member.
std::vector<RefCluster> cluster_bruteforce(
    const std::vector<std::vector<Detection>>& frame_detections,
    const ClusterConfig& config);

// Direct frame counting with a plain floating point comparison.
Label label_by_counting(std::span<const Label> labels, double threshold = 0.7);

// Per-pixel evaluation of the half-pixel-center sampling formula, weights
// expanded rather than nested.
Image resize_naive(const Image& image, int out_width, int out_height);

// Per-pixel select / blend; the feathered path recomputes every box-blur
// window from scratch.
Image composite_naive(const Image& fg, const Image& mask, const Image& bg,
                      int binarize_threshold, int feather_radius);

// Exact rational classification metrics.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

struct ExactMetrics {
  std::optional<Rational> accuracy;
  std::optional<Rational> precision;
  std::optional<Rational> sensitivity;
  std::optional<Rational> specificity;
};

ExactMetrics metrics_exact(std::int64_t tp, std::int64_t fp, std::int64_t tn,
                           std::int64_t fn);

}  // namespace tubeforge::ref

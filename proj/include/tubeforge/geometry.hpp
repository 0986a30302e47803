#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>

namespace tubeforge {

// Axis-aligned pixel rectangle with a half-open convention:
// the box covers [x1, x2) x [y1, y2), so area and intersections are exact
// integer arithmetic. Coordinates may be negative before clamping (detectors
// emit out-of-frame boxes); a valid box always has x2 > x1 and y2 > y1.
struct BoundingBox {
  int x1 = 0;
  int y1 = 0;
  int x2 = 0;
  int y2 = 0;

  bool operator==(const BoundingBox&) const = default;
};

inline bool box_valid(const BoundingBox& b) { return b.x2 > b.x1 && b.y2 > b.y1; }

inline std::int64_t box_area(const BoundingBox& b) {
  return static_cast<std::int64_t>(b.x2 - b.x1) *
         static_cast<std::int64_t>(b.y2 - b.y1);
}

// Intersection over union. Areas are folded in integer arithmetic, with a
// single floating point division at the end.
inline double iou(const BoundingBox& a, const BoundingBox& b) {
  const int ix1 = std::max(a.x1, b.x1);
  const int iy1 = std::max(a.y1, b.y1);
  const int ix2 = std::min(a.x2, b.x2);
  const int iy2 = std::min(a.y2, b.y2);
  if (ix2 <= ix1 || iy2 <= iy1) return 0.0;
  const std::int64_t inter = static_cast<std::int64_t>(ix2 - ix1) *
                             static_cast<std::int64_t>(iy2 - iy1);
  const std::int64_t uni = box_area(a) + box_area(b) - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

inline BoundingBox union_box(const BoundingBox& a, const BoundingBox& b) {
  return {std::min(a.x1, b.x1), std::min(a.y1, b.y1),
          std::max(a.x2, b.x2), std::max(a.y2, b.y2)};
}

// Clips a box to [0, width) x [0, height). Returns nullopt when the clipped
// region has zero area, i.e. the box lies entirely outside the frame.
inline std::optional<BoundingBox> clamp_box(const BoundingBox& b, int width,
                                            int height) {
  BoundingBox c{std::clamp(b.x1, 0, width), std::clamp(b.y1, 0, height),
                std::clamp(b.x2, 0, width), std::clamp(b.y2, 0, height)};
  if (!box_valid(c)) return std::nullopt;
  return c;
}

// One detector hit: a box plus confidence, category and the frame it lives in.
struct Detection {
  BoundingBox box;
  double score = 0.0;
  int class_id = 0;
  int frame_index = 0;

  bool operator==(const Detection&) const = default;
};

}  // namespace tubeforge

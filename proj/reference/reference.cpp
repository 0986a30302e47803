#include "reference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tubeforge::ref {

double iou_rasterized(const BoundingBox& a, const BoundingBox& b) {
  const int x_lo = std::min(a.x1, b.x1);
  const int x_hi = std::max(a.x2, b.x2);
  const int y_lo = std::min(a.y1, b.y1);
  const int y_hi = std::max(a.y2, b.y2);
  std::int64_t inter = 0;
  std::int64_t uni = 0;
  for (int y = y_lo; y < y_hi; ++y) {
    for (int x = x_lo; x < x_hi; ++x) {
      const bool in_a = x >= a.x1 && x < a.x2 && y >= a.y1 && y < a.y2;
      const bool in_b = x >= b.x1 && x < b.x2 && y >= b.y1 && y < b.y2;
      if (in_a && in_b) ++inter;
      if (in_a || in_b) ++uni;
    }
  }
  if (inter == 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

double iou_direct(const BoundingBox& a, const BoundingBox& b) {
  const double iw = std::min<double>(a.x2, b.x2) - std::max<double>(a.x1, b.x1);
  const double ih = std::min<double>(a.y2, b.y2) - std::max<double>(a.y1, b.y1);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double area_a =
      static_cast<double>(a.x2 - a.x1) * static_cast<double>(a.y2 - a.y1);
  const double area_b =
      static_cast<double>(b.x2 - b.x1) * static_cast<double>(b.y2 - b.y1);
  return inter / (area_a + area_b - inter);
}

}  // namespace

std::vector<RefCluster> cluster_bruteforce(
    const std::vector<std::vector<Detection>>& frame_detections,
    const ClusterConfig& config) {
  struct Node {
    MemberRef ref;
    BoundingBox box;
  };
  std::vector<Node> nodes;
  for (int f = 0; f < static_cast<int>(frame_detections.size()); ++f)
    for (int k = 0; k < static_cast<int>(frame_detections[f].size()); ++k)
      nodes.push_back({{f, k}, frame_detections[f][k].box});

  std::vector<std::size_t> group(nodes.size());
  std::iota(group.begin(), group.end(), 0);

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const int df =
          std::abs(nodes[i].ref.frame_index - nodes[j].ref.frame_index);
      bool eligible = true;
      if (config.temporal_linking == TemporalLinking::adjacent_frame)
        eligible = df <= 1;
      else if (config.temporal_linking == TemporalLinking::same_frame_only)
        eligible = df == 0;
      if (!eligible) continue;
      if (iou_direct(nodes[i].box, nodes[j].box) < config.iou_threshold)
        continue;
      const std::size_t from = group[j];
      const std::size_t to = group[i];
      if (from == to) continue;
      for (std::size_t& g : group)
        if (g == from) g = to;
    }
  }

  std::vector<RefCluster> clusters;
  std::vector<bool> seen(nodes.size(), false);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (seen[group[i]]) continue;
    seen[group[i]] = true;
    RefCluster c;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (group[j] != group[i]) continue;
      c.members.push_back(nodes[j].ref);
      if (c.members.size() == 1) {
        c.best_box = nodes[j].box;
      } else {
        c.best_box.x1 = std::min(c.best_box.x1, nodes[j].box.x1);
        c.best_box.y1 = std::min(c.best_box.y1, nodes[j].box.y1);
        c.best_box.x2 = std::max(c.best_box.x2, nodes[j].box.x2);
        c.best_box.y2 = std::max(c.best_box.y2, nodes[j].box.y2);
      }
    }
    if (static_cast<int>(c.members.size()) >= config.min_cluster_boxes)
      clusters.push_back(std::move(c));
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const RefCluster& a, const RefCluster& b) {
              return a.members.front() < b.members.front();
            });
  return clusters;
}

Label label_by_counting(std::span<const Label> labels, double threshold) {
  std::int64_t fights = 0;
  for (Label l : labels)
    if (l == Label::Fight) ++fights;
  const double fraction =
      static_cast<double>(fights) / static_cast<double>(labels.size());
  return fraction > threshold ? Label::Fight : Label::NonFight;
}

Image resize_naive(const Image& image, int out_width, int out_height) {
  Image out(out_width, out_height, image.channels);
  for (int y = 0; y < out_height; ++y) {
    double sy = (y + 0.5) * static_cast<double>(image.height) / out_height - 0.5;
    sy = std::clamp(sy, 0.0, static_cast<double>(image.height - 1));
    const int y0 = static_cast<int>(std::floor(sy));
    const int y1 = std::min(y0 + 1, image.height - 1);
    const double fy = sy - y0;
    for (int x = 0; x < out_width; ++x) {
      double sx = (x + 0.5) * static_cast<double>(image.width) / out_width - 0.5;
      sx = std::clamp(sx, 0.0, static_cast<double>(image.width - 1));
      const int x0 = static_cast<int>(std::floor(sx));
      const int x1 = std::min(x0 + 1, image.width - 1);
      const double fx = sx - x0;
      const double w00 = (1.0 - fx) * (1.0 - fy);
      const double w01 = fx * (1.0 - fy);
      const double w10 = (1.0 - fx) * fy;
      const double w11 = fx * fy;
      for (int c = 0; c < image.channels; ++c) {
        const double v = w00 * image.at(x0, y0, c) + w01 * image.at(x1, y0, c) +
                         w10 * image.at(x0, y1, c) + w11 * image.at(x1, y1, c);
        long r = std::lround(v);
        r = std::clamp(r, 0L, 255L);
        out.at(x, y, c) = static_cast<std::uint8_t>(r);
      }
    }
  }
  return out;
}

Image composite_naive(const Image& fg, const Image& mask, const Image& bg,
                      int binarize_threshold, int feather_radius) {
  Image out(fg.width, fg.height, 3);
  const auto bin = [&](int x, int y) {
    return mask.at(x, y, 0) >= binarize_threshold ? 255 : 0;
  };
  for (int y = 0; y < fg.height; ++y) {
    for (int x = 0; x < fg.width; ++x) {
      if (feather_radius == 0) {
        const Image& src = bin(x, y) ? fg : bg;
        for (int c = 0; c < 3; ++c) out.at(x, y, c) = src.at(x, y, c);
        continue;
      }
      std::int64_t sum = 0;
      for (int dy = -feather_radius; dy <= feather_radius; ++dy) {
        for (int dx = -feather_radius; dx <= feather_radius; ++dx) {
          const int cx = std::clamp(x + dx, 0, fg.width - 1);
          const int cy = std::clamp(y + dy, 0, fg.height - 1);
          sum += bin(cx, cy);
        }
      }
      const int window = 2 * feather_radius + 1;
      const double alpha =
          static_cast<double>(sum) / (255.0 * window * window);
      for (int c = 0; c < 3; ++c) {
        const double v = alpha * fg.at(x, y, c) + (1.0 - alpha) * bg.at(x, y, c);
        long r = std::lround(v);
        r = std::clamp(r, 0L, 255L);
        out.at(x, y, c) = static_cast<std::uint8_t>(r);
      }
    }
  }
  return out;
}

ExactMetrics metrics_exact(std::int64_t tp, std::int64_t fp, std::int64_t tn,
                           std::int64_t fn) {
  ExactMetrics out;
  const std::int64_t total = tp + fp + tn + fn;
  if (total > 0) out.accuracy = Rational{tp + tn, total};
  if (tp + fp > 0) out.precision = Rational{tp, tp + fp};
  if (tp + fn > 0) out.sensitivity = Rational{tp, tp + fn};
  if (tn + fp > 0) out.specificity = Rational{tn, tn + fp};
  return out;
}

}  // namespace tubeforge::ref

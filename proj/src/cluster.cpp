#include "tubeforge/cluster.hpp"

#include <algorithm>
#include <numeric>

#include "tubeforge/error.hpp"

namespace tubeforge {

const char* temporal_linking_name(TemporalLinking linking) {
  switch (linking) {
    case TemporalLinking::any_frame: return "any-frame";
    case TemporalLinking::adjacent_frame: return "adjacent-frame";
    case TemporalLinking::same_frame_only: return "same-frame-only";
  }
  return "?";
}

bool parse_temporal_linking(const std::string& text, TemporalLinking& out) {
  if (text == "any-frame") {
    out = TemporalLinking::any_frame;
  } else if (text == "adjacent-frame") {
    out = TemporalLinking::adjacent_frame;
  } else if (text == "same-frame-only") {
    out = TemporalLinking::same_frame_only;
  } else {
    return false;
  }
  return true;
}

BoundingBox best_box_of(const std::vector<BoundingBox>& members) {
  if (members.empty()) fail(Errc::empty_cluster, "best box of no members");
  BoundingBox acc = members.front();
  for (std::size_t i = 1; i < members.size(); ++i)
    acc = union_box(acc, members[i]);
  return acc;
}

namespace {

// Union-find with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void merge(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

bool pair_eligible(TemporalLinking linking, int frame_a, int frame_b) {
  switch (linking) {
    case TemporalLinking::any_frame:
      return true;
    case TemporalLinking::adjacent_frame:
      return std::abs(frame_a - frame_b) <= 1;
    case TemporalLinking::same_frame_only:
      return frame_a == frame_b;
  }
  return false;
}

}  // namespace

std::vector<Cluster> cluster_volume(
    const std::vector<std::vector<Detection>>& frame_detections,
    const ClusterConfig& config) {
  if (config.iou_threshold < 0.0 || config.iou_threshold > 1.0)
    fail(Errc::config_error, "iou threshold outside [0,1]");
  if (config.min_cluster_boxes < 1)
    fail(Errc::config_error, "min cluster boxes must be >= 1");

  // Flatten to nodes keyed by (frame, ordinal).
  struct Node {
    MemberRef ref;
    BoundingBox box;
  };
  std::vector<Node> nodes;
  for (int f = 0; f < static_cast<int>(frame_detections.size()); ++f) {
    const auto& dets = frame_detections[f];
    for (int k = 0; k < static_cast<int>(dets.size()); ++k)
      nodes.push_back({{f, k}, dets[k].box});
  }
  if (nodes.empty()) return {};

  DisjointSets sets(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (!pair_eligible(config.temporal_linking, nodes[i].ref.frame_index,
                         nodes[j].ref.frame_index))
        continue;
      if (iou(nodes[i].box, nodes[j].box) >= config.iou_threshold)
        sets.merge(i, j);
    }
  }

  // Gather components; nodes were pushed in (frame, ordinal) order, so member
  // lists come out sorted.
  std::vector<std::vector<std::size_t>> groups(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    groups[sets.find(i)].push_back(i);

  std::vector<Cluster> clusters;
  for (const auto& group : groups) {
    if (group.empty()) continue;
    if (static_cast<int>(group.size()) < config.min_cluster_boxes) continue;
    Cluster c;
    c.best_box = nodes[group.front()].box;
    int last_frame = -1;
    for (std::size_t idx : group) {
      c.members.push_back(nodes[idx].ref);
      c.best_box = union_box(c.best_box, nodes[idx].box);
      if (nodes[idx].ref.frame_index != last_frame) {
        ++c.frame_coverage;
        last_frame = nodes[idx].ref.frame_index;
      }
    }
    clusters.push_back(std::move(c));
  }

  std::sort(clusters.begin(), clusters.end(),
            [](const Cluster& a, const Cluster& b) {
              const auto key = [](const Cluster& c) {
                return std::make_tuple(c.members.front().frame_index,
                                       c.best_box.x1, c.best_box.y1,
                                       c.best_box.x2, c.best_box.y2,
                                       c.members.front());
              };
              return key(a) < key(b);
            });
  for (std::size_t i = 0; i < clusters.size(); ++i)
    clusters[i].cluster_id = static_cast<int>(i);
  return clusters;
}

}  // namespace tubeforge

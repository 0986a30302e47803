#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tubeforge/geometry.hpp"

namespace tubeforge {

enum class TemporalLinking { any_frame, adjacent_frame, same_frame_only };

const char* temporal_linking_name(TemporalLinking linking);
bool parse_temporal_linking(const std::string& text, TemporalLinking& out);

struct ClusterConfig {
  double iou_threshold = 0.10;
  TemporalLinking temporal_linking = TemporalLinking::any_frame;
  int min_cluster_boxes = 1;
};

// (frame within the volume, ordinal within that frame's detection list)
struct MemberRef {
  int frame_index = 0;
  int ordinal = 0;

  bool operator==(const MemberRef&) const = default;
  auto operator<=>(const MemberRef&) const = default;
};

struct Cluster {
  int cluster_id = 0;
  std::vector<MemberRef> members;  // sorted by (frame, ordinal)
  BoundingBox best_box;            // union_box fold over all member boxes
  int frame_coverage = 0;          // distinct frames with >= 1 member
};

// Componentwise min/max over all member boxes. Errc::empty_cluster on [].
BoundingBox best_box_of(const std::vector<BoundingBox>& members);

// Connected components over all detections of one volume. Detections are
// indexed per frame; two detections are joined when their pair is eligible
// under temporal_linking and iou >= iou_threshold. Clusters smaller than
// min_cluster_boxes are dropped. Output order is (first frame, best_box.x1,
// best_box.y1, best_box.x2, best_box.y2, first member) and cluster_id is the
// position in that order, so results are deterministic.
std::vector<Cluster> cluster_volume(
    const std::vector<std::vector<Detection>>& frame_detections,
    const ClusterConfig& config);

}  // namespace tubeforge

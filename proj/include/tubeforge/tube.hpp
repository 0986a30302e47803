#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tubeforge/cluster.hpp"
#include "tubeforge/resize.hpp"
#include "tubeforge/volume.hpp"

namespace tubeforge {

// All frames of one volume, contiguous, frame-major RGB24.
struct VolumeFrames {
  int width = 0;
  int height = 0;
  int frame_span = 0;
  std::vector<std::uint8_t> data;

  VolumeFrames() = default;
  VolumeFrames(int w, int h, int span)
      : width(w), height(h), frame_span(span),
        data(static_cast<std::size_t>(span) * w * h * 3, 0) {}

  std::size_t frame_bytes() const {
    return static_cast<std::size_t>(width) * height * 3;
  }
  std::uint8_t* frame(int index) {
    return data.data() + static_cast<std::size_t>(index) * frame_bytes();
  }
  const std::uint8_t* frame(int index) const {
    return data.data() + static_cast<std::size_t>(index) * frame_bytes();
  }
};

struct TubeProvenance {
  std::string source_id;
  int volume_index = 0;
  int cluster_id = 0;
  BoundingBox best_box;  // cluster box before clamping to the frame
  int frame_width = 0;
  int frame_height = 0;
};

// A fixed-shape (frame_span, out_height, out_width, 3) unsigned-byte tensor:
// frame-major, row-major within a frame, interleaved RGB.
struct Tube {
  std::vector<std::uint8_t> data;
  int frame_span = 0;
  int out_width = 0;
  int out_height = 0;
  VolumeLabel label;
  TubeProvenance provenance;

  std::vector<std::int64_t> shape() const {
    return {frame_span, out_height, out_width, 3};
  }
};

// One tube per cluster whose best box survives clamping against the frame;
// degenerate clusters are skipped with a warning. Every frame of the volume
// is cropped with the cluster's (clamped) best box and resized to the spec.
// Work fans out across (cluster, frame) pairs; output is deterministic for
// any worker count.
std::vector<Tube> extract_tubes(const VolumeFrames& frames,
                                std::span<const Cluster> clusters,
                                const VolumeLabel& label,
                                const ResizeSpec& spec,
                                const std::string& source_id,
                                int volume_index);

}  // namespace tubeforge

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tubeforge/label.hpp"

namespace tubeforge {

// One fixed-length run of frames. In pad mode the final span may reach past
// the real frame count; padded_frames says how many trailing frames are
// copies of the last real frame.
struct VolumeSpan {
  int volume_index = 0;
  std::int64_t start_frame = 0;
  int frame_span = 0;
  int padded_frames = 0;
};

// Tiles the first N*floor(F/N) frames with non-overlapping N-frame volumes.
// The remainder is dropped, unless pad_remainder is set, in which case one
// extra volume is added whose missing tail repeats the final frame.
std::vector<VolumeSpan> segment_volumes(std::int64_t frame_count,
                                        int volume_length,
                                        bool pad_remainder = false);

struct VolumeLabel {
  Label value = Label::NonFight;
  double fight_frame_fraction = 0.0;
};

// Strictly-more-than threshold, expressed in thousandths so the boundary is
// exact integer arithmetic: Fight iff 1000*fight_count > permille*N.
// The default 700 is the "more than 70%" rule.
inline constexpr int kDefaultFightPermille = 700;

VolumeLabel label_volume(std::span<const Label> labels,
                         int threshold_permille = kDefaultFightPermille);

}  // namespace tubeforge

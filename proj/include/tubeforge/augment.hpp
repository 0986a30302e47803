#pragma once

#include <vector>

#include "tubeforge/image.hpp"

namespace tubeforge {

// Background substitution. The mask is binarized at binarize_threshold
// (value >= threshold selects foreground). With feather_radius 0 every output
// pixel is copied verbatim from fg or bg; with radius r > 0 the binary mask
// is box-blurred into an alpha matte and the images are blended.
struct AugmentSpec {
  std::vector<Image> background;  // single image or a clip that loops
  int binarize_threshold = 128;
  int feather_radius = 0;
};

Image composite_frame(const Image& fg, const Image& mask, const Image& bg,
                      const AugmentSpec& spec);

// Per-frame composite of a whole clip. masks must match frames in length;
// the background clip loops when shorter.
std::vector<Image> augment_clip(const std::vector<Image>& frames,
                                const std::vector<Image>& masks,
                                const AugmentSpec& spec);

}  // namespace tubeforge

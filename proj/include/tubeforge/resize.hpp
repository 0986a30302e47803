#pragma once

#include "tubeforge/geometry.hpp"
#include "tubeforge/image.hpp"

namespace tubeforge {

// Bilinear with half-pixel centers: the source coordinate of output index d
// is (d + 0.5) * (in / out) - 0.5, clamped to the source edges. Channels are
// interpolated independently in double precision and rounded to the nearest
// integer, ties away from zero. This convention is fixed so that tubes are
// bit-reproducible across machines and worker counts.
struct ResizeSpec {
  int out_width = 224;
  int out_height = 224;
};

// Parallel over output rows. Identity-size inputs come back bit-identical.
Image resize_bilinear(const Image& image, const ResizeSpec& spec);

// Pixel-exact sub-image over [x1,x2) x [y1,y2). The box must already be
// clamped inside the frame; Errc::degenerate_box otherwise.
Image crop_frame(const Image& frame, const BoundingBox& box);

// Fills `out` (spec.out_height rows of spec.out_width RGB pixels) from a raw
// interleaved RGB24 frame without an intermediate Image. Serial; used by the
// tube extractor which parallelizes across frames instead.
void resize_bilinear_into(const std::uint8_t* frame, int frame_width,
                          int frame_height, const BoundingBox& crop,
                          const ResizeSpec& spec, std::uint8_t* out);

}  // namespace tubeforge

#include "tubeforge/resize.hpp"

#include <cmath>
#include <vector>

#include "tubeforge/error.hpp"

namespace tubeforge {

namespace {

struct Tap {
  int lo = 0;
  int hi = 0;
  double frac = 0.0;
};

// Source taps for one output axis. Sample positions are clamped to the edges,
// so out-of-range fractions collapse onto the border pixel.
std::vector<Tap> make_taps(int in_size, int out_size) {
  std::vector<Tap> taps(static_cast<std::size_t>(out_size));
  const double scale = static_cast<double>(in_size) / out_size;
  for (int d = 0; d < out_size; ++d) {
    double s = (d + 0.5) * scale - 0.5;
    if (s < 0.0) s = 0.0;
    const double limit = static_cast<double>(in_size - 1);
    if (s > limit) s = limit;
    Tap t;
    t.lo = static_cast<int>(s);
    t.frac = s - t.lo;
    t.hi = t.lo + 1 < in_size ? t.lo + 1 : in_size - 1;
    taps[static_cast<std::size_t>(d)] = t;
  }
  return taps;
}

inline std::uint8_t round_channel(double v) {
  long r = std::lround(v);  // ties away from zero
  if (r < 0) r = 0;
  if (r > 255) r = 255;
  return static_cast<std::uint8_t>(r);
}

// One output row. `src` points at the full frame; the crop offset is already
// folded into the taps' pixel indices by the caller.
void sample_row(const std::uint8_t* src, std::size_t src_stride,
                const std::vector<Tap>& cols, const Tap& row,
                std::uint8_t* out) {
  const std::uint8_t* top = src + static_cast<std::size_t>(row.lo) * src_stride;
  const std::uint8_t* bot = src + static_cast<std::size_t>(row.hi) * src_stride;
  const double fy = row.frac;
  for (const Tap& col : cols) {
    const std::size_t o0 = static_cast<std::size_t>(col.lo) * 3;
    const std::size_t o1 = static_cast<std::size_t>(col.hi) * 3;
    const double fx = col.frac;
    for (int c = 0; c < 3; ++c) {
      const double t = (1.0 - fx) * top[o0 + c] + fx * top[o1 + c];
      const double b = (1.0 - fx) * bot[o0 + c] + fx * bot[o1 + c];
      *out++ = round_channel((1.0 - fy) * t + fy * b);
    }
  }
}

}  // namespace

void resize_bilinear_into(const std::uint8_t* frame, int frame_width,
                          int frame_height, const BoundingBox& crop,
                          const ResizeSpec& spec, std::uint8_t* out) {
  if (spec.out_width < 1 || spec.out_height < 1)
    fail(Errc::config_error, "resize target must be >= 1x1");
  if (crop.x1 < 0 || crop.y1 < 0 || crop.x2 > frame_width ||
      crop.y2 > frame_height || !box_valid(crop))
    fail(Errc::degenerate_box, "crop box outside frame");

  std::vector<Tap> cols = make_taps(crop.x2 - crop.x1, spec.out_width);
  std::vector<Tap> rows = make_taps(crop.y2 - crop.y1, spec.out_height);
  // fold the crop origin into the taps
  for (Tap& t : cols) {
    t.lo += crop.x1;
    t.hi += crop.x1;
  }
  for (Tap& t : rows) {
    t.lo += crop.y1;
    t.hi += crop.y1;
  }

  const std::size_t src_stride = static_cast<std::size_t>(frame_width) * 3;
  const std::size_t dst_stride = static_cast<std::size_t>(spec.out_width) * 3;
  for (int y = 0; y < spec.out_height; ++y) {
    sample_row(frame, src_stride, cols, rows[static_cast<std::size_t>(y)],
               out + static_cast<std::size_t>(y) * dst_stride);
  }
}

Image resize_bilinear(const Image& image, const ResizeSpec& spec) {
  if (image.channels != 3)
    fail(Errc::dimension_mismatch, "resize expects RGB images");
  if (image.width < 1 || image.height < 1)
    fail(Errc::dimension_mismatch, "resize expects a non-empty image");
  if (spec.out_width < 1 || spec.out_height < 1)
    fail(Errc::config_error, "resize target must be >= 1x1");

  Image out(spec.out_width, spec.out_height, 3);
  std::vector<Tap> cols = make_taps(image.width, spec.out_width);
  std::vector<Tap> rows = make_taps(image.height, spec.out_height);
  const std::size_t src_stride = static_cast<std::size_t>(image.width) * 3;
  const std::size_t dst_stride = static_cast<std::size_t>(spec.out_width) * 3;

#pragma omp parallel for schedule(static)
  for (int y = 0; y < spec.out_height; ++y) {
    sample_row(image.pixels.data(), src_stride, cols,
               rows[static_cast<std::size_t>(y)],
               out.pixels.data() + static_cast<std::size_t>(y) * dst_stride);
  }
  return out;
}

Image crop_frame(const Image& frame, const BoundingBox& box) {
  if (frame.channels != 3)
    fail(Errc::dimension_mismatch, "crop expects RGB images");
  const auto clamped = clamp_box(box, frame.width, frame.height);
  if (!clamped)
    fail(Errc::degenerate_box, "box lies entirely outside the frame");

  const BoundingBox b = *clamped;
  Image out(b.x2 - b.x1, b.y2 - b.y1, 3);
  const std::size_t row_bytes = static_cast<std::size_t>(out.width) * 3;
  for (int y = 0; y < out.height; ++y) {
    const std::uint8_t* src =
        frame.pixels.data() +
        ((static_cast<std::size_t>(b.y1 + y) * frame.width + b.x1) * 3);
    std::copy_n(src, row_bytes,
                out.pixels.data() + static_cast<std::size_t>(y) * row_bytes);
  }
  return out;
}

}  // namespace tubeforge

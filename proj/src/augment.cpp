#include "tubeforge/augment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "tubeforge/error.hpp"

namespace tubeforge {

namespace {

void require_same_size(const Image& a, const Image& b, const char* what) {
  if (a.width != b.width || a.height != b.height)
    fail(Errc::dimension_mismatch,
         std::string(what) + " size " + std::to_string(b.width) + "x" +
             std::to_string(b.height) + " does not match frame size " +
             std::to_string(a.width) + "x" + std::to_string(a.height));
}

inline std::uint8_t round_channel(double v) {
  long r = std::lround(v);
  if (r < 0) r = 0;
  if (r > 255) r = 255;
  return static_cast<std::uint8_t>(r);
}

// Sliding-window sum with replicated edges via prefix sums: the clamped
// window equals the in-range part plus the overhang times the border value.
template <typename In, typename Out>
void box_pass_rows(const std::vector<In>& src, int width, int height,
                   int radius, std::vector<Out>& dst) {
#pragma omp parallel for schedule(static)
  for (int y = 0; y < height; ++y) {
    const In* row = src.data() + static_cast<std::size_t>(y) * width;
    Out* out = dst.data() + static_cast<std::size_t>(y) * width;
    std::vector<Out> prefix(static_cast<std::size_t>(width) + 1, 0);
    for (int x = 0; x < width; ++x)
      prefix[static_cast<std::size_t>(x) + 1] =
          prefix[static_cast<std::size_t>(x)] + row[x];
    for (int x = 0; x < width; ++x) {
      const int lo = x - radius;
      const int hi = x + radius;
      const int clo = std::max(lo, 0);
      const int chi = std::min(hi, width - 1);
      Out sum = prefix[static_cast<std::size_t>(chi) + 1] -
                prefix[static_cast<std::size_t>(clo)];
      if (lo < 0) sum += static_cast<Out>(-lo) * row[0];
      if (hi > width - 1) sum += static_cast<Out>(hi - (width - 1)) * row[width - 1];
      out[x] = sum;
    }
  }
}

// Binarized-mask box blur, exact integer sums. Output per pixel is the sum of
// the (2r+1)^2 window of 0/255 values with replicated edges.
std::vector<std::uint64_t> blur_mask(const std::vector<std::uint8_t>& bin,
                                     int width, int height, int radius) {
  std::vector<std::uint32_t> horiz(bin.size());
  box_pass_rows<std::uint8_t, std::uint32_t>(bin, width, height, radius, horiz);

  // second pass over columns == first pass over the transposed grid
  std::vector<std::uint32_t> horiz_t(bin.size());
#pragma omp parallel for schedule(static)
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      horiz_t[static_cast<std::size_t>(x) * height + y] =
          horiz[static_cast<std::size_t>(y) * width + x];

  std::vector<std::uint64_t> vert_t(bin.size());
  box_pass_rows<std::uint32_t, std::uint64_t>(horiz_t, height, width, radius,
                                              vert_t);

  std::vector<std::uint64_t> out(bin.size());
#pragma omp parallel for schedule(static)
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      out[static_cast<std::size_t>(y) * width + x] =
          vert_t[static_cast<std::size_t>(x) * height + y];
  return out;
}

}  // namespace

Image composite_frame(const Image& fg, const Image& mask, const Image& bg,
                      const AugmentSpec& spec) {
  if (fg.channels != 3 || bg.channels != 3)
    fail(Errc::dimension_mismatch, "foreground and background must be RGB");
  if (mask.channels != 1)
    fail(Errc::dimension_mismatch, "mask must be single-channel");
  require_same_size(fg, mask, "mask");
  require_same_size(fg, bg, "background");

  const int w = fg.width;
  const int h = fg.height;
  const std::size_t n = static_cast<std::size_t>(w) * h;

  std::vector<std::uint8_t> bin(n);
  for (std::size_t i = 0; i < n; ++i)
    bin[i] = mask.pixels[i] >= spec.binarize_threshold ? 255 : 0;

  Image out(w, h, 3);
  if (spec.feather_radius == 0) {
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::size_t p = static_cast<std::size_t>(y) * w + x;
        const Image& src = bin[p] ? fg : bg;
        for (int c = 0; c < 3; ++c)
          out.pixels[p * 3 + c] = src.pixels[p * 3 + c];
      }
    }
    return out;
  }

  const int r = spec.feather_radius;
  const std::vector<std::uint64_t> blurred = blur_mask(bin, w, h, r);
  const double denom =
      255.0 * static_cast<double>(2 * r + 1) * static_cast<double>(2 * r + 1);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t p = static_cast<std::size_t>(y) * w + x;
      const double alpha = static_cast<double>(blurred[p]) / denom;
      for (int c = 0; c < 3; ++c) {
        const double v = alpha * fg.pixels[p * 3 + c] +
                         (1.0 - alpha) * bg.pixels[p * 3 + c];
        out.pixels[p * 3 + c] = round_channel(v);
      }
    }
  }
  return out;
}

std::vector<Image> augment_clip(const std::vector<Image>& frames,
                                const std::vector<Image>& masks,
                                const AugmentSpec& spec) {
  if (frames.size() != masks.size())
    fail(Errc::length_mismatch,
         std::to_string(frames.size()) + " frames but " +
             std::to_string(masks.size()) + " masks");
  if (spec.background.empty())
    fail(Errc::config_error, "augment spec has no background");

  std::vector<Image> out(frames.size());
  // composite_frame already fans out across rows; frames stay sequential so
  // nested teams do not oversubscribe, and output order is positional anyway
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const Image& bg = spec.background[i % spec.background.size()];
    out[i] = composite_frame(frames[i], masks[i], bg, spec);
  }
  return out;
}

}  // namespace tubeforge

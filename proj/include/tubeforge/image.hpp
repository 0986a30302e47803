#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace tubeforge {

// Interleaved unsigned-byte raster. channels is 3 for RGB frames and 1 for
// masks; pixels are row-major, channel-interleaved.
struct Image {
  int width = 0;
  int height = 0;
  int channels = 3;
  std::vector<std::uint8_t> pixels;

  Image() = default;
  Image(int w, int h, int c)
      : width(w), height(h), channels(c),
        pixels(static_cast<std::size_t>(w) * h * c, 0) {}

  std::uint8_t& at(int x, int y, int c) {
    return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  std::uint8_t at(int x, int y, int c) const {
    return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }

  std::size_t byte_size() const { return pixels.size(); }

  bool operator==(const Image&) const = default;
};

// Binary PPM (P6, RGB) and PGM (P5, single channel), maxval 255. This is the
// raster format used by the image-directory frame sources.
Image read_pnm(const std::filesystem::path& path);
void write_pnm(const Image& image, const std::filesystem::path& path);

}  // namespace tubeforge

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "tubeforge/geometry.hpp"
#include "tubeforge/image.hpp"

namespace tubeforge::test {

// Self-cleaning scratch directory.
class TempDir {
 public:
  TempDir() {
    auto base = std::filesystem::temp_directory_path() / "tubeforge_test_XXXXXX";
    std::string tmpl = base.string();
    if (::mkdtemp(tmpl.data()) == nullptr)
      throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

inline std::vector<std::uint8_t> read_file_bytes(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file_bytes(const std::filesystem::path& path,
                             const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

inline void write_text(const std::filesystem::path& path,
                       const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  out << text;
}

inline BoundingBox random_box(std::mt19937_64& rng, int max_coord = 64) {
  const int x1 = static_cast<int>(rng() % static_cast<unsigned>(max_coord - 1));
  const int y1 = static_cast<int>(rng() % static_cast<unsigned>(max_coord - 1));
  const int w = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_coord - x1 - 1 > 0 ? max_coord - x1 - 1 : 1));
  const int h = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_coord - y1 - 1 > 0 ? max_coord - y1 - 1 : 1));
  return {x1, y1, x1 + w, y1 + h};
}

inline Image random_image(std::mt19937_64& rng, int width, int height,
                          int channels = 3) {
  Image img(width, height, channels);
  for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng() & 0xff);
  return img;
}

inline Image constant_image(int width, int height, std::uint8_t r,
                            std::uint8_t g, std::uint8_t b) {
  Image img(width, height, 3);
  for (std::size_t i = 0; i < img.pixels.size(); i += 3) {
    img.pixels[i] = r;
    img.pixels[i + 1] = g;
    img.pixels[i + 2] = b;
  }
  return img;
}

}  // namespace tubeforge::test

#include "tubeforge/image.hpp"

#include <cctype>
#include <fstream>
#include <string>

#include "tubeforge/error.hpp"

namespace tubeforge {

namespace {

// Reads one whitespace-delimited token, skipping '#' comment lines.
std::string next_token(std::istream& in) {
  std::string tok;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  while (c != EOF && !std::isspace(c)) {
    tok.push_back(static_cast<char>(c));
    c = in.get();
  }
  return tok;
}

int parse_pnm_int(std::istream& in, const std::filesystem::path& path) {
  std::string tok = next_token(in);
  try {
    std::size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size() || v < 0) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    fail(Errc::parse_error, "bad PNM header token '" + tok + "' in " + path.string());
  }
}

}  // namespace

Image read_pnm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_failure, "cannot open " + path.string());

  std::string magic = next_token(in);
  int channels = 0;
  if (magic == "P6") {
    channels = 3;
  } else if (magic == "P5") {
    channels = 1;
  } else {
    fail(Errc::bad_magic, "not a binary PPM/PGM file: " + path.string());
  }

  const int width = parse_pnm_int(in, path);
  const int height = parse_pnm_int(in, path);
  const int maxval = parse_pnm_int(in, path);
  if (width < 1 || height < 1)
    fail(Errc::parse_error, "bad PNM dimensions in " + path.string());
  if (maxval != 255)
    fail(Errc::parse_error, "only maxval 255 PNM supported: " + path.string());

  Image img(width, height, channels);
  in.read(reinterpret_cast<char*>(img.pixels.data()),
          static_cast<std::streamsize>(img.byte_size()));
  if (static_cast<std::size_t>(in.gcount()) != img.byte_size())
    fail(Errc::truncated_frame, "short PNM payload in " + path.string());
  return img;
}

void write_pnm(const Image& image, const std::filesystem::path& path) {
  if (image.channels != 3 && image.channels != 1)
    fail(Errc::dimension_mismatch, "PNM supports 1 or 3 channels");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::io_failure, "cannot create " + path.string());
  out << (image.channels == 3 ? "P6" : "P5") << "\n"
      << image.width << " " << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.byte_size()));
  if (!out) fail(Errc::io_failure, "write failed for " + path.string());
}

}  // namespace tubeforge

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cmds.hpp"
#include "tubeforge/augment.hpp"
#include "tubeforge/error.hpp"
#include "tubeforge/ingest.hpp"
#include "tubeforge/parallel.hpp"

namespace tubeforge::cli {

namespace fs = std::filesystem;

namespace {

struct AugmentOptions {
  std::string frames;
  std::string masks;
  std::string background;
  std::string out;
  int width = 0;
  int height = 0;
  int binarize_threshold = 128;
  int feather = 0;
  int workers = 0;
};

std::vector<Image> read_clip(const std::string& path, int width, int height,
                             int channels) {
  std::vector<Image> clip;
  if (fs::is_directory(path)) {
    const char* ext = channels == 3 ? ".ppm" : ".pgm";
    for (std::size_t i = 0;; ++i) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "frame_%06zu%s", i, ext);
      const fs::path file = fs::path(path) / buf;
      if (!fs::exists(file)) break;
      Image img = read_pnm(file);
      if (img.channels != channels)
        fail(Errc::dimension_mismatch,
             file.string() + ": expected " + std::to_string(channels) +
                 " channel(s)");
      clip.push_back(std::move(img));
    }
    if (clip.empty())
      fail(Errc::io_failure, "no frame_%06d" + std::string(ext) + " files in " + path);
    return clip;
  }

  if (width < 1 || height < 1)
    fail(Errc::config_error,
         "--width and --height are required for raw inputs");
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_failure, "cannot open " + path);
  const std::size_t frame_bytes =
      static_cast<std::size_t>(width) * height * channels;
  for (;;) {
    Image img(width, height, channels);
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(frame_bytes));
    const auto got = static_cast<std::size_t>(in.gcount());
    if (got == 0) break;
    if (got != frame_bytes)
      fail(Errc::truncated_frame, path + " ends mid-frame");
    clip.push_back(std::move(img));
  }
  return clip;
}

void write_clip(const std::vector<Image>& clip, const std::string& out,
                bool directory_mode) {
  if (directory_mode) {
    fs::create_directories(out);
    for (std::size_t i = 0; i < clip.size(); ++i) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "frame_%06zu.ppm", i);
      write_pnm(clip[i], fs::path(out) / buf);
    }
    return;
  }
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!file) fail(Errc::io_failure, "cannot create " + out);
  for (const Image& img : clip)
    file.write(reinterpret_cast<const char*>(img.pixels.data()),
               static_cast<std::streamsize>(img.byte_size()));
  if (!file) fail(Errc::io_failure, "write failed for " + out);
}

void run(const AugmentOptions& opt) {
  if (opt.workers > 0) set_worker_count(opt.workers);

  const std::vector<Image> frames =
      read_clip(opt.frames, opt.width, opt.height, 3);
  const int w = frames.front().width;
  const int h = frames.front().height;
  const std::vector<Image> masks = read_clip(opt.masks, w, h, 1);

  AugmentSpec spec;
  spec.binarize_threshold = opt.binarize_threshold;
  spec.feather_radius = opt.feather;
  const fs::path bg(opt.background);
  if (bg.extension() == ".ppm" || bg.extension() == ".pgm") {
    spec.background.push_back(read_pnm(bg));
  } else {
    spec.background = read_clip(opt.background, w, h, 3);
  }

  const std::vector<Image> composited = augment_clip(frames, masks, spec);
  write_clip(composited, opt.out, fs::is_directory(opt.frames));
  std::printf("augment: frames=%zu background_frames=%zu feather=%d out=%s\n",
              composited.size(), spec.background.size(), opt.feather,
              opt.out.c_str());
}

}  // namespace

void register_augment(CLI::App& app) {
  auto opt = std::make_shared<AugmentOptions>();
  CLI::App* cmd = app.add_subcommand(
      "augment",
      "composite foreground persons onto a new background via masks");
  cmd->add_option("--frames", opt->frames,
                  "raw RGB24 file or directory of frame_%06d.ppm")
      ->required();
  cmd->add_option("--masks", opt->masks,
                  "raw single-channel file or directory of frame_%06d.pgm")
      ->required();
  cmd->add_option("--background", opt->background,
                  "PPM image, or raw RGB24 clip that loops")
      ->required();
  cmd->add_option("--out", opt->out,
                  "output file (raw input) or directory (directory input)")
      ->required();
  cmd->add_option("--width", opt->width, "frame width for raw inputs");
  cmd->add_option("--height", opt->height, "frame height for raw inputs");
  cmd->add_option("--binarize-threshold", opt->binarize_threshold,
                  "mask binarization threshold (default 128)");
  cmd->add_option("--feather", opt->feather,
                  "box-blur radius for soft mask edges (default 0)");
  cmd->add_option("--workers", opt->workers, "worker threads (0 = default)");
  cmd->callback([opt] { run(*opt); });
}

}  // namespace tubeforge::cli

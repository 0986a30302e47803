#include <cstdio>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "cmds.hpp"
#include "tubeforge/error.hpp"
#include "tubeforge/pipeline.hpp"

namespace tubeforge::cli {

namespace {

struct ExtractOptions {
  std::string frames;
  int width = 0;
  int height = 0;
  std::string detections;
  std::string labels;
  std::string out;
  std::string format = "npy";
  int volume_length = 128;
  double fight_fraction = 0.7;
  double iou_threshold = 0.10;
  std::string linking = "any-frame";
  int min_cluster_boxes = 1;
  int workers = 0;
  bool pad_remainder = false;
  int person_class = 0;
  std::string split = "train";
  std::string source_id;
  int resize_width = 224;
  int resize_height = 224;
  int chunk_frames = 16;
  std::string dump_clusters;
};

PipelineConfig make_config(const ExtractOptions& opt) {
  PipelineConfig config;
  config.volume_length = opt.volume_length;
  if (opt.fight_fraction < 0.0 || opt.fight_fraction > 1.0)
    fail(Errc::config_error, "--fight-fraction must be in [0,1]");
  config.fight_threshold_permille =
      static_cast<int>(std::lround(opt.fight_fraction * 1000.0));
  config.pad_remainder = opt.pad_remainder;
  config.cluster.iou_threshold = opt.iou_threshold;
  if (!parse_temporal_linking(opt.linking, config.cluster.temporal_linking))
    fail(Errc::config_error, "--linking must be any-frame, adjacent-frame or "
                             "same-frame-only");
  config.cluster.min_cluster_boxes = opt.min_cluster_boxes;
  config.resize = {opt.resize_width, opt.resize_height};
  if (!parse_tensor_format(opt.format, config.format))
    fail(Errc::config_error, "--format must be npy, flatbin or chunked");
  config.chunk_frames = opt.chunk_frames;
  config.person_class_id = opt.person_class;
  config.workers = opt.workers;
  config.split = opt.split;
  config.output_dir = opt.out;
  if (!opt.dump_clusters.empty()) config.cluster_dump_dir = opt.dump_clusters;
  return config;
}

std::unique_ptr<FrameSource> open_frames(const ExtractOptions& opt) {
  if (opt.frames == "-") {
    if (opt.width < 1 || opt.height < 1)
      fail(Errc::config_error, "--width and --height are required for raw streams");
    return open_raw_stream(std::cin, opt.width, opt.height);
  }
  if (std::filesystem::is_directory(opt.frames))
    return open_image_directory(opt.frames);
  if (opt.width < 1 || opt.height < 1)
    fail(Errc::config_error, "--width and --height are required for raw streams");
  return open_raw_stream(std::filesystem::path(opt.frames), opt.width,
                         opt.height);
}

void run(const ExtractOptions& opt) {
  PipelineConfig config = make_config(opt);
  config.source_id = !opt.source_id.empty() ? opt.source_id
                     : opt.frames == "-"
                         ? "stdin"
                         : std::filesystem::path(opt.frames).filename().string();

  auto source = open_frames(opt);
  const DetectionMap detections =
      read_detections(opt.detections, opt.person_class);
  const IntervalSet annotations = IntervalSet::parse(opt.labels);

  // fail fast when the frame count is known up front
  if (source->frame_count()) annotations.validate_range(*source->frame_count());

  const ExtractStats stats =
      run_extract(*source, detections, annotations, config);
  std::printf(
      "extract: volumes=%d clusters=%d tubes=%d skipped=%d frames=%lld "
      "dropped=%lld manifest=%s\n",
      stats.volumes, stats.clusters, stats.tubes_written, stats.tubes_skipped,
      static_cast<long long>(stats.frames_read),
      static_cast<long long>(stats.dropped_frames),
      stats.manifest_path.c_str());
}

}  // namespace

void register_extract(CLI::App& app) {
  auto opt = std::make_shared<ExtractOptions>();
  CLI::App* cmd = app.add_subcommand(
      "extract", "run the full tube pipeline: segment, label, cluster, crop, "
                 "resize, serialize");
  cmd->add_option("--frames", opt->frames,
                  "raw RGB24 file, '-' for stdin, or a directory of "
                  "frame_%06d.ppm files")
      ->required();
  cmd->add_option("--width", opt->width, "frame width for raw streams");
  cmd->add_option("--height", opt->height, "frame height for raw streams");
  cmd->add_option("--detections", opt->detections, "detection JSONL file")
      ->required();
  cmd->add_option("--labels", opt->labels, "annotation CSV file")->required();
  cmd->add_option("--out", opt->out, "output directory")->required();
  cmd->add_option("--format", opt->format, "npy | flatbin | chunked");
  cmd->add_option("--volume-length", opt->volume_length,
                  "frames per volume (default 128)");
  cmd->add_option("--fight-fraction", opt->fight_fraction,
                  "strict fight-frame fraction threshold (default 0.7)");
  cmd->add_option("--iou-threshold", opt->iou_threshold,
                  "clustering IoU threshold (default 0.10)");
  cmd->add_option("--linking", opt->linking,
                  "any-frame | adjacent-frame | same-frame-only");
  cmd->add_option("--min-cluster-boxes", opt->min_cluster_boxes,
                  "drop clusters with fewer boxes");
  cmd->add_option("--workers", opt->workers, "worker threads (0 = default)");
  cmd->add_flag("--pad-remainder", opt->pad_remainder,
                "pad the trailing partial volume by repeating the last frame");
  cmd->add_option("--person-class", opt->person_class,
                  "detector class id to keep (default 0)");
  cmd->add_option("--split", opt->split, "train | test | val");
  cmd->add_option("--source-id", opt->source_id,
                  "provenance id (default: frames filename)");
  cmd->add_option("--resize-width", opt->resize_width, "tube width (default 224)");
  cmd->add_option("--resize-height", opt->resize_height,
                  "tube height (default 224)");
  cmd->add_option("--chunk-frames", opt->chunk_frames,
                  "frames per chunk for the chunked format (default 16)");
  cmd->add_option("--dump-clusters", opt->dump_clusters,
                  "directory for per-volume cluster debug JSON");
  cmd->callback([opt] { run(*opt); });
}

}  // namespace tubeforge::cli

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tubeforge/cluster.hpp"
#include "tubeforge/ingest.hpp"
#include "tubeforge/manifest.hpp"
#include "tubeforge/resize.hpp"
#include "tubeforge/tensor_io.hpp"
#include "tubeforge/volume.hpp"

namespace tubeforge {

struct PipelineConfig {
  int volume_length = 128;
  int fight_threshold_permille = kDefaultFightPermille;
  bool pad_remainder = false;
  ClusterConfig cluster;
  ResizeSpec resize;
  TensorFormat format = TensorFormat::npy;
  int chunk_frames = 16;
  int person_class_id = 0;
  int workers = 0;  // 0 keeps the library default
  std::string split = "train";
  std::string source_id;
  std::filesystem::path output_dir;
  std::filesystem::path cluster_dump_dir;  // empty disables the debug dump
};

// Volumes, labels and cluster partitions without touching any pixels.
struct VolumeAnalysis {
  VolumeSpan span;
  VolumeLabel label;
  std::vector<Cluster> clusters;
};

// Validates that every detection's frame index is below frame_count and that
// labels cover exactly frame_count frames, then segments, labels and clusters
// each volume. Padded tail frames repeat the final frame's label and carry no
// detections.
std::vector<VolumeAnalysis> analyze_video(std::int64_t frame_count,
                                          const DetectionMap& detections,
                                          const LabelVector& labels,
                                          const PipelineConfig& config);

struct ExtractStats {
  std::int64_t frames_read = 0;
  std::int64_t dropped_frames = 0;
  int volumes = 0;
  int clusters = 0;
  int tubes_written = 0;
  int tubes_skipped = 0;
  std::filesystem::path manifest_path;
};

// Streams the source volume by volume: cluster, extract, serialize. One tube
// file per surviving cluster plus a manifest in config.output_dir. Output is
// bit-identical for any worker count.
ExtractStats run_extract(FrameSource& source, const DetectionMap& detections,
                         const IntervalSet& annotations,
                         const PipelineConfig& config);

}  // namespace tubeforge

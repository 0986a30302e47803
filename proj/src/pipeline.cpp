#include "tubeforge/pipeline.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "tubeforge/error.hpp"
#include "tubeforge/log.hpp"
#include "tubeforge/parallel.hpp"
#include "tubeforge/tube.hpp"

namespace tubeforge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void validate_detections(const DetectionMap& detections,
                         std::int64_t frame_count) {
  if (detections.empty()) return;
  const int last = detections.rbegin()->first;
  if (last >= frame_count)
    fail(Errc::parse_error,
         "detections reference frame " + std::to_string(last) +
             " but the video has only " + std::to_string(frame_count) +
             " frames");
}

// Per-frame detection lists for one volume. Padded frames have none.
std::vector<std::vector<Detection>> slice_detections(
    const DetectionMap& detections, const VolumeSpan& span) {
  std::vector<std::vector<Detection>> out(
      static_cast<std::size_t>(span.frame_span));
  const std::int64_t real = span.frame_span - span.padded_frames;
  for (std::int64_t f = 0; f < real; ++f) {
    const auto it = detections.find(static_cast<int>(span.start_frame + f));
    if (it != detections.end()) out[static_cast<std::size_t>(f)] = it->second;
  }
  return out;
}

// Label slice, volume label and cluster partition for one span. real_frames
// is the number of non-padded frames; padded tail frames repeat the label of
// the last real frame and carry no detections.
template <typename LabelAt>
VolumeAnalysis analyze_one(const VolumeSpan& span,
                           const DetectionMap& detections,
                           const LabelAt& label_at,
                           const PipelineConfig& config) {
  VolumeAnalysis a;
  a.span = span;
  const std::int64_t real = span.frame_span - span.padded_frames;
  LabelVector slice(static_cast<std::size_t>(span.frame_span));
  for (std::int64_t f = 0; f < span.frame_span; ++f)
    slice[static_cast<std::size_t>(f)] =
        label_at(span.start_frame + std::min(f, real - 1));
  a.label = label_volume(slice, config.fight_threshold_permille);
  a.clusters =
      cluster_volume(slice_detections(detections, span), config.cluster);
  return a;
}

std::string tube_filename(int volume_index, int cluster_id,
                          TensorFormat format) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "tube_v%05d_c%03d%s", volume_index, cluster_id,
                tensor_format_extension(format));
  return buf;
}

void dump_clusters(const fs::path& dir, const VolumeAnalysis& analysis) {
  json doc = {{"volume_index", analysis.span.volume_index},
              {"start_frame", analysis.span.start_frame},
              {"frame_span", analysis.span.frame_span},
              {"label", label_name(analysis.label.value)},
              {"fight_frame_fraction", analysis.label.fight_frame_fraction},
              {"clusters", json::array()}};
  for (const Cluster& c : analysis.clusters) {
    json members = json::array();
    for (const MemberRef& m : c.members)
      members.push_back({{"frame", m.frame_index}, {"ordinal", m.ordinal}});
    doc["clusters"].push_back(
        {{"cluster_id", c.cluster_id},
         {"best_box", {c.best_box.x1, c.best_box.y1, c.best_box.x2, c.best_box.y2}},
         {"frame_coverage", c.frame_coverage},
         {"members", members}});
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "volume_%05d.json", analysis.span.volume_index);
  std::ofstream out(dir / buf, std::ios::trunc);
  if (!out) fail(Errc::io_failure, "cannot create cluster dump in " + dir.string());
  out << doc.dump(2) << "\n";
}

}  // namespace

std::vector<VolumeAnalysis> analyze_video(std::int64_t frame_count,
                                          const DetectionMap& detections,
                                          const LabelVector& labels,
                                          const PipelineConfig& config) {
  if (static_cast<std::int64_t>(labels.size()) != frame_count)
    fail(Errc::config_error,
         "label vector covers " + std::to_string(labels.size()) +
             " frames but the video has " + std::to_string(frame_count));
  validate_detections(detections, frame_count);

  const auto spans =
      segment_volumes(frame_count, config.volume_length, config.pad_remainder);
  std::vector<VolumeAnalysis> out;
  out.reserve(spans.size());
  for (const VolumeSpan& span : spans)
    out.push_back(analyze_one(
        span, detections,
        [&](std::int64_t f) { return labels[static_cast<std::size_t>(f)]; },
        config));
  return out;
}

ExtractStats run_extract(FrameSource& source, const DetectionMap& detections,
                         const IntervalSet& annotations,
                         const PipelineConfig& config) {
  if (config.volume_length < 1)
    fail(Errc::config_error, "volume length must be >= 1");
  if (config.workers > 0) set_worker_count(config.workers);
  fs::create_directories(config.output_dir);
  if (!config.cluster_dump_dir.empty())
    fs::create_directories(config.cluster_dump_dir);

  const std::string source_id =
      config.source_id.empty() ? std::string("stream") : config.source_id;
  const int n = config.volume_length;

  ExtractStats stats;
  std::vector<ManifestEntry> entries;
  VolumeFrames frames(source.width(), source.height(), n);
  bool exhausted = false;
  int volume_index = 0;

  while (!exhausted) {
    // fill one volume
    int got = 0;
    while (got < n && source.next(frames.frame(got))) ++got;
    if (got < n) exhausted = true;
    stats.frames_read += got;
    if (got == 0) break;

    VolumeSpan span{volume_index, static_cast<std::int64_t>(volume_index) * n,
                    n, 0};
    if (got < n) {
      if (!config.pad_remainder) {
        stats.dropped_frames += got;
        break;
      }
      span.padded_frames = n - got;
      for (int f = got; f < n; ++f)
        std::copy_n(frames.frame(got - 1), frames.frame_bytes(),
                    frames.frame(f));
    }

    // labels straight from the interval set; range check happens at EOF
    const VolumeAnalysis analysis = analyze_one(
        span, detections,
        [&](std::int64_t f) { return annotations.label_at(f); }, config);
    stats.clusters += static_cast<int>(analysis.clusters.size());
    if (!config.cluster_dump_dir.empty())
      dump_clusters(config.cluster_dump_dir, analysis);

    const std::vector<Tube> tubes =
        extract_tubes(frames, analysis.clusters, analysis.label, config.resize,
                      source_id, volume_index);
    stats.tubes_skipped +=
        static_cast<int>(analysis.clusters.size() - tubes.size());
    for (const Tube& tube : tubes) {
      const std::string filename = tube_filename(
          volume_index, tube.provenance.cluster_id, config.format);
      const TensorContainer container =
          write_tensor(config.format, tube.data, tube.shape(),
                       config.output_dir / filename, config.chunk_frames);
      ManifestEntry entry;
      entry.path = filename;
      entry.format = config.format;
      entry.shape = container.shape;
      entry.label = tube.label.value;
      entry.provenance = tube.provenance;
      entry.checksum = container.checksum;
      entries.push_back(std::move(entry));
      ++stats.tubes_written;
    }

    ++stats.volumes;
    ++volume_index;
  }

  validate_detections(detections, stats.frames_read);
  annotations.validate_range(stats.frames_read);

  if (stats.clusters == 0) log_warn("no clusters found in any volume");
  stats.manifest_path = config.output_dir / "manifest.json";
  write_manifest(entries, config.split, stats.manifest_path);
  return stats;
}

}  // namespace tubeforge

#include "tubeforge/tube.hpp"

#include "tubeforge/log.hpp"

namespace tubeforge {

std::vector<Tube> extract_tubes(const VolumeFrames& frames,
                                std::span<const Cluster> clusters,
                                const VolumeLabel& label,
                                const ResizeSpec& spec,
                                const std::string& source_id,
                                int volume_index) {
  // Resolve crop boxes up front so the parallel loop only sees survivors.
  struct Job {
    const Cluster* cluster;
    BoundingBox crop;
  };
  std::vector<Job> jobs;
  for (const Cluster& c : clusters) {
    const auto clamped = clamp_box(c.best_box, frames.width, frames.height);
    if (!clamped) {
      log_warn("volume " + std::to_string(volume_index) + " cluster " +
               std::to_string(c.cluster_id) +
               ": best box lies outside the frame, tube skipped");
      continue;
    }
    jobs.push_back({&c, *clamped});
  }

  const std::size_t out_frame_bytes =
      static_cast<std::size_t>(spec.out_width) * spec.out_height * 3;
  std::vector<Tube> tubes(jobs.size());
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    Tube& t = tubes[j];
    t.frame_span = frames.frame_span;
    t.out_width = spec.out_width;
    t.out_height = spec.out_height;
    t.label = label;
    t.provenance = {source_id,          volume_index,  jobs[j].cluster->cluster_id,
                    jobs[j].cluster->best_box, frames.width, frames.height};
    t.data.resize(out_frame_bytes * static_cast<std::size_t>(frames.frame_span));
  }

  const std::int64_t total =
      static_cast<std::int64_t>(jobs.size()) * frames.frame_span;
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < total; ++k) {
    const auto j = static_cast<std::size_t>(k / frames.frame_span);
    const int f = static_cast<int>(k % frames.frame_span);
    resize_bilinear_into(frames.frame(f), frames.width, frames.height,
                         jobs[j].crop, spec,
                         tubes[j].data.data() + out_frame_bytes * f);
  }
  return tubes;
}

}  // namespace tubeforge

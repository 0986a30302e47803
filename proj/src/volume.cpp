#include "tubeforge/volume.hpp"

#include "tubeforge/error.hpp"

namespace tubeforge {

std::vector<VolumeSpan> segment_volumes(std::int64_t frame_count,
                                        int volume_length, bool pad_remainder) {
  if (volume_length < 1) fail(Errc::config_error, "volume length must be >= 1");
  if (frame_count < 0) fail(Errc::config_error, "negative frame count");

  std::vector<VolumeSpan> spans;
  const std::int64_t whole = frame_count / volume_length;
  spans.reserve(static_cast<std::size_t>(whole) + 1);
  for (std::int64_t i = 0; i < whole; ++i) {
    spans.push_back({static_cast<int>(i), i * volume_length, volume_length, 0});
  }
  const std::int64_t remainder = frame_count % volume_length;
  if (pad_remainder && remainder > 0) {
    spans.push_back({static_cast<int>(whole), whole * volume_length,
                     volume_length,
                     static_cast<int>(volume_length - remainder)});
  }
  return spans;
}

VolumeLabel label_volume(std::span<const Label> labels,
                         int threshold_permille) {
  if (labels.empty()) fail(Errc::config_error, "empty label slice");
  if (threshold_permille < 0 || threshold_permille > 1000)
    fail(Errc::config_error, "fight threshold outside [0,1]");

  std::int64_t fight = 0;
  for (Label l : labels)
    if (l == Label::Fight) ++fight;

  const auto n = static_cast<std::int64_t>(labels.size());
  VolumeLabel out;
  out.fight_frame_fraction = static_cast<double>(fight) / static_cast<double>(n);
  // exact rational comparison; 700 permille on N=128 flips at 90 frames
  out.value = (fight * 1000 > threshold_permille * n) ? Label::Fight
                                                      : Label::NonFight;
  return out;
}

}  // namespace tubeforge

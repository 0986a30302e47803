#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "tubeforge/geometry.hpp"
#include "tubeforge/label.hpp"

namespace tubeforge {

using DetectionMap = std::map<int, std::vector<Detection>>;

// Sequential single-consumer source of RGB24 frames. Every frame is exactly
// width*height*3 bytes; frames come in increasing index order with no gaps.
class FrameSource {
 public:
  virtual ~FrameSource() = default;

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t frame_bytes() const {
    return static_cast<std::size_t>(width_) * height_ * 3;
  }
  // Known for directories and regular files, nullopt for pipes.
  std::optional<std::int64_t> frame_count() const { return frame_count_; }

  // Fills `out` (frame_bytes() long) with the next frame. Returns false at a
  // clean end of stream. Throws Errc::truncated_frame when the source ends
  // mid-frame.
  virtual bool next(std::uint8_t* out) = 0;

 protected:
  int width_ = 0;
  int height_ = 0;
  std::optional<std::int64_t> frame_count_;
};

// Raw interleaved RGB24 with no container. Any external decoder can feed
// this, e.g. ffmpeg -i in.mp4 -f rawvideo -pix_fmt rgb24 -.
class RawStreamSource final : public FrameSource {
 public:
  // Caller keeps the stream alive; frame_count stays unknown.
  RawStreamSource(std::istream& stream, int width, int height);
  // File-backed variant; frame count is derived from the file size, which
  // must be an exact multiple of the frame size.
  RawStreamSource(const std::filesystem::path& path, int width, int height);

  bool next(std::uint8_t* out) override;

 private:
  std::unique_ptr<std::istream> owned_;
  std::istream* stream_ = nullptr;
  std::int64_t yielded_ = 0;
};

// Directory of frame_%06d.ppm files (binary PPM); lexicographic order equals
// frame order and indices must be contiguous from 0.
class ImageDirectorySource final : public FrameSource {
 public:
  explicit ImageDirectorySource(const std::filesystem::path& dir);

  bool next(std::uint8_t* out) override;

 private:
  std::vector<std::filesystem::path> files_;
  std::size_t cursor_ = 0;
};

std::unique_ptr<FrameSource> open_raw_stream(std::istream& stream, int width,
                                             int height);
std::unique_ptr<FrameSource> open_raw_stream(const std::filesystem::path& path,
                                             int width, int height);
std::unique_ptr<FrameSource> open_image_directory(
    const std::filesystem::path& dir);

// Detection JSONL: one {"frame":int,"box":[x1,y1,x2,y2],"score":float,
// "class":int} object per line. Records whose class differs from
// person_class_id are dropped; boxes with non-positive width or height are a
// hard error. Frames absent from the file simply have no entry.
DetectionMap read_detections(const std::filesystem::path& path,
                             int person_class_id = 0);

// Inverse of read_detections, used for synthetic corpora.
void write_detections(const DetectionMap& detections,
                      const std::filesystem::path& path);

// One "start_frame,end_frame,label" annotation, bounds inclusive.
struct LabelInterval {
  std::int64_t start = 0;
  std::int64_t end = 0;
  Label label = Label::NonFight;
};

// Parsed annotation file with overlap checking done; frames outside every
// interval are NonFight.
class IntervalSet {
 public:
  static IntervalSet parse(const std::filesystem::path& path);

  Label label_at(std::int64_t frame) const;
  // Throws Errc::interval_out_of_range when any interval reaches past
  // frame_count.
  void validate_range(std::int64_t frame_count) const;
  LabelVector materialize(std::int64_t frame_count) const;

  const std::vector<LabelInterval>& intervals() const { return intervals_; }

 private:
  std::vector<LabelInterval> intervals_;  // sorted by start
};

// Annotation CSV -> per-frame labels of exactly frame_count entries.
LabelVector read_labels(const std::filesystem::path& path,
                        std::int64_t frame_count);

}  // namespace tubeforge

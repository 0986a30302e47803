#include "tubeforge/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tubeforge/error.hpp"
#include "tubeforge/image.hpp"

namespace tubeforge {

namespace fs = std::filesystem;
using nlohmann::json;

bool parse_label(const std::string& text, Label& out) {
  std::string t;
  t.reserve(text.size());
  for (char c : text) t.push_back(static_cast<char>(std::tolower(c)));
  if (t == "fight") {
    out = Label::Fight;
    return true;
  }
  if (t == "nonfight" || t == "non-fight" || t == "non_fight") {
    out = Label::NonFight;
    return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// RawStreamSource

RawStreamSource::RawStreamSource(std::istream& stream, int width, int height) {
  if (width < 1 || height < 1)
    fail(Errc::config_error, "raw stream needs width and height >= 1");
  width_ = width;
  height_ = height;
  stream_ = &stream;
}

RawStreamSource::RawStreamSource(const fs::path& path, int width, int height) {
  if (width < 1 || height < 1)
    fail(Errc::config_error, "raw stream needs width and height >= 1");
  width_ = width;
  height_ = height;
  std::error_code ec;
  const auto size = fs::file_size(path, ec);
  if (ec) fail(Errc::io_failure, "cannot stat " + path.string());
  if (size % frame_bytes() != 0)
    fail(Errc::truncated_frame,
         path.string() + ": size " + std::to_string(size) +
             " is not a multiple of the frame size " +
             std::to_string(frame_bytes()));
  frame_count_ = static_cast<std::int64_t>(size / frame_bytes());
  auto file = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*file) fail(Errc::io_failure, "cannot open " + path.string());
  stream_ = file.get();
  owned_ = std::move(file);
}

bool RawStreamSource::next(std::uint8_t* out) {
  stream_->read(reinterpret_cast<char*>(out),
                static_cast<std::streamsize>(frame_bytes()));
  const auto got = static_cast<std::size_t>(stream_->gcount());
  if (got == 0) return false;
  if (got != frame_bytes())
    fail(Errc::truncated_frame,
         "stream ended mid-frame after frame " + std::to_string(yielded_ - 1) +
             " (" + std::to_string(got) + " of " +
             std::to_string(frame_bytes()) + " bytes)");
  ++yielded_;
  return true;
}

// ---------------------------------------------------------------------------
// ImageDirectorySource

ImageDirectorySource::ImageDirectorySource(const fs::path& dir) {
  if (!fs::is_directory(dir))
    fail(Errc::io_failure, dir.string() + " is not a directory");
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.size() == 16 && name.rfind("frame_", 0) == 0 &&
        name.substr(12) == ".ppm" &&
        std::all_of(name.begin() + 6, name.begin() + 12,
                    [](char c) { return std::isdigit(c); })) {
      files_.push_back(entry.path());
    }
  }
  std::sort(files_.begin(), files_.end());
  for (std::size_t i = 0; i < files_.size(); ++i) {
    const std::string expect = [&] {
      char buf[32];
      std::snprintf(buf, sizeof buf, "frame_%06zu.ppm", i);
      return std::string(buf);
    }();
    if (files_[i].filename().string() != expect)
      fail(Errc::parse_error,
           "frame index gap in " + dir.string() + ": expected " + expect +
               ", found " + files_[i].filename().string());
  }
  if (files_.empty())
    fail(Errc::io_failure, "no frame_%06d.ppm files in " + dir.string());

  Image first = read_pnm(files_[0]);
  if (first.channels != 3)
    fail(Errc::dimension_mismatch, files_[0].string() + " is not RGB");
  width_ = first.width;
  height_ = first.height;
  frame_count_ = static_cast<std::int64_t>(files_.size());
}

bool ImageDirectorySource::next(std::uint8_t* out) {
  if (cursor_ >= files_.size()) return false;
  Image img = read_pnm(files_[cursor_]);
  if (img.width != width_ || img.height != height_ || img.channels != 3)
    fail(Errc::dimension_mismatch,
         files_[cursor_].string() + " does not match the first frame's size");
  std::copy(img.pixels.begin(), img.pixels.end(), out);
  ++cursor_;
  return true;
}

std::unique_ptr<FrameSource> open_raw_stream(std::istream& stream, int width,
                                             int height) {
  return std::make_unique<RawStreamSource>(stream, width, height);
}

std::unique_ptr<FrameSource> open_raw_stream(const fs::path& path, int width,
                                             int height) {
  return std::make_unique<RawStreamSource>(path, width, height);
}

std::unique_ptr<FrameSource> open_image_directory(const fs::path& dir) {
  return std::make_unique<ImageDirectorySource>(dir);
}

// ---------------------------------------------------------------------------
// Detections

DetectionMap read_detections(const fs::path& path, int person_class_id) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_failure, "cannot open " + path.string());

  DetectionMap out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::exception& e) {
      fail(Errc::parse_error,
           path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
    try {
      const int frame = record.at("frame").get<int>();
      const auto& box = record.at("box");
      if (!box.is_array() || box.size() != 4)
        fail(Errc::parse_error, path.string() + ":" + std::to_string(line_no) +
                                    ": box must be [x1,y1,x2,y2]");
      Detection det;
      det.frame_index = frame;
      det.box = {box[0].get<int>(), box[1].get<int>(), box[2].get<int>(),
                 box[3].get<int>()};
      det.score = record.at("score").get<double>();
      det.class_id = record.at("class").get<int>();
      if (frame < 0)
        fail(Errc::parse_error, path.string() + ":" + std::to_string(line_no) +
                                    ": negative frame index");
      if (det.box.x2 <= det.box.x1 || det.box.y2 <= det.box.y1)
        fail(Errc::negative_area, path.string() + ":" +
                                      std::to_string(line_no) +
                                      ": box has non-positive area");
      if (det.score < 0.0 || det.score > 1.0)
        fail(Errc::parse_error, path.string() + ":" + std::to_string(line_no) +
                                    ": score outside [0,1]");
      if (det.class_id == person_class_id) out[frame].push_back(det);
    } catch (const json::exception& e) {
      fail(Errc::parse_error,
           path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void write_detections(const DetectionMap& detections, const fs::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(Errc::io_failure, "cannot create " + path.string());
  for (const auto& [frame, dets] : detections) {
    for (const Detection& d : dets) {
      json record = {{"frame", frame},
                     {"box", {d.box.x1, d.box.y1, d.box.x2, d.box.y2}},
                     {"score", d.score},
                     {"class", d.class_id}};
      out << record.dump() << "\n";
    }
  }
  if (!out) fail(Errc::io_failure, "write failed for " + path.string());
}

// ---------------------------------------------------------------------------
// Labels

IntervalSet IntervalSet::parse(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_failure, "cannot open " + path.string());

  IntervalSet set;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream ss(line);
    std::string start_s, end_s, label_s;
    if (!std::getline(ss, start_s, ',') || !std::getline(ss, end_s, ',') ||
        !std::getline(ss, label_s))
      fail(Errc::parse_error, path.string() + ":" + std::to_string(line_no) +
                                  ": expected start,end,label");
    LabelInterval iv;
    try {
      iv.start = std::stoll(start_s);
      iv.end = std::stoll(end_s);
    } catch (const std::exception&) {
      fail(Errc::parse_error, path.string() + ":" + std::to_string(line_no) +
                                  ": bad frame number");
    }
    // trim label
    const auto lb = label_s.find_first_not_of(" \t");
    const auto le = label_s.find_last_not_of(" \t");
    if (lb == std::string::npos ||
        !parse_label(label_s.substr(lb, le - lb + 1), iv.label))
      fail(Errc::parse_error, path.string() + ":" + std::to_string(line_no) +
                                  ": label must be fight or nonfight");
    if (iv.start < 0 || iv.end < iv.start)
      fail(Errc::parse_error, path.string() + ":" + std::to_string(line_no) +
                                  ": bad interval bounds");
    set.intervals_.push_back(iv);
  }

  std::sort(set.intervals_.begin(), set.intervals_.end(),
            [](const LabelInterval& a, const LabelInterval& b) {
              return a.start < b.start;
            });
  for (std::size_t i = 1; i < set.intervals_.size(); ++i) {
    if (set.intervals_[i].start <= set.intervals_[i - 1].end)
      fail(Errc::overlapping_intervals,
           path.string() + ": intervals [" +
               std::to_string(set.intervals_[i - 1].start) + "," +
               std::to_string(set.intervals_[i - 1].end) + "] and [" +
               std::to_string(set.intervals_[i].start) + "," +
               std::to_string(set.intervals_[i].end) + "] overlap");
  }
  return set;
}

Label IntervalSet::label_at(std::int64_t frame) const {
  // intervals are sorted and disjoint
  auto it = std::upper_bound(
      intervals_.begin(), intervals_.end(), frame,
      [](std::int64_t f, const LabelInterval& iv) { return f < iv.start; });
  if (it == intervals_.begin()) return Label::NonFight;
  --it;
  return frame <= it->end ? it->label : Label::NonFight;
}

void IntervalSet::validate_range(std::int64_t frame_count) const {
  for (const LabelInterval& iv : intervals_) {
    if (iv.end >= frame_count)
      fail(Errc::interval_out_of_range,
           "annotation interval [" + std::to_string(iv.start) + "," +
               std::to_string(iv.end) + "] exceeds frame count " +
               std::to_string(frame_count));
  }
}

LabelVector IntervalSet::materialize(std::int64_t frame_count) const {
  LabelVector labels(static_cast<std::size_t>(frame_count), Label::NonFight);
  for (const LabelInterval& iv : intervals_) {
    for (std::int64_t f = iv.start; f <= iv.end && f < frame_count; ++f)
      labels[static_cast<std::size_t>(f)] = iv.label;
  }
  return labels;
}

LabelVector read_labels(const fs::path& path, std::int64_t frame_count) {
  IntervalSet set = IntervalSet::parse(path);
  set.validate_range(frame_count);
  return set.materialize(frame_count);
}

}  // namespace tubeforge

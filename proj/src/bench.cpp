#include "tubeforge/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <sys/utsname.h>

#include <json.hpp>

#include "tubeforge/checksum.hpp"
#include "tubeforge/error.hpp"

namespace tubeforge {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

constexpr const char* kCorpusManifest = "corpus.json";
constexpr const char* kDisclaimer =
    "Load-time ratios depend on hardware, filesystem and cache state; treat "
    "them as machine-specific observations, not reproducible constants.";

// splitmix64; fully specified so corpora are bit-identical everywhere.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double percentile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  if (v.empty()) return 0.0;
  const auto idx = static_cast<std::size_t>(
      std::llround(q * static_cast<double>(v.size() - 1)));
  return v[idx];
}

std::string machine_descriptor() {
  std::ostringstream ss;
  struct ::utsname un{};
  if (::uname(&un) == 0) {
    ss << un.sysname << " " << un.machine << ", kernel " << un.release;
  } else {
    ss << "unknown machine";
  }
  ss << ", " << std::thread::hardware_concurrency() << " hardware threads";
  return ss.str();
}

std::string tube_stem(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "tube_%04d", index);
  return buf;
}

// keeps the loads from being optimized away
volatile std::uint64_t g_sink = 0;

}  // namespace

std::vector<std::uint8_t> corpus_payload(std::uint64_t seed, int index,
                                         std::int64_t byte_count) {
  std::vector<std::uint8_t> payload(static_cast<std::size_t>(byte_count));
  SplitMix64 rng{seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) + 1))};
  std::size_t i = 0;
  while (i + 8 <= payload.size()) {
    const std::uint64_t word = rng.next();
    for (int b = 0; b < 8; ++b)
      payload[i++] = static_cast<std::uint8_t>((word >> (8 * b)) & 0xff);
  }
  if (i < payload.size()) {
    const std::uint64_t word = rng.next();
    for (int b = 0; i < payload.size(); ++b)
      payload[i++] = static_cast<std::uint8_t>((word >> (8 * b)) & 0xff);
  }
  return payload;
}

BenchCorpus generate_corpus(int count, const Shape& shape, std::uint64_t seed,
                            const fs::path& out_dir, int chunk_frames) {
  if (count < 1) fail(Errc::config_error, "corpus needs count >= 1");
  const std::int64_t bytes = shape_product(shape);
  fs::create_directories(out_dir);

  BenchCorpus corpus;
  corpus.shape = shape;
  corpus.seed = seed;
  corpus.count = count;
  corpus.files.resize(static_cast<std::size_t>(count) * 3);

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    const std::vector<std::uint8_t> payload = corpus_payload(seed, i, bytes);
    const std::string stem = tube_stem(i);
    const TensorContainer npy =
        write_npy(payload, shape, out_dir / (stem + ".npy"));
    const TensorContainer flat =
        write_flatbin(payload, shape, out_dir / (stem + ".bin"));
    const TensorContainer chk =
        write_chunked(payload, shape, out_dir / (stem + ".chk"), chunk_frames);
    corpus.files[static_cast<std::size_t>(i) * 3 + 0] = {
        TensorFormat::npy, stem + ".npy", npy.checksum};
    corpus.files[static_cast<std::size_t>(i) * 3 + 1] = {
        TensorFormat::flatbin, stem + ".bin", flat.checksum};
    corpus.files[static_cast<std::size_t>(i) * 3 + 2] = {
        TensorFormat::chunked, stem + ".chk", chk.checksum};
  }

  json doc = {{"shape", shape},
              {"seed", seed},
              {"count", count},
              {"files", json::array()}};
  for (const BenchCorpus::File& f : corpus.files)
    doc["files"].push_back({{"format", tensor_format_name(f.format)},
                            {"path", f.path},
                            {"checksum", f.checksum}});
  std::ofstream out(out_dir / kCorpusManifest, std::ios::trunc);
  if (!out) fail(Errc::io_failure, "cannot create corpus manifest");
  out << doc.dump(2) << "\n";
  if (!out) fail(Errc::io_failure, "corpus manifest write failed");
  return corpus;
}

BenchCorpus load_corpus(const fs::path& dir) {
  const fs::path manifest = dir / kCorpusManifest;
  std::ifstream in(manifest);
  if (!in)
    fail(Errc::corpus_missing, "no corpus manifest at " + manifest.string());
  json doc;
  try {
    in >> doc;
    BenchCorpus corpus;
    corpus.shape = doc.at("shape").get<Shape>();
    corpus.seed = doc.at("seed").get<std::uint64_t>();
    corpus.count = doc.at("count").get<int>();
    for (const json& f : doc.at("files")) {
      BenchCorpus::File file;
      if (!parse_tensor_format(f.at("format").get<std::string>(), file.format))
        fail(Errc::parse_error, "unknown format in corpus manifest");
      file.path = f.at("path").get<std::string>();
      file.checksum = f.at("checksum").get<std::uint64_t>();
      if (!fs::exists(dir / file.path))
        fail(Errc::corpus_missing, "corpus file missing: " + file.path);
      corpus.files.push_back(file);
    }
    return corpus;
  } catch (const json::exception& e) {
    fail(Errc::parse_error, manifest.string() + ": " + e.what());
  }
}

const char* access_pattern_name(AccessPattern pattern) {
  return pattern == AccessPattern::full_read ? "full-read" : "random-frame";
}

bool parse_access_pattern(const std::string& text, AccessPattern& out) {
  if (text == "full-read") {
    out = AccessPattern::full_read;
  } else if (text == "random-frame") {
    out = AccessPattern::random_frame;
  } else {
    return false;
  }
  return true;
}

namespace {

// One timed load. Returns bytes accounted for by the read path.
std::uint64_t load_once(TensorFormat format, const fs::path& path,
                        AccessPattern pattern, int file_index, int rep,
                        std::int64_t frames) {
  IoStats stats;
  if (pattern == AccessPattern::full_read) {
    switch (format) {
      case TensorFormat::npy: {
        const TensorData t = read_npy(path, &stats);
        g_sink = g_sink ^ fnv1a64(t.data);
        break;
      }
      case TensorFormat::flatbin: {
        // memory-mapped access; every payload page is touched by the fold
        g_sink = g_sink ^ sum_flatbin_mmap(path, &stats);
        break;
      }
      case TensorFormat::chunked: {
        const TensorData t = read_chunked(path, &stats);
        g_sink = g_sink ^ fnv1a64(t.data);
        break;
      }
    }
  } else {
    const std::int64_t frame =
        static_cast<std::int64_t>((static_cast<std::uint64_t>(file_index) *
                                       2654435761ULL +
                                   static_cast<std::uint64_t>(rep) * 40503ULL) %
                                  static_cast<std::uint64_t>(frames));
    switch (format) {
      case TensorFormat::npy:
        g_sink = g_sink ^ fnv1a64(read_npy_frame(path, frame, &stats));
        break;
      case TensorFormat::flatbin:
        g_sink = g_sink ^ fnv1a64(read_flatbin_frame(path, frame, &stats));
        break;
      case TensorFormat::chunked: {
        const ChunkedIndex index = read_chunked_index(path, &stats);
        const std::size_t chunk = chunk_of_frame(index, frame);
        g_sink = g_sink ^ fnv1a64(read_chunked_chunk(path, index, chunk, &stats));
        break;
      }
    }
  }
  return stats.bytes_read;
}

double measure_timer_overhead_ns() {
  std::vector<double> samples;
  samples.reserve(1001);
  for (int i = 0; i < 1001; ++i) {
    const auto a = Clock::now();
    const auto b = Clock::now();
    samples.push_back(
        std::chrono::duration<double, std::nano>(b - a).count());
  }
  return median(std::move(samples));
}

}  // namespace

BenchReport run_bench(const fs::path& corpus_dir, int repetitions,
                      AccessPattern pattern) {
  if (repetitions < 3)
    fail(Errc::config_error, "repetitions must be >= 3 for a stable median");
  const BenchCorpus corpus = load_corpus(corpus_dir);
  const std::int64_t frames = corpus.shape.front();

  BenchReport report;
  report.environment = machine_descriptor();
  report.repetitions = repetitions;
  report.pattern = pattern;
  report.timer_overhead_ns = measure_timer_overhead_ns();
  report.disclaimer = kDisclaimer;

  for (const TensorFormat format :
       {TensorFormat::npy, TensorFormat::flatbin, TensorFormat::chunked}) {
    std::vector<fs::path> files;
    for (const BenchCorpus::File& f : corpus.files)
      if (f.format == format) files.push_back(corpus_dir / f.path);

    FormatBench fb;
    fb.format = format;
    fb.files = static_cast<int>(files.size());
    for (const fs::path& p : files)
      fb.total_bytes += static_cast<std::uint64_t>(fs::file_size(p));

    std::vector<double> rep_totals;
    std::vector<double> warm_samples;
    for (int rep = 0; rep < repetitions; ++rep) {
      double total_ms = 0.0;
      std::uint64_t bytes = 0;
      for (std::size_t i = 0; i < files.size(); ++i) {
        const auto t0 = Clock::now();
        bytes += load_once(format, files[i], pattern, static_cast<int>(i), rep,
                           frames);
        const auto t1 = Clock::now();
        const double ms = ms_between(t0, t1);
        total_ms += ms;
        if (rep > 0) warm_samples.push_back(ms);
      }
      rep_totals.push_back(total_ms);
      if (rep == 0) fb.bytes_read = bytes;
    }
    fb.cold_load_ms = rep_totals.front();
    fb.warm_load_ms =
        median(std::vector<double>(rep_totals.begin() + 1, rep_totals.end()));
    fb.p50_ms = percentile(warm_samples, 0.50);
    fb.p95_ms = percentile(warm_samples, 0.95);
    report.per_format.push_back(fb);
  }
  return report;
}

std::string bench_report_json(const BenchReport& report) {
  json doc = {{"environment", report.environment},
              {"repetitions", report.repetitions},
              {"pattern", access_pattern_name(report.pattern)},
              {"timer_overhead_ns", report.timer_overhead_ns},
              {"disclaimer", report.disclaimer},
              {"formats", json::array()}};
  for (const FormatBench& fb : report.per_format)
    doc["formats"].push_back({{"format", tensor_format_name(fb.format)},
                              {"files", fb.files},
                              {"total_bytes", fb.total_bytes},
                              {"bytes_read", fb.bytes_read},
                              {"cold_load_ms", fb.cold_load_ms},
                              {"warm_load_ms", fb.warm_load_ms},
                              {"p50_ms", fb.p50_ms},
                              {"p95_ms", fb.p95_ms}});
  return doc.dump(2);
}

BenchReport bench_report_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    BenchReport report;
    report.environment = doc.at("environment").get<std::string>();
    report.repetitions = doc.at("repetitions").get<int>();
    if (!parse_access_pattern(doc.at("pattern").get<std::string>(),
                              report.pattern))
      fail(Errc::parse_error, "unknown access pattern in report");
    report.timer_overhead_ns = doc.at("timer_overhead_ns").get<double>();
    report.disclaimer = doc.at("disclaimer").get<std::string>();
    for (const json& f : doc.at("formats")) {
      FormatBench fb;
      if (!parse_tensor_format(f.at("format").get<std::string>(), fb.format))
        fail(Errc::parse_error, "unknown format in report");
      fb.files = f.at("files").get<int>();
      fb.total_bytes = f.at("total_bytes").get<std::uint64_t>();
      fb.bytes_read = f.at("bytes_read").get<std::uint64_t>();
      fb.cold_load_ms = f.at("cold_load_ms").get<double>();
      fb.warm_load_ms = f.at("warm_load_ms").get<double>();
      fb.p50_ms = f.at("p50_ms").get<double>();
      fb.p95_ms = f.at("p95_ms").get<double>();
      report.per_format.push_back(fb);
    }
    return report;
  } catch (const json::exception& e) {
    fail(Errc::parse_error, std::string("bad bench report: ") + e.what());
  }
}

std::string bench_report_table(const BenchReport& report) {
  std::ostringstream ss;
  ss << "environment: " << report.environment << "\n"
     << "pattern: " << access_pattern_name(report.pattern)
     << "  repetitions: " << report.repetitions << "  timer overhead: "
     << std::fixed << std::setprecision(1) << report.timer_overhead_ns
     << " ns\n\n";
  ss << "format    files   total MiB   cold ms     warm ms     p50 ms     p95 ms\n";
  for (const FormatBench& fb : report.per_format) {
    ss << std::left << std::setw(10) << tensor_format_name(fb.format)
       << std::right << std::setw(5) << fb.files << std::setw(12)
       << std::fixed << std::setprecision(1)
       << static_cast<double>(fb.total_bytes) / (1024.0 * 1024.0)
       << std::setw(10) << std::setprecision(3) << fb.cold_load_ms
       << std::setw(12) << fb.warm_load_ms << std::setw(11) << fb.p50_ms
       << std::setw(11) << fb.p95_ms << "\n";
  }
  ss << "\n" << report.disclaimer << "\n";
  return ss.str();
}

}  // namespace tubeforge

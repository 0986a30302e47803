#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tubeforge/tensor_io.hpp"

namespace tubeforge {

// One logical tube stored three times, once per container format, with
// identical payload bytes. corpus.json in the output directory indexes the
// files.
struct BenchCorpus {
  Shape shape;
  std::uint64_t seed = 0;
  int count = 0;
  struct File {
    TensorFormat format;
    std::string path;  // relative to the corpus directory
    std::uint64_t checksum;
  };
  std::vector<File> files;  // count files per format
};

// Deterministic: the payload of tube i depends only on (seed, i), so the same
// seed always reproduces a bit-identical corpus.
BenchCorpus generate_corpus(int count, const Shape& shape, std::uint64_t seed,
                            const std::filesystem::path& out_dir,
                            int chunk_frames = 16);

BenchCorpus load_corpus(const std::filesystem::path& dir);

enum class AccessPattern { full_read, random_frame };

const char* access_pattern_name(AccessPattern pattern);
bool parse_access_pattern(const std::string& text, AccessPattern& out);

struct FormatBench {
  TensorFormat format = TensorFormat::npy;
  int files = 0;
  std::uint64_t total_bytes = 0;  // container file sizes on disk
  std::uint64_t bytes_read = 0;   // bytes delivered per repetition
  double cold_load_ms = 0.0;      // first repetition
  double warm_load_ms = 0.0;      // median of the remaining repetitions
  double p50_ms = 0.0;            // per-file, over warm repetitions
  double p95_ms = 0.0;
};

struct BenchReport {
  std::string environment;
  int repetitions = 0;
  AccessPattern pattern = AccessPattern::full_read;
  double timer_overhead_ns = 0.0;
  std::string disclaimer;
  std::vector<FormatBench> per_format;
};

// Strictly single-threaded and sequential per format. Full-read loads fold
// every payload byte into a checksum so lazily-mapped pages are really
// touched; random-frame reads one deterministic frame per file (one chunk
// for the chunked format). repetitions must be >= 3.
BenchReport run_bench(const std::filesystem::path& corpus_dir, int repetitions,
                      AccessPattern pattern);

std::string bench_report_json(const BenchReport& report);
BenchReport bench_report_from_json(const std::string& text);
std::string bench_report_table(const BenchReport& report);

// Deterministic payload generator shared by corpus generation and tests.
std::vector<std::uint8_t> corpus_payload(std::uint64_t seed, int index,
                                         std::int64_t byte_count);

}  // namespace tubeforge

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace tubeforge {

using Shape = std::vector<std::int64_t>;

// Product of dimensions; every dimension must be >= 1 (scalar and
// zero-length tensors are not supported by the containers).
std::int64_t shape_product(const Shape& shape);
std::string shape_to_string(const Shape& shape);

enum class TensorFormat { npy, flatbin, chunked };

const char* tensor_format_name(TensorFormat format);
bool parse_tensor_format(const std::string& text, TensorFormat& out);
// ".npy", ".bin", ".chk"
const char* tensor_format_extension(TensorFormat format);

struct TensorContainer {
  TensorFormat format = TensorFormat::npy;
  Shape shape;
  std::filesystem::path path;
  std::uint64_t checksum = 0;  // FNV-1a64 of the payload bytes
};

struct TensorData {
  Shape shape;
  std::vector<std::uint8_t> data;
};

// Tallies bytes actually requested from the container file. Pass to the read
// functions to audit access patterns (e.g. single-chunk random access).
struct IoStats {
  std::uint64_t bytes_read = 0;
};

// --- NPY ---------------------------------------------------------------
// Version 1.0 files, dtype |u1, C order. The pre-payload block (magic,
// version, header length, ASCII dict, padding, newline) is always a multiple
// of 64 bytes, byte-identical to the numpy reference writer.
TensorContainer write_npy(std::span<const std::uint8_t> data,
                          const Shape& shape,
                          const std::filesystem::path& path);
TensorData read_npy(const std::filesystem::path& path,
                    IoStats* stats = nullptr);
// Reads only the frame `frame_index` along the leading dimension.
std::vector<std::uint8_t> read_npy_frame(const std::filesystem::path& path,
                                         std::int64_t frame_index,
                                         IoStats* stats = nullptr);

// --- FLATBIN -----------------------------------------------------------
// Headerless payload suited to memory mapping; shape, dtype and checksum
// live in a JSON sidecar at path + ".json".
TensorContainer write_flatbin(std::span<const std::uint8_t> data,
                              const Shape& shape,
                              const std::filesystem::path& path);
TensorData read_flatbin(const std::filesystem::path& path,
                        IoStats* stats = nullptr);
std::vector<std::uint8_t> read_flatbin_frame(const std::filesystem::path& path,
                                             std::int64_t frame_index,
                                             IoStats* stats = nullptr);
// Maps the file and folds every payload byte into a checksum, forcing all
// pages in. Returns the FNV-1a64 of the payload.
std::uint64_t sum_flatbin_mmap(const std::filesystem::path& path,
                               IoStats* stats = nullptr);

// --- CHUNKED -----------------------------------------------------------
// Fixed 16-byte magic/version header, dimensions, then a chunk index of
// absolute (offset, length) pairs followed by frame-aligned chunks. Supports
// reassembly of the whole tensor and single-chunk random access. The exact
// byte layout is documented in docs/formats.md.
TensorContainer write_chunked(std::span<const std::uint8_t> data,
                              const Shape& shape,
                              const std::filesystem::path& path,
                              int chunk_frames);

struct ChunkedIndex {
  Shape shape;
  int chunk_frames = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> chunks;
  std::uint64_t index_bytes = 0;  // header + dims + index size
};

ChunkedIndex read_chunked_index(const std::filesystem::path& path,
                                IoStats* stats = nullptr);
TensorData read_chunked(const std::filesystem::path& path,
                        IoStats* stats = nullptr);
// Reads exactly one chunk's payload (plus the index).
std::vector<std::uint8_t> read_chunked_chunk(const std::filesystem::path& path,
                                             std::size_t chunk_index,
                                             IoStats* stats = nullptr);
// Same, with an already-parsed index; touches only the chunk's bytes.
std::vector<std::uint8_t> read_chunked_chunk(const std::filesystem::path& path,
                                             const ChunkedIndex& index,
                                             std::size_t chunk_index,
                                             IoStats* stats = nullptr);
std::size_t chunk_of_frame(const ChunkedIndex& index,
                           std::int64_t frame_index);

// Dispatch by format.
TensorContainer write_tensor(TensorFormat format,
                             std::span<const std::uint8_t> data,
                             const Shape& shape,
                             const std::filesystem::path& path,
                             int chunk_frames = 16);
TensorData read_tensor(TensorFormat format, const std::filesystem::path& path,
                       IoStats* stats = nullptr);

}  // namespace tubeforge

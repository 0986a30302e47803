#include "tubeforge/tensor_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>

#include <fcntl.h>
#include <sys/mman.h>
#include <sys/stat.h>
#include <unistd.h>

#include <json.hpp>

#include "tubeforge/checksum.hpp"
#include "tubeforge/error.hpp"

namespace tubeforge {

namespace fs = std::filesystem;
using nlohmann::json;

std::int64_t shape_product(const Shape& shape) {
  if (shape.empty())
    fail(Errc::shape_mismatch, "scalar (rank-0) tensors are not supported");
  std::int64_t product = 1;
  for (std::int64_t d : shape) {
    if (d < 1)
      fail(Errc::shape_mismatch,
           "dimensions must be >= 1, got " + shape_to_string(shape));
    product *= d;
  }
  return product;
}

std::string shape_to_string(const Shape& shape) {
  std::ostringstream ss;
  ss << "(";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) ss << ", ";
    ss << shape[i];
  }
  ss << ")";
  return ss.str();
}

const char* tensor_format_name(TensorFormat format) {
  switch (format) {
    case TensorFormat::npy: return "npy";
    case TensorFormat::flatbin: return "flatbin";
    case TensorFormat::chunked: return "chunked";
  }
  return "?";
}

bool parse_tensor_format(const std::string& text, TensorFormat& out) {
  if (text == "npy") {
    out = TensorFormat::npy;
  } else if (text == "flatbin") {
    out = TensorFormat::flatbin;
  } else if (text == "chunked") {
    out = TensorFormat::chunked;
  } else {
    return false;
  }
  return true;
}

const char* tensor_format_extension(TensorFormat format) {
  switch (format) {
    case TensorFormat::npy: return ".npy";
    case TensorFormat::flatbin: return ".bin";
    case TensorFormat::chunked: return ".chk";
  }
  return "";
}

namespace {

constexpr char kNpyMagic[6] = {'\x93', 'N', 'U', 'M', 'P', 'Y'};
constexpr std::size_t kNpyAlign = 64;

void counted_read(std::ifstream& in, void* dst, std::size_t n, IoStats* stats,
                  Errc short_read_errc, const std::string& what) {
  in.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
  const auto got = static_cast<std::size_t>(in.gcount());
  if (stats) stats->bytes_read += got;
  if (got != n) fail(short_read_errc, what);
}

std::ofstream open_for_write(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::io_failure, "cannot create " + path.string());
  return out;
}

void finish_write(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) fail(Errc::io_failure, "write failed for " + path.string());
}

std::string npy_shape_tuple(const Shape& shape) {
  std::ostringstream ss;
  ss << "(";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) ss << ", ";
    ss << shape[i];
  }
  if (shape.size() == 1) ss << ",";
  ss << ")";
  return ss.str();
}

// The full pre-payload block: magic, version 1.0, little-endian header
// length, the dict padded with spaces, and a closing newline, sized to the
// smallest multiple of 64 that fits.
std::string npy_prelude(const Shape& shape) {
  const std::string dict = "{'descr': '|u1', 'fortran_order': False, 'shape': " +
                           npy_shape_tuple(shape) + ", }";
  const std::size_t unpadded = 6 + 2 + 2 + dict.size() + 1;
  const std::size_t total = (unpadded + kNpyAlign - 1) / kNpyAlign * kNpyAlign;
  const std::size_t header_len = total - 10;
  if (header_len > 65535)
    fail(Errc::shape_mismatch, "header does not fit a version 1.0 file");

  std::string out;
  out.reserve(total);
  out.append(kNpyMagic, sizeof kNpyMagic);
  out.push_back('\x01');
  out.push_back('\x00');
  out.push_back(static_cast<char>(header_len & 0xff));
  out.push_back(static_cast<char>((header_len >> 8) & 0xff));
  out += dict;
  out.append(total - unpadded, ' ');
  out.push_back('\n');
  return out;
}

// Minimal parser for the header dict our reader supports. Whitespace and key
// order are flexible; values are restricted to what u1 tensors need.
struct NpyHeader {
  std::string descr;
  bool fortran_order = false;
  Shape shape;
};

std::string::size_type find_key(const std::string& header,
                                const std::string& key) {
  const auto pos = header.find("'" + key + "'");
  if (pos == std::string::npos)
    fail(Errc::header_parse_error, "header is missing key '" + key + "'");
  auto colon = header.find(':', pos);
  if (colon == std::string::npos)
    fail(Errc::header_parse_error, "malformed header near '" + key + "'");
  ++colon;
  while (colon < header.size() && std::isspace(header[colon])) ++colon;
  return colon;
}

NpyHeader parse_npy_header(const std::string& header) {
  NpyHeader out;

  auto p = find_key(header, "descr");
  if (p >= header.size() || header[p] != '\'')
    fail(Errc::header_parse_error, "descr is not a quoted string");
  const auto q = header.find('\'', p + 1);
  if (q == std::string::npos)
    fail(Errc::header_parse_error, "unterminated descr string");
  out.descr = header.substr(p + 1, q - p - 1);

  p = find_key(header, "fortran_order");
  if (header.compare(p, 4, "True") == 0) {
    out.fortran_order = true;
  } else if (header.compare(p, 5, "False") == 0) {
    out.fortran_order = false;
  } else {
    fail(Errc::header_parse_error, "fortran_order is not a boolean");
  }

  p = find_key(header, "shape");
  if (p >= header.size() || header[p] != '(')
    fail(Errc::header_parse_error, "shape is not a tuple");
  const auto close = header.find(')', p);
  if (close == std::string::npos)
    fail(Errc::header_parse_error, "unterminated shape tuple");
  std::string inner = header.substr(p + 1, close - p - 1);
  std::istringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;  // trailing comma of 1-tuples
    const auto e = item.find_last_not_of(" \t");
    try {
      std::size_t used = 0;
      const std::int64_t dim = std::stoll(item.substr(b, e - b + 1), &used);
      if (used != e - b + 1 || dim < 0) throw std::invalid_argument(item);
      out.shape.push_back(dim);
    } catch (const std::exception&) {
      fail(Errc::header_parse_error, "bad shape dimension '" + item + "'");
    }
  }
  if (out.shape.empty())
    fail(Errc::header_parse_error, "scalar (rank-0) files are not supported");
  return out;
}

NpyHeader read_npy_prelude(std::ifstream& in, const fs::path& path,
                           IoStats* stats) {
  char magic[8];
  in.read(magic, sizeof magic);
  const auto got = static_cast<std::size_t>(in.gcount());
  if (stats) stats->bytes_read += got;
  if (got != sizeof magic || std::memcmp(magic, kNpyMagic, 6) != 0)
    fail(Errc::bad_magic, path.string() + " is not an NPY file");
  if (magic[6] != 1 || magic[7] != 0)
    fail(Errc::header_parse_error,
         path.string() + ": only NPY version 1.0 is supported");

  std::uint8_t len_le[2];
  counted_read(in, len_le, 2, stats, Errc::header_parse_error,
               path.string() + ": truncated header length");
  const std::size_t header_len = len_le[0] | (len_le[1] << 8);

  std::string header(header_len, '\0');
  counted_read(in, header.data(), header_len, stats, Errc::header_parse_error,
               path.string() + ": truncated header");
  if (header.empty() || header.back() != '\n')
    fail(Errc::header_parse_error,
         path.string() + ": header does not end with a newline");

  NpyHeader parsed = parse_npy_header(header);
  if (parsed.descr != "|u1" && parsed.descr != "<u1")
    fail(Errc::unsupported_descr,
         path.string() + ": unsupported descr '" + parsed.descr + "'");
  if (parsed.fortran_order)
    fail(Errc::header_parse_error,
         path.string() + ": fortran_order files are not supported");
  return parsed;
}

}  // namespace

TensorContainer write_npy(std::span<const std::uint8_t> data,
                          const Shape& shape, const fs::path& path) {
  const std::int64_t expect = shape_product(shape);
  if (static_cast<std::int64_t>(data.size()) != expect)
    fail(Errc::shape_mismatch,
         "payload of " + std::to_string(data.size()) + " bytes does not match " +
             shape_to_string(shape));

  const std::string prelude = npy_prelude(shape);
  auto out = open_for_write(path);
  out.write(prelude.data(), static_cast<std::streamsize>(prelude.size()));
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  finish_write(out, path);
  return {TensorFormat::npy, shape, path, fnv1a64(data)};
}

TensorData read_npy(const fs::path& path, IoStats* stats) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_failure, "cannot open " + path.string());
  const NpyHeader header = read_npy_prelude(in, path, stats);

  TensorData out;
  out.shape = header.shape;
  const std::int64_t count = shape_product(header.shape);
  out.data.resize(static_cast<std::size_t>(count));
  counted_read(in, out.data.data(), out.data.size(), stats,
               Errc::payload_truncated,
               path.string() + ": payload shorter than " +
                   shape_to_string(header.shape));
  return out;
}

std::vector<std::uint8_t> read_npy_frame(const fs::path& path,
                                         std::int64_t frame_index,
                                         IoStats* stats) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_failure, "cannot open " + path.string());
  const NpyHeader header = read_npy_prelude(in, path, stats);
  if (frame_index < 0 || frame_index >= header.shape.front())
    fail(Errc::config_error, "frame index out of range");

  std::int64_t frame_bytes = 1;
  for (std::size_t i = 1; i < header.shape.size(); ++i)
    frame_bytes *= header.shape[i];

  in.seekg(frame_index * frame_bytes, std::ios::cur);
  std::vector<std::uint8_t> frame(static_cast<std::size_t>(frame_bytes));
  counted_read(in, frame.data(), frame.size(), stats, Errc::payload_truncated,
               path.string() + ": payload ends before the requested frame");
  return frame;
}

// --- FLATBIN ---------------------------------------------------------------

namespace {

fs::path sidecar_path(const fs::path& path) {
  return fs::path(path.string() + ".json");
}

}  // namespace

TensorContainer write_flatbin(std::span<const std::uint8_t> data,
                              const Shape& shape, const fs::path& path) {
  const std::int64_t expect = shape_product(shape);
  if (static_cast<std::int64_t>(data.size()) != expect)
    fail(Errc::shape_mismatch,
         "payload of " + std::to_string(data.size()) + " bytes does not match " +
             shape_to_string(shape));

  auto out = open_for_write(path);
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  finish_write(out, path);

  const std::uint64_t checksum = fnv1a64(data);
  json sidecar = {{"shape", shape}, {"dtype", "u8"}, {"checksum", checksum}};
  auto side = open_for_write(sidecar_path(path));
  side << sidecar.dump(2) << "\n";
  finish_write(side, sidecar_path(path));
  return {TensorFormat::flatbin, shape, path, checksum};
}

namespace {

struct FlatbinSidecar {
  Shape shape;
  std::uint64_t checksum = 0;
};

FlatbinSidecar read_sidecar(const fs::path& path) {
  const fs::path side = sidecar_path(path);
  std::ifstream in(side);
  if (!in)
    fail(Errc::sidecar_missing, "missing shape sidecar " + side.string());
  json doc;
  try {
    in >> doc;
    FlatbinSidecar out;
    out.shape = doc.at("shape").get<Shape>();
    out.checksum = doc.at("checksum").get<std::uint64_t>();
    if (doc.at("dtype").get<std::string>() != "u8")
      fail(Errc::unsupported_descr, side.string() + ": only u8 supported");
    return out;
  } catch (const json::exception& e) {
    fail(Errc::parse_error, side.string() + ": " + e.what());
  }
}

}  // namespace

TensorData read_flatbin(const fs::path& path, IoStats* stats) {
  const FlatbinSidecar side = read_sidecar(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_failure, "cannot open " + path.string());

  TensorData out;
  out.shape = side.shape;
  out.data.resize(static_cast<std::size_t>(shape_product(side.shape)));
  counted_read(in, out.data.data(), out.data.size(), stats,
               Errc::payload_truncated,
               path.string() + ": payload shorter than the sidecar shape");
  if (fnv1a64(out.data) != side.checksum)
    fail(Errc::io_failure, path.string() + ": payload checksum mismatch");
  return out;
}

std::vector<std::uint8_t> read_flatbin_frame(const fs::path& path,
                                             std::int64_t frame_index,
                                             IoStats* stats) {
  const FlatbinSidecar side = read_sidecar(path);
  if (frame_index < 0 || frame_index >= side.shape.front())
    fail(Errc::config_error, "frame index out of range");
  std::int64_t frame_bytes = 1;
  for (std::size_t i = 1; i < side.shape.size(); ++i)
    frame_bytes *= side.shape[i];

  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_failure, "cannot open " + path.string());
  in.seekg(frame_index * frame_bytes);
  std::vector<std::uint8_t> frame(static_cast<std::size_t>(frame_bytes));
  counted_read(in, frame.data(), frame.size(), stats, Errc::payload_truncated,
               path.string() + ": payload ends before the requested frame");
  return frame;
}

std::uint64_t sum_flatbin_mmap(const fs::path& path, IoStats* stats) {
  const int fd = ::open(path.c_str(), O_RDONLY);
  if (fd < 0) fail(Errc::io_failure, "cannot open " + path.string());
  struct ::stat st{};
  if (::fstat(fd, &st) != 0 || st.st_size == 0) {
    ::close(fd);
    fail(Errc::io_failure, "cannot stat " + path.string());
  }
  const auto size = static_cast<std::size_t>(st.st_size);
  void* map = ::mmap(nullptr, size, PROT_READ, MAP_PRIVATE, fd, 0);
  ::close(fd);
  if (map == MAP_FAILED) fail(Errc::io_failure, "mmap failed for " + path.string());
  const std::uint64_t sum = fnv1a64(map, size);
  ::munmap(map, size);
  if (stats) stats->bytes_read += size;
  return sum;
}

// --- CHUNKED -----------------------------------------------------------------

namespace {

constexpr char kChunkMagic[8] = {'T', 'U', 'B', 'E', 'C', 'H', 'N', 'K'};
constexpr std::uint32_t kChunkVersion = 1;
constexpr std::uint32_t kMaxRank = 8;

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint64_t get_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

}  // namespace

TensorContainer write_chunked(std::span<const std::uint8_t> data,
                              const Shape& shape, const fs::path& path,
                              int chunk_frames) {
  const std::int64_t expect = shape_product(shape);
  if (static_cast<std::int64_t>(data.size()) != expect)
    fail(Errc::shape_mismatch,
         "payload of " + std::to_string(data.size()) + " bytes does not match " +
             shape_to_string(shape));
  if (chunk_frames < 1) fail(Errc::config_error, "chunk_frames must be >= 1");
  if (shape.size() > kMaxRank)
    fail(Errc::shape_mismatch, "rank above " + std::to_string(kMaxRank));

  const std::int64_t frames = shape.front();
  std::int64_t frame_bytes = 1;
  for (std::size_t i = 1; i < shape.size(); ++i) frame_bytes *= shape[i];
  const std::uint64_t chunk_count =
      static_cast<std::uint64_t>((frames + chunk_frames - 1) / chunk_frames);

  std::string head;
  head.append(kChunkMagic, sizeof kChunkMagic);
  put_u32(head, kChunkVersion);
  put_u32(head, static_cast<std::uint32_t>(shape.size()));
  for (std::int64_t d : shape) put_u64(head, static_cast<std::uint64_t>(d));
  put_u32(head, static_cast<std::uint32_t>(chunk_frames));
  put_u32(head, static_cast<std::uint32_t>(chunk_count));

  const std::uint64_t index_bytes = head.size() + 16 * chunk_count;
  std::uint64_t offset = index_bytes;
  for (std::uint64_t c = 0; c < chunk_count; ++c) {
    const std::int64_t first = static_cast<std::int64_t>(c) * chunk_frames;
    const std::int64_t in_chunk = std::min<std::int64_t>(chunk_frames, frames - first);
    const std::uint64_t length = static_cast<std::uint64_t>(in_chunk * frame_bytes);
    put_u64(head, offset);
    put_u64(head, length);
    offset += length;
  }

  auto out = open_for_write(path);
  out.write(head.data(), static_cast<std::streamsize>(head.size()));
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  finish_write(out, path);
  return {TensorFormat::chunked, shape, path, fnv1a64(data)};
}

ChunkedIndex read_chunked_index(const fs::path& path, IoStats* stats) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_failure, "cannot open " + path.string());
  std::error_code ec;
  const std::uint64_t file_size = fs::file_size(path, ec);
  if (ec) fail(Errc::io_failure, "cannot stat " + path.string());

  std::uint8_t fixed[16];
  counted_read(in, fixed, sizeof fixed, stats, Errc::bad_magic,
               path.string() + ": truncated header");
  if (std::memcmp(fixed, kChunkMagic, 8) != 0)
    fail(Errc::bad_magic, path.string() + " is not a chunked container");
  if (get_u32(fixed + 8) != kChunkVersion)
    fail(Errc::header_parse_error, path.string() + ": unsupported version");
  const std::uint32_t ndim = get_u32(fixed + 12);
  if (ndim == 0 || ndim > kMaxRank)
    fail(Errc::corrupt_index, path.string() + ": bad rank");

  std::vector<std::uint8_t> buf(8 * ndim + 8);
  counted_read(in, buf.data(), buf.size(), stats, Errc::corrupt_index,
               path.string() + ": truncated dimensions");
  ChunkedIndex index;
  for (std::uint32_t i = 0; i < ndim; ++i) {
    const std::uint64_t d = get_u64(buf.data() + 8 * i);
    if (d == 0 || d > (1ULL << 48))
      fail(Errc::corrupt_index, path.string() + ": bad dimension");
    index.shape.push_back(static_cast<std::int64_t>(d));
  }
  index.chunk_frames = static_cast<int>(get_u32(buf.data() + 8 * ndim));
  const std::uint32_t chunk_count = get_u32(buf.data() + 8 * ndim + 4);
  if (index.chunk_frames < 1)
    fail(Errc::corrupt_index, path.string() + ": bad chunk_frames");

  const std::int64_t frames = index.shape.front();
  const auto expect_chunks = static_cast<std::uint32_t>(
      (frames + index.chunk_frames - 1) / index.chunk_frames);
  if (chunk_count != expect_chunks)
    fail(Errc::corrupt_index, path.string() + ": chunk count does not match shape");

  std::vector<std::uint8_t> raw(16 * static_cast<std::size_t>(chunk_count));
  counted_read(in, raw.data(), raw.size(), stats, Errc::corrupt_index,
               path.string() + ": truncated index");
  index.index_bytes = 16 + buf.size() + raw.size();

  std::int64_t frame_bytes = 1;
  for (std::size_t i = 1; i < index.shape.size(); ++i)
    frame_bytes *= index.shape[i];

  std::uint64_t cursor = index.index_bytes;
  for (std::uint32_t c = 0; c < chunk_count; ++c) {
    const std::uint64_t off = get_u64(raw.data() + 16 * c);
    const std::uint64_t len = get_u64(raw.data() + 16 * c + 8);
    const std::int64_t first = static_cast<std::int64_t>(c) * index.chunk_frames;
    const std::int64_t in_chunk =
        std::min<std::int64_t>(index.chunk_frames, frames - first);
    if (len != static_cast<std::uint64_t>(in_chunk * frame_bytes))
      fail(Errc::corrupt_index, path.string() + ": chunk " + std::to_string(c) +
                                    " is not frame-aligned");
    if (off < cursor)
      fail(Errc::corrupt_index, path.string() + ": chunk " + std::to_string(c) +
                                    " overlaps the previous one");
    if (off + len > file_size)
      fail(Errc::corrupt_index, path.string() + ": chunk " + std::to_string(c) +
                                    " reaches past the end of the file");
    cursor = off + len;
    index.chunks.emplace_back(off, len);
  }
  return index;
}

TensorData read_chunked(const fs::path& path, IoStats* stats) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_failure, "cannot open " + path.string());
  const ChunkedIndex index = read_chunked_index(path, stats);

  TensorData out;
  out.shape = index.shape;
  out.data.resize(static_cast<std::size_t>(shape_product(index.shape)));
  std::size_t cursor = 0;
  for (const auto& [offset, length] : index.chunks) {
    in.seekg(static_cast<std::streamoff>(offset));
    counted_read(in, out.data.data() + cursor, length, stats,
                 Errc::payload_truncated,
                 path.string() + ": truncated chunk payload");
    cursor += length;
  }
  return out;
}

std::vector<std::uint8_t> read_chunked_chunk(const fs::path& path,
                                             std::size_t chunk_index,
                                             IoStats* stats) {
  const ChunkedIndex index = read_chunked_index(path, stats);
  return read_chunked_chunk(path, index, chunk_index, stats);
}

std::vector<std::uint8_t> read_chunked_chunk(const fs::path& path,
                                             const ChunkedIndex& index,
                                             std::size_t chunk_index,
                                             IoStats* stats) {
  if (chunk_index >= index.chunks.size())
    fail(Errc::config_error, "chunk index out of range");
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_failure, "cannot open " + path.string());
  const auto [offset, length] = index.chunks[chunk_index];
  in.seekg(static_cast<std::streamoff>(offset));
  std::vector<std::uint8_t> chunk(static_cast<std::size_t>(length));
  counted_read(in, chunk.data(), chunk.size(), stats, Errc::payload_truncated,
               path.string() + ": truncated chunk payload");
  return chunk;
}

std::size_t chunk_of_frame(const ChunkedIndex& index, std::int64_t frame_index) {
  if (frame_index < 0 || frame_index >= index.shape.front())
    fail(Errc::config_error, "frame index out of range");
  return static_cast<std::size_t>(frame_index / index.chunk_frames);
}

// --- dispatch ----------------------------------------------------------------

TensorContainer write_tensor(TensorFormat format,
                             std::span<const std::uint8_t> data,
                             const Shape& shape, const fs::path& path,
                             int chunk_frames) {
  switch (format) {
    case TensorFormat::npy: return write_npy(data, shape, path);
    case TensorFormat::flatbin: return write_flatbin(data, shape, path);
    case TensorFormat::chunked:
      return write_chunked(data, shape, path, chunk_frames);
  }
  fail(Errc::config_error, "unknown tensor format");
}

TensorData read_tensor(TensorFormat format, const fs::path& path,
                       IoStats* stats) {
  switch (format) {
    case TensorFormat::npy: return read_npy(path, stats);
    case TensorFormat::flatbin: return read_flatbin(path, stats);
    case TensorFormat::chunked: return read_chunked(path, stats);
  }
  fail(Errc::config_error, "unknown tensor format");
}

}  // namespace tubeforge

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tubeforge/label.hpp"
#include "tubeforge/tensor_io.hpp"
#include "tubeforge/tube.hpp"

namespace tubeforge {

struct ManifestEntry {
  std::string path;  // relative to the manifest's directory
  TensorFormat format = TensorFormat::npy;
  Shape shape;
  Label label = Label::NonFight;
  TubeProvenance provenance;
  std::uint64_t checksum = 0;
};

struct LabelCounts {
  std::int64_t fight = 0;
  std::int64_t nonfight = 0;
  std::int64_t total() const { return fight + nonfight; }
};

struct DatasetManifest {
  std::string split;  // train | test | val
  std::vector<ManifestEntry> entries;
  LabelCounts counts;  // always equals the tally over entries
};

LabelCounts tally_entries(const std::vector<ManifestEntry>& entries);

// Atomic (write-to-temp-then-rename) JSON manifest. Counts are recomputed
// from the entries on write and verified against the stored values on read;
// a mismatch means the file was edited by hand.
void write_manifest(const std::vector<ManifestEntry>& entries,
                    const std::string& split,
                    const std::filesystem::path& path);
DatasetManifest read_manifest(const std::filesystem::path& path);

}  // namespace tubeforge

#include "tubeforge/manifest.hpp"

#include <fstream>

#include <json.hpp>

#include "tubeforge/error.hpp"

namespace tubeforge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool valid_split(const std::string& split) {
  return split == "train" || split == "test" || split == "val";
}

json entry_to_json(const ManifestEntry& e) {
  return {{"path", e.path},
          {"format", tensor_format_name(e.format)},
          {"shape", e.shape},
          {"label", label_name(e.label)},
          {"checksum", e.checksum},
          {"provenance",
           {{"source_id", e.provenance.source_id},
            {"volume_index", e.provenance.volume_index},
            {"cluster_id", e.provenance.cluster_id},
            {"best_box",
             {e.provenance.best_box.x1, e.provenance.best_box.y1,
              e.provenance.best_box.x2, e.provenance.best_box.y2}},
            {"frame_width", e.provenance.frame_width},
            {"frame_height", e.provenance.frame_height}}}};
}

ManifestEntry entry_from_json(const json& j) {
  ManifestEntry e;
  e.path = j.at("path").get<std::string>();
  if (!parse_tensor_format(j.at("format").get<std::string>(), e.format))
    fail(Errc::parse_error, "unknown tensor format in manifest entry");
  e.shape = j.at("shape").get<Shape>();
  if (!parse_label(j.at("label").get<std::string>(), e.label))
    fail(Errc::parse_error, "unknown label in manifest entry");
  e.checksum = j.at("checksum").get<std::uint64_t>();
  const json& p = j.at("provenance");
  e.provenance.source_id = p.at("source_id").get<std::string>();
  e.provenance.volume_index = p.at("volume_index").get<int>();
  e.provenance.cluster_id = p.at("cluster_id").get<int>();
  const json& bb = p.at("best_box");
  e.provenance.best_box = {bb.at(0).get<int>(), bb.at(1).get<int>(),
                           bb.at(2).get<int>(), bb.at(3).get<int>()};
  e.provenance.frame_width = p.at("frame_width").get<int>();
  e.provenance.frame_height = p.at("frame_height").get<int>();
  return e;
}

}  // namespace

LabelCounts tally_entries(const std::vector<ManifestEntry>& entries) {
  LabelCounts counts;
  for (const ManifestEntry& e : entries)
    (e.label == Label::Fight ? counts.fight : counts.nonfight) += 1;
  return counts;
}

void write_manifest(const std::vector<ManifestEntry>& entries,
                    const std::string& split, const fs::path& path) {
  if (!valid_split(split))
    fail(Errc::config_error, "split must be train, test or val");

  const LabelCounts counts = tally_entries(entries);
  json doc = {{"split", split},
              {"counts", {{"fight", counts.fight}, {"nonfight", counts.nonfight}}},
              {"entries", json::array()}};
  for (const ManifestEntry& e : entries) doc["entries"].push_back(entry_to_json(e));

  const fs::path tmp = fs::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) fail(Errc::io_failure, "cannot create " + tmp.string());
    out << doc.dump(2) << "\n";
    out.flush();
    if (!out) fail(Errc::io_failure, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) fail(Errc::io_failure, "cannot rename " + tmp.string() + ": " + ec.message());
}

DatasetManifest read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_failure, "cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    fail(Errc::parse_error, path.string() + ": " + e.what());
  }

  DatasetManifest manifest;
  try {
    manifest.split = doc.at("split").get<std::string>();
    if (!valid_split(manifest.split))
      fail(Errc::parse_error, path.string() + ": bad split value");
    for (const json& j : doc.at("entries"))
      manifest.entries.push_back(entry_from_json(j));
    manifest.counts.fight = doc.at("counts").at("fight").get<std::int64_t>();
    manifest.counts.nonfight = doc.at("counts").at("nonfight").get<std::int64_t>();
  } catch (const json::exception& e) {
    fail(Errc::parse_error, path.string() + ": " + e.what());
  }

  const LabelCounts fresh = tally_entries(manifest.entries);
  if (fresh.fight != manifest.counts.fight ||
      fresh.nonfight != manifest.counts.nonfight)
    fail(Errc::count_mismatch,
         path.string() + ": stored counts (" +
             std::to_string(manifest.counts.fight) + " fight, " +
             std::to_string(manifest.counts.nonfight) +
             " nonfight) disagree with the entries (" +
             std::to_string(fresh.fight) + " fight, " +
             std::to_string(fresh.nonfight) + " nonfight)");
  return manifest;
}

}  // namespace tubeforge

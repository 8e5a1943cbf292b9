#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "common/time.hpp"
#include "corpus/event.hpp"

namespace tscdn {

// One ingested message as observed in a single crawl, with its media already
// resolved to stored objects.
struct SnapshotMessage {
  std::size_t ordinal = 0;
  std::string page;
  std::string id;
  std::optional<Instant> date;
  std::string date_raw;
  std::string text;
  std::optional<std::int64_t> views;
  std::optional<std::string> forwarded_from;
  std::vector<MediaRef> media;

  friend bool operator==(const SnapshotMessage&, const SnapshotMessage&) = default;
};

// All messages of one archive (one channel at one crawl time), stored as
// <cdn>/snapshots/<archive_id>.json.
struct Snapshot {
  std::string archive_id;
  std::string channel_slug;
  std::string channel_name;
  Instant crawl_time{};
  std::vector<SnapshotMessage> messages;

  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

nlohmann::ordered_json to_json(const Snapshot& snapshot);
Snapshot snapshot_from_json(const nlohmann::json& j);

std::filesystem::path snapshot_path(const std::filesystem::path& cdn_root, const std::string& archive_id);
void save_snapshot(const std::filesystem::path& cdn_root, const Snapshot& snapshot);
Snapshot load_snapshot(const std::filesystem::path& file);
// Every snapshot under <cdn>/snapshots, ordered by file name.
std::vector<Snapshot> load_snapshots(const std::filesystem::path& cdn_root);

}  // namespace tscdn

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "common/diagnostics.hpp"
#include "common/time.hpp"
#include "ingest/links.hpp"
#include "store/digest.hpp"

namespace tscdn {

struct StoredObject {
  ContentHash hash;
  std::string extension;  // lowercase, no dot, may be empty
  std::uint64_t size_bytes = 0;
  MediaKind kind = MediaKind::other;
  Instant first_seen{};
  std::set<std::string> source_names;

  std::string filename() const { return extension.empty() ? hash.hex() : hash.hex() + "." + extension; }

  friend bool operator==(const StoredObject&, const StoredObject&) = default;
};

// (hash hex, extension): the identity of a stored object.
using ObjectKey = std::pair<std::string, std::string>;

// original relative path -> stored filename, or nullopt when the linked file
// was absent from the export.
using ArchiveDictionary = std::map<std::string, std::optional<std::string>>;
using PathDictionary = std::map<std::string, ArchiveDictionary>;

struct StoreOptions {
  DigestAlgorithm digest = DigestAlgorithm::md5;
};

// Content-addressed media store rooted at a CDN directory:
//   <root>/objects/<hex>.<ext>
//   <root>/cdn-index.json
class ContentStore {
 public:
  static constexpr int kIndexVersion = 1;

  // Opens (creating directories as needed) and loads cdn-index.json if present.
  static ContentStore open(const std::filesystem::path& root, StoreOptions options = {});

  ContentStore(ContentStore&& other) noexcept;
  ContentStore& operator=(ContentStore&&) = delete;

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path objects_dir() const { return root_ / "objects"; }
  std::filesystem::path index_path() const { return root_ / "cdn-index.json"; }
  DigestAlgorithm digest() const { return options_.digest; }

  const std::map<ObjectKey, StoredObject>& objects() const { return objects_; }
  const PathDictionary& dictionaries() const { return dictionaries_; }

  // Thread-safe. Hashes, writes the object unless an identical (hash, ext)
  // object already exists, and records the dictionary mapping.
  StoredObject ingest_file(std::string_view archive_id, std::string_view original_path,
                           std::string_view bytes, Instant seen);

  void record_missing(std::string_view archive_id, std::string_view original_path);

  const StoredObject* find(std::string_view stored_name) const;
  std::optional<std::string> read_object(std::string_view stored_name) const;

  nlohmann::ordered_json index_json() const;
  void save_index() const;

  // Replaces the in-memory catalog; used by merge after validation.
  void replace_catalog(std::map<ObjectKey, StoredObject> objects, PathDictionary dictionaries);

 private:
  ContentStore(std::filesystem::path root, StoreOptions options);
  void load_index();

  std::filesystem::path root_;
  StoreOptions options_;
  std::map<ObjectKey, StoredObject> objects_;
  PathDictionary dictionaries_;
  mutable std::mutex mutex_;
};

// Store filenames look like <hex>[.<ext>]; anything else is rejected.
bool is_stored_name(std::string_view name);
std::optional<ObjectKey> parse_stored_name(std::string_view name);

std::string_view last_path_segment(std::string_view path);

}  // namespace tscdn

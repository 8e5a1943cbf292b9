#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "common/diagnostics.hpp"
#include "corpus/event.hpp"
#include "index/posting.hpp"
#include "ingest/export.hpp"
#include "scoring/defaults.hpp"
#include "store/content_store.hpp"
#include "store/merge.hpp"

namespace tscdn {

// Files inside a CDN directory besides objects/ and cdn-index.json.
struct CdnLayout {
  std::filesystem::path root;

  std::filesystem::path snapshots() const { return root / "snapshots"; }
  std::filesystem::path rewritten(const std::string& archive_id) const { return root / "rewritten" / archive_id; }
  std::filesystem::path index() const { return root / "index.json"; }
  std::filesystem::path coalesced_index() const { return root / "index-coalesced.json"; }
  std::filesystem::path index_config() const { return root / "index-config.json"; }
};

struct IndexOptions {
  ScoringOptions scoring;
  std::optional<CoalesceConfig> coalesce;  // also write index-coalesced.json

  friend bool operator==(const IndexOptions&, const IndexOptions&) = default;
};

struct IndexReport {
  std::size_t events = 0;
  std::size_t versions = 0;
  std::size_t terms = 0;
  std::size_t entries = 0;
  std::optional<std::size_t> coalesced_entries;
  Instant built_at{};
};

// Rebuilds the corpus from the stored snapshots and writes index.json (and
// index-coalesced.json when requested). The options are recorded next to
// the index so that readers analyze queries the same way.
IndexReport build_index_files(const std::filesystem::path& cdn_root, const IndexOptions& options, Diagnostics& diag);

// Options recorded by the last build, or defaults.
IndexOptions read_index_options(const std::filesystem::path& cdn_root);

struct IngestOptions {
  std::filesystem::path export_root;
  std::filesystem::path cdn_root;
  std::string channel_slug;
  std::string channel_name;             // defaults to the slug
  std::optional<Instant> crawl_time;    // defaults to the current time
  std::optional<std::string> archive_id;  // defaults to <slug>-<compact crawl time>
  FixedOffset zone = kDefaultExportOffset;
  ExportProfile profile;
  std::string cdn_prefix = "cdn";
  StoreOptions store;
  bool rebuild_index = true;
};

struct IngestReport {
  std::string archive_id;
  std::size_t pages = 0;
  std::size_t messages = 0;
  std::size_t invalid_timestamps = 0;
  std::size_t links = 0;
  std::size_t files_ingested = 0;
  std::size_t objects_added = 0;
  std::size_t objects_deduplicated = 0;
  std::size_t missing = 0;
  std::uint64_t bytes_read = 0;
  std::uint64_t bytes_added = 0;
  std::size_t references_rewritten = 0;
};

std::string default_archive_id(const std::string& slug, Instant crawl_time);
bool is_valid_slug(std::string_view slug);

// Hashes and stores every linked file, rewrites the pages into
// rewritten/<archive_id>/, records the snapshot and rebuilds the index.
IngestReport ingest_export(const IngestOptions& options, Diagnostics& diag);

// Folds each of `others` into `master`, including their snapshots and
// rewritten pages, then rebuilds the master index.
MergeReport merge_cdns(const std::filesystem::path& master, const std::vector<std::filesystem::path>& others,
                       Diagnostics& diag);

// Corpus replayed from every snapshot in the CDN.
Corpus load_corpus(const std::filesystem::path& cdn_root, Diagnostics& diag);

struct ExportReport {
  std::size_t channels = 0;
  std::size_t events = 0;
  std::size_t versions = 0;
};
ExportReport export_json(const std::filesystem::path& cdn_root, const std::filesystem::path& out_dir, Diagnostics& diag);

// Global and per-archive before/after statistics.
nlohmann::ordered_json stats_json(const ContentStore& store);

// Object integrity plus index readability.
nlohmann::ordered_json verify_json(const std::filesystem::path& cdn_root, bool& ok);

nlohmann::ordered_json to_json(const IngestReport& r);
nlohmann::ordered_json to_json(const MergeReport& r);
nlohmann::ordered_json to_json(const IndexReport& r);
nlohmann::ordered_json to_json(const ExportReport& r);

}  // namespace tscdn

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "common/diagnostics.hpp"
#include "common/time.hpp"
#include "ingest/links.hpp"

namespace tscdn {

struct SourceMeta {
  std::string channel_name;
  std::string channel_slug;
  std::filesystem::path export_root;
  Instant crawl_time{};
};

// CSS-class conventions that locate messages inside an export page. The
// defaults follow the Telegram Desktop "Export chat history" HTML layout.
struct ExportProfile {
  std::string message_class = "message";
  std::string skip_class = "service";
  std::string id_prefix = "message";
  std::string date_class = "date";
  std::string date_attribute = "title";
  std::string text_class = "text";
  std::string forwarded_class = "forwarded";
  std::string from_name_class = "from_name";
  std::string views_class = "views";
};

struct RawMessage {
  std::size_t source_ordinal = 0;
  std::string message_id;
  std::optional<Instant> timestamp;  // empty when the date failed to parse
  std::string timestamp_raw;
  std::string text;  // NFC
  std::vector<LocalLink> media_links;
  std::optional<std::int64_t> views;
  std::optional<std::string> forwarded_from;

  friend bool operator==(const RawMessage&, const RawMessage&) = default;
};

struct ExportPage {
  std::string relative_path;  // '/'-separated, relative to the export root
  std::string bytes;
};

// Every .html/.htm file below `export_root`, ordered by relative path.
// Throws Error(io) if the directory cannot be listed; unreadable files are
// skipped with a warning.
std::vector<ExportPage> scan_export(const std::filesystem::path& export_root, Diagnostics& diag);

struct ParseOptions {
  ExportProfile profile;
  FixedOffset assumed_zone = kDefaultExportOffset;
};

std::vector<RawMessage> parse_export(std::string_view html_bytes, const SourceMeta& source,
                                     std::string_view page_path, const ParseOptions& options,
                                     Diagnostics& diag);

// `DD.MM.YYYY HH:MM[:SS]` (optionally followed by ` UTC±HH:MM`) or ISO-8601.
// Wall-clock values without a zone are read at `assumed_zone`.
std::optional<Instant> normalize_timestamp(std::string_view raw,
                                           FixedOffset assumed_zone = kDefaultExportOffset);

}  // namespace tscdn

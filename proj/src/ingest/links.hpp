#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ingest/html.hpp"

namespace tscdn {

enum class MediaKind { video, image, audio, document, css, js, sticker, icon, other };

std::string_view kind_name(MediaKind kind);
std::optional<MediaKind> parse_kind(std::string_view name);

// Lowercase extension without the dot; empty when the last segment has none.
std::string extension_of(std::string_view path);
MediaKind classify_extension(std::string_view ext);

enum class LinkAttribute { src, href, poster };

std::string_view attribute_name(LinkAttribute a);

struct LocalLink {
  LinkAttribute attribute = LinkAttribute::src;
  std::string raw_path;       // verbatim attribute value
  std::string resolved_path;  // canonical, NFC, relative to the export root
  MediaKind kind = MediaKind::other;
  bool decode_failed = false;
  std::size_t value_offset = 0;  // span of raw_path in the scanned source
  std::size_t value_length = 0;

  friend bool operator==(const LocalLink&, const LocalLink&) = default;
};

// Percent-decoding; nullopt on malformed escapes or non-UTF-8 results.
std::optional<std::string> percent_decode(std::string_view text);

// True for values that do not address a file inside the archive: URLs with
// a scheme, protocol-relative and root-relative references, bare fragments.
bool is_external_reference(std::string_view value);

// Joins `path` onto `base_dir` and removes "." and ".." segments. Returns
// nullopt if the result would leave the root.
std::optional<std::string> canonicalize_relative(std::string_view path,
                                                 std::string_view base_dir = {});

// Every src/href/poster attribute holding an archive-relative path, in
// document order, duplicates preserved.
std::vector<LocalLink> extract_links(std::string_view html_fragment,
                                     std::string_view base_dir = {});

// Same, restricted to the subtree under `scope` of an already parsed document.
std::vector<LocalLink> collect_links(const html::Document& doc, html::NodeId scope,
                                     std::string_view source, std::string_view base_dir = {});

}  // namespace tscdn

#include "ingest/links.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

#include "common/unicode.hpp"

namespace tscdn {

namespace {

constexpr std::array<std::pair<std::string_view, MediaKind>, 9> kKindNames{{
    {"video", MediaKind::video},
    {"image", MediaKind::image},
    {"audio", MediaKind::audio},
    {"document", MediaKind::document},
    {"css", MediaKind::css},
    {"js", MediaKind::js},
    {"sticker", MediaKind::sticker},
    {"icon", MediaKind::icon},
    {"other", MediaKind::other},
}};

struct ExtensionRule {
  std::string_view ext;
  MediaKind kind;
};

constexpr ExtensionRule kExtensions[] = {
    {"mp4", MediaKind::video},   {"mov", MediaKind::video},     {"avi", MediaKind::video},
    {"mkv", MediaKind::video},   {"webm", MediaKind::video},    {"m4v", MediaKind::video},
    {"3gp", MediaKind::video},   {"mpg", MediaKind::video},     {"mpeg", MediaKind::video},
    {"jpg", MediaKind::image},   {"jpeg", MediaKind::image},    {"png", MediaKind::image},
    {"gif", MediaKind::image},   {"bmp", MediaKind::image},     {"webp", MediaKind::image},
    {"svg", MediaKind::image},   {"tif", MediaKind::image},     {"tiff", MediaKind::image},
    {"mp3", MediaKind::audio},   {"ogg", MediaKind::audio},     {"oga", MediaKind::audio},
    {"opus", MediaKind::audio},  {"wav", MediaKind::audio},     {"m4a", MediaKind::audio},
    {"flac", MediaKind::audio},  {"aac", MediaKind::audio},     {"pdf", MediaKind::document},
    {"doc", MediaKind::document}, {"docx", MediaKind::document}, {"xls", MediaKind::document},
    {"xlsx", MediaKind::document}, {"ppt", MediaKind::document}, {"pptx", MediaKind::document},
    {"txt", MediaKind::document}, {"zip", MediaKind::document},  {"rar", MediaKind::document},
    {"7z", MediaKind::document},  {"epub", MediaKind::document}, {"css", MediaKind::css},
    {"js", MediaKind::js},        {"tgs", MediaKind::sticker},   {"ico", MediaKind::icon},
};

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string_view strip_query_and_fragment(std::string_view v) {
  auto cut = v.find_first_of("?#");
  return cut == std::string_view::npos ? v : v.substr(0, cut);
}

std::string_view trim(std::string_view v) {
  auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; };
  while (!v.empty() && is_ws(v.front())) v.remove_prefix(1);
  while (!v.empty() && is_ws(v.back())) v.remove_suffix(1);
  return v;
}

std::optional<LinkAttribute> link_attribute(std::string_view name) {
  if (name == "src") return LinkAttribute::src;
  if (name == "href") return LinkAttribute::href;
  if (name == "poster") return LinkAttribute::poster;
  return std::nullopt;
}

}  // namespace

std::string_view kind_name(MediaKind kind) {
  for (const auto& [name, k] : kKindNames)
    if (k == kind) return name;
  return "other";
}

std::optional<MediaKind> parse_kind(std::string_view name) {
  for (const auto& [n, k] : kKindNames)
    if (n == name) return k;
  return std::nullopt;
}

std::string extension_of(std::string_view path) {
  auto slash = path.find_last_of('/');
  std::string_view last = slash == std::string_view::npos ? path : path.substr(slash + 1);
  auto dot = last.find_last_of('.');
  if (dot == std::string_view::npos || dot == 0 || dot + 1 == last.size()) return {};
  std::string ext;
  for (char c : last.substr(dot + 1)) {
    unsigned char u = static_cast<unsigned char>(c);
    if (!std::isalnum(u)) return {};
    ext.push_back(static_cast<char>(std::tolower(u)));
  }
  return ext;
}

MediaKind classify_extension(std::string_view ext) {
  for (const auto& rule : kExtensions)
    if (rule.ext == ext) return rule.kind;
  return MediaKind::other;
}

std::string_view attribute_name(LinkAttribute a) {
  switch (a) {
    case LinkAttribute::src: return "src";
    case LinkAttribute::href: return "href";
    case LinkAttribute::poster: return "poster";
  }
  return "src";
}

std::optional<std::string> percent_decode(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '%') {
      out.push_back(text[i]);
      continue;
    }
    if (i + 2 >= text.size()) return std::nullopt;
    int hi = hex_value(text[i + 1]);
    int lo = hex_value(text[i + 2]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out.push_back(static_cast<char>(hi * 16 + lo));
    i += 2;
  }
  if (!unicode::is_valid_utf8(out)) return std::nullopt;
  return out;
}

bool is_external_reference(std::string_view value) {
  value = trim(value);
  if (value.empty() || value.front() == '#' || value.front() == '?') return true;
  if (value.front() == '/' || value.front() == '\\') return true;
  // RFC 3986 scheme: ALPHA *( ALPHA / DIGIT / "+" / "-" / "." ) ":"
  auto colon = value.find(':');
  if (colon != std::string_view::npos && colon > 0) {
    auto slash = value.find('/');
    if (slash == std::string_view::npos || colon < slash) {
      bool scheme = std::isalpha(static_cast<unsigned char>(value[0])) != 0;
      for (std::size_t i = 1; scheme && i < colon; ++i) {
        unsigned char c = static_cast<unsigned char>(value[i]);
        scheme = std::isalnum(c) || c == '+' || c == '-' || c == '.';
      }
      if (scheme) return true;
    }
  }
  return false;
}

std::optional<std::string> canonicalize_relative(std::string_view path, std::string_view base_dir) {
  std::vector<std::string_view> segments;
  auto push_segments = [&](std::string_view p) -> bool {
    std::size_t i = 0;
    while (i <= p.size()) {
      auto slash = p.find('/', i);
      if (slash == std::string_view::npos) slash = p.size();
      std::string_view seg = p.substr(i, slash - i);
      if (seg == "..") {
        if (segments.empty()) return false;
        segments.pop_back();
      } else if (!seg.empty() && seg != ".") {
        segments.push_back(seg);
      }
      i = slash + 1;
    }
    return true;
  };
  if (!push_segments(base_dir) || !push_segments(path)) return std::nullopt;
  if (segments.empty()) return std::nullopt;
  std::string out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i) out.push_back('/');
    out.append(segments[i]);
  }
  return out;
}

std::vector<LocalLink> collect_links(const html::Document& doc, html::NodeId scope,
                                     std::string_view source, std::string_view base_dir) {
  std::vector<LocalLink> links;
  doc.walk(scope, [&](html::NodeId id) {
    const html::Node& n = doc.node(id);
    if (n.kind != html::Node::Kind::element) return true;
    for (const auto& attr : n.attributes) {
      auto which = link_attribute(attr.name);
      if (!which || !attr.has_value) continue;
      if (is_external_reference(attr.value)) continue;
      std::string_view target = strip_query_and_fragment(trim(attr.value));
      if (target.empty()) continue;
      LocalLink link;
      link.attribute = *which;
      link.raw_path = std::string(attr.raw(source));
      link.value_offset = attr.value_offset;
      link.value_length = attr.value_length;
      auto decoded = percent_decode(target);
      std::string candidate;
      if (decoded) {
        candidate = unicode::nfc(*decoded);
      } else {
        link.decode_failed = true;
        candidate = unicode::sanitize_utf8(target);
      }
      auto canonical = canonicalize_relative(candidate, base_dir);
      if (!canonical) continue;
      link.resolved_path = link.decode_failed ? link.raw_path : std::move(*canonical);
      if (link.decode_failed && !canonicalize_relative(link.resolved_path, base_dir)) continue;
      link.kind = classify_extension(extension_of(link.resolved_path));
      links.push_back(std::move(link));
    }
    return true;
  });
  return links;
}

std::vector<LocalLink> extract_links(std::string_view html_fragment, std::string_view base_dir) {
  auto doc = html::Document::parse(html_fragment);
  return collect_links(doc, doc.root(), html_fragment, base_dir);
}

}  // namespace tscdn

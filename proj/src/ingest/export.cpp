#include "ingest/export.hpp"

#include <algorithm>
#include <cctype>

#include "common/error.hpp"
#include "common/fsutil.hpp"
#include "common/unicode.hpp"

namespace tscdn {

namespace fs = std::filesystem;

namespace {

std::string trim_ws(std::string_view v) {
  auto is_ws = [](unsigned char c) { return std::isspace(c) != 0; };
  std::size_t b = 0, e = v.size();
  while (b < e && is_ws(static_cast<unsigned char>(v[b]))) ++b;
  while (e > b && is_ws(static_cast<unsigned char>(v[e - 1]))) --e;
  return std::string(v.substr(b, e - b));
}

bool is_html_file(const fs::path& p) {
  std::string ext = fsutil::path_utf8(p.extension());
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".html" || ext == ".htm";
}

bool parse_fixed(std::string_view s, std::size_t& pos, std::size_t n, int& out) {
  if (pos + n > s.size()) return false;
  int v = 0;
  for (std::size_t i = 0; i < n; ++i) {
    char c = s[pos + i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  out = v;
  pos += n;
  return true;
}

std::optional<Instant> parse_dotted(std::string_view s, FixedOffset zone) {
  std::size_t pos = 0;
  int d, mo, y, h, mi, sec = 0;
  if (!parse_fixed(s, pos, 2, d) || pos >= s.size() || s[pos++] != '.') return std::nullopt;
  if (!parse_fixed(s, pos, 2, mo) || pos >= s.size() || s[pos++] != '.') return std::nullopt;
  if (!parse_fixed(s, pos, 4, y) || pos >= s.size() || s[pos++] != ' ') return std::nullopt;
  if (!parse_fixed(s, pos, 2, h) || pos >= s.size() || s[pos++] != ':') return std::nullopt;
  if (!parse_fixed(s, pos, 2, mi)) return std::nullopt;
  if (pos < s.size() && s[pos] == ':') {
    ++pos;
    if (!parse_fixed(s, pos, 2, sec)) return std::nullopt;
  }
  if (pos < s.size()) {
    std::string_view rest = s.substr(pos);
    if (rest.substr(0, 4) != " UTC") return std::nullopt;
    rest.remove_prefix(4);
    if (rest.empty()) {
      zone = FixedOffset{};
    } else {
      auto z = FixedOffset::parse(rest);
      if (!z) return std::nullopt;
      zone = *z;
    }
  }
  using namespace std::chrono;
  year_month_day ymd{year{y} / month{static_cast<unsigned>(mo)} / day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 59) return std::nullopt;
  return make_instant(y, static_cast<unsigned>(mo), static_cast<unsigned>(d), h, mi, sec) -
         zone.offset;
}

// "830", "12,345", "1.2K", "3M". Without a suffix '.' and ',' are digit
// group separators; with K/M the part after '.' is a fraction.
std::optional<std::int64_t> parse_views(std::string_view text) {
  std::string digits;
  std::size_t fraction_digits = 0;
  bool in_fraction = false;
  std::int64_t scale = 1;
  for (char c : trim_ws(text)) {
    if (c >= '0' && c <= '9') {
      digits += c;
      if (in_fraction) ++fraction_digits;
    } else if (c == '.') {
      in_fraction = true;
    } else if (c == ',' || c == ' ') {
      continue;
    } else if ((c == 'K' || c == 'k') && scale == 1) {
      scale = 1000;
    } else if ((c == 'M' || c == 'm') && scale == 1) {
      scale = 1000000;
    } else {
      return std::nullopt;
    }
  }
  if (digits.empty() || digits.size() > 15) return std::nullopt;
  std::int64_t v = std::stoll(digits);
  if (scale == 1) return v;
  std::int64_t div = 1;
  for (std::size_t i = 0; i < fraction_digits; ++i) div *= 10;
  if (div > scale) return std::nullopt;
  return v * (scale / div);
}

std::string parent_dir(std::string_view rel) {
  auto slash = rel.find_last_of('/');
  return slash == std::string_view::npos ? std::string{} : std::string(rel.substr(0, slash));
}

}  // namespace

std::optional<Instant> normalize_timestamp(std::string_view raw, FixedOffset assumed_zone) {
  std::string s = trim_ws(raw);
  if (s.empty()) return std::nullopt;
  if (auto t = parse_dotted(s, assumed_zone)) return t;
  // Require a time component for ISO input so a bare date is not mistaken
  // for an exact posting instant.
  if (s.size() >= 16 && (s[10] == 'T' || s[10] == 't')) return parse_iso(s, assumed_zone);
  return std::nullopt;
}

std::vector<ExportPage> scan_export(const fs::path& export_root, Diagnostics& diag) {
  std::error_code ec;
  if (!fs::is_directory(export_root, ec))
    throw Error(Errc::io, "export root is not a readable directory: " +
                              fsutil::path_utf8(export_root));
  std::vector<std::pair<std::string, fs::path>> found;
  fs::recursive_directory_iterator it(export_root, fs::directory_options::none, ec);
  if (ec) throw Error(Errc::io, "cannot list " + fsutil::path_utf8(export_root) + ": " + ec.message());
  for (fs::recursive_directory_iterator end; it != end; it.increment(ec)) {
    if (ec) throw Error(Errc::io, "cannot list " + fsutil::path_utf8(export_root) + ": " + ec.message());
    std::error_code fec;
    if (!it->is_regular_file(fec) || !is_html_file(it->path())) continue;
    std::string rel = fsutil::path_utf8(it->path().lexically_relative(export_root).generic_u8string());
    found.emplace_back(std::move(rel), it->path());
  }
  if (ec) throw Error(Errc::io, "cannot list " + fsutil::path_utf8(export_root) + ": " + ec.message());
  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<ExportPage> pages;
  pages.reserve(found.size());
  for (auto& [rel, path] : found) {
    auto bytes = fsutil::read_file(path);
    if (!bytes) {
      diag.warn("unreadable_file", "skipping unreadable export page", rel);
      continue;
    }
    pages.push_back({std::move(rel), std::move(*bytes)});
  }
  return pages;
}

std::vector<RawMessage> parse_export(std::string_view html_bytes, const SourceMeta& source,
                                     std::string_view page_path, const ParseOptions& options,
                                     Diagnostics& diag) {
  const ExportProfile& prof = options.profile;
  std::size_t replaced = 0;
  std::string text = unicode::is_valid_utf8(html_bytes) ? std::string(html_bytes)
                                                        : unicode::sanitize_utf8(html_bytes, &replaced);
  if (replaced > 0)
    diag.warn("invalid_utf8", std::to_string(replaced) + " malformed UTF-8 sequence(s) replaced",
              std::string(page_path));

  auto doc = html::Document::parse(text);
  std::string base = parent_dir(page_path);

  std::vector<html::NodeId> blocks;
  doc.walk(doc.root(), [&](html::NodeId id) {
    const auto& n = doc.node(id);
    if (n.kind != html::Node::Kind::element) return false;
    if (doc.has_class(id, prof.message_class)) {
      if (!doc.has_class(id, prof.skip_class)) blocks.push_back(id);
      return false;
    }
    return true;
  });

  std::vector<RawMessage> out;
  if (blocks.empty()) {
    if (!html_bytes.empty())
      diag.warn("no_messages", "page contains no recognizable message blocks", std::string(page_path));
    return out;
  }

  auto find_class = [&](html::NodeId scope, const std::string& cls) {
    return doc.find_descendant(scope, [&](html::NodeId n) {
      return doc.node(n).kind == html::Node::Kind::element && doc.has_class(n, cls);
    });
  };

  for (std::size_t ordinal = 0; ordinal < blocks.size(); ++ordinal) {
    html::NodeId block = blocks[ordinal];
    RawMessage msg;
    msg.source_ordinal = ordinal;

    const html::Attribute* id_attr = doc.attribute(block, "id");
    std::string id_value = id_attr ? trim_ws(id_attr->value) : std::string{};
    if (!id_value.empty() && id_value.rfind(prof.id_prefix, 0) == 0 &&
        id_value.size() > prof.id_prefix.size())
      msg.message_id = id_value.substr(prof.id_prefix.size());
    else
      msg.message_id = std::string(page_path) + "#" + std::to_string(ordinal);

    if (html::NodeId date = find_class(block, prof.date_class); date != html::kNoNode) {
      const html::Attribute* a = doc.attribute(date, prof.date_attribute);
      msg.timestamp_raw = trim_ws(a ? a->value : doc.text_content(date));
      msg.timestamp = normalize_timestamp(msg.timestamp_raw, options.assumed_zone);
      if (msg.timestamp &&
          (*msg.timestamp < Instant{} || *msg.timestamp > source.crawl_time)) {
        diag.warn("timestamp_out_of_range",
                  "message " + msg.message_id + " dated " + msg.timestamp_raw +
                      " lies outside [1970-01-01, crawl time]",
                  std::string(page_path));
        msg.timestamp.reset();
      }
    }
    if (!msg.timestamp)
      diag.warn("invalid_timestamp",
                "message " + msg.message_id + " has no parseable date '" + msg.timestamp_raw + "'",
                std::string(page_path));

    if (html::NodeId body = find_class(block, prof.text_class); body != html::kNoNode)
      msg.text = unicode::nfc(trim_ws(doc.text_content(body)));

    if (html::NodeId fwd = find_class(block, prof.forwarded_class); fwd != html::kNoNode) {
      html::NodeId from = find_class(fwd, prof.from_name_class);
      if (from != html::kNoNode) {
        // Telegram appends the original post date to the name in a child span.
        std::string name;
        for (html::NodeId child : doc.node(from).children)
          if (doc.node(child).kind == html::Node::Kind::text) name += doc.node(child).text;
        msg.forwarded_from = unicode::nfc(trim_ws(name.empty() ? doc.text_content(from) : name));
      }
    }

    if (html::NodeId views = find_class(block, prof.views_class); views != html::kNoNode)
      msg.views = parse_views(doc.text_content(views));

    msg.media_links = collect_links(doc, block, text, base);
    out.push_back(std::move(msg));
  }
  return out;
}

}  // namespace tscdn

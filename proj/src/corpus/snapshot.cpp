#include "corpus/snapshot.hpp"

#include <algorithm>

#include "common/error.hpp"
#include "common/fsutil.hpp"

namespace tscdn {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json media_json(const MediaRef& m) {
  ordered_json j;
  j["kind"] = kind_name(m.kind);
  j["hash"] = m.hash.hex();
  j["ext"] = m.ext;
  j["bytes"] = m.bytes;
  return j;
}

MediaRef media_from_json(const json& j) {
  MediaRef m;
  auto hash = ContentHash::from_hex(j.at("hash").get<std::string>());
  auto kind = parse_kind(j.at("kind").get<std::string>());
  if (!hash || !kind) throw Error(Errc::schema, "snapshot: malformed media entry");
  m.hash = *hash;
  m.kind = *kind;
  m.ext = j.at("ext").get<std::string>();
  m.bytes = j.at("bytes").get<std::uint64_t>();
  return m;
}

}  // namespace

ordered_json to_json(const Snapshot& s) {
  ordered_json j;
  j["schema"] = 1;
  j["archive_id"] = s.archive_id;
  j["channel"] = s.channel_slug;
  j["channel_name"] = s.channel_name;
  j["crawl_time"] = format_iso(s.crawl_time);
  ordered_json msgs = ordered_json::array();
  for (const auto& m : s.messages) {
    ordered_json e;
    e["ordinal"] = m.ordinal;
    e["page"] = m.page;
    e["id"] = m.id;
    e["date_utc"] = m.date ? ordered_json(format_iso(*m.date)) : ordered_json(nullptr);
    e["date_raw"] = m.date_raw;
    e["text"] = m.text;
    e["views"] = m.views ? ordered_json(*m.views) : ordered_json(nullptr);
    e["forwarded_from"] = m.forwarded_from ? ordered_json(*m.forwarded_from) : ordered_json(nullptr);
    ordered_json media = ordered_json::array();
    for (const auto& r : m.media) media.push_back(media_json(r));
    e["media"] = std::move(media);
    msgs.push_back(std::move(e));
  }
  j["messages"] = std::move(msgs);
  return j;
}

Snapshot snapshot_from_json(const json& j) {
  try {
    if (j.at("schema") != 1)
      throw Error(Errc::schema, "snapshot: unsupported schema " + j.at("schema").dump());
    Snapshot s;
    s.archive_id = j.at("archive_id").get<std::string>();
    s.channel_slug = j.at("channel").get<std::string>();
    s.channel_name = j.at("channel_name").get<std::string>();
    auto crawl = parse_iso(j.at("crawl_time").get<std::string>());
    if (!crawl) throw Error(Errc::schema, "snapshot: bad crawl_time");
    s.crawl_time = *crawl;
    for (const auto& e : j.at("messages")) {
      SnapshotMessage m;
      m.ordinal = e.at("ordinal").get<std::size_t>();
      m.page = e.at("page").get<std::string>();
      m.id = e.at("id").get<std::string>();
      if (!e.at("date_utc").is_null()) {
        m.date = parse_iso(e.at("date_utc").get<std::string>());
        if (!m.date) throw Error(Errc::schema, "snapshot: bad date_utc for message " + m.id);
      }
      m.date_raw = e.at("date_raw").get<std::string>();
      m.text = e.at("text").get<std::string>();
      if (!e.at("views").is_null()) m.views = e.at("views").get<std::int64_t>();
      if (!e.at("forwarded_from").is_null()) m.forwarded_from = e.at("forwarded_from").get<std::string>();
      for (const auto& r : e.at("media")) m.media.push_back(media_from_json(r));
      s.messages.push_back(std::move(m));
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(Errc::schema, std::string("snapshot: ") + e.what());
  }
}

fs::path snapshot_path(const fs::path& cdn_root, const std::string& archive_id) {
  return cdn_root / "snapshots" / fsutil::utf8_path(archive_id + ".json");
}

void save_snapshot(const fs::path& cdn_root, const Snapshot& snapshot) {
  fsutil::atomic_write(snapshot_path(cdn_root, snapshot.archive_id), to_json(snapshot).dump(1) + "\n");
}

Snapshot load_snapshot(const fs::path& file) {
  auto text = fsutil::read_file(file);
  if (!text) throw Error(Errc::io, "cannot read snapshot " + fsutil::path_utf8(file));
  json j;
  try {
    j = json::parse(*text);
  } catch (const json::exception& e) {
    throw Error(Errc::parse, "snapshot " + fsutil::path_utf8(file) + ": " + e.what());
  }
  return snapshot_from_json(j);
}

std::vector<Snapshot> load_snapshots(const fs::path& cdn_root) {
  std::vector<fs::path> files;
  std::error_code ec;
  fs::path dir = cdn_root / "snapshots";
  if (!fs::is_directory(dir, ec)) return {};
  for (fs::directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec))
    if (it->path().extension() == ".json") files.push_back(it->path());
  std::sort(files.begin(), files.end());
  std::vector<Snapshot> out;
  for (const auto& f : files) out.push_back(load_snapshot(f));
  return out;
}

}  // namespace tscdn

#include "corpus/json_db.hpp"

#include <algorithm>
#include <vector>

#include "common/error.hpp"
#include "common/fsutil.hpp"

namespace tscdn {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json nullable(const std::optional<std::string>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

[[noreturn]] void schema_error(const std::string& pointer, const std::string& what) {
  throw Error(Errc::schema, "JSON DB schema v1: " + what + " at " + (pointer.empty() ? "/" : pointer));
}

const json& field(const json& obj, const std::string& pointer, const char* key) {
  if (!obj.is_object()) schema_error(pointer, "expected object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(pointer + "/" + key, "missing field");
  return *it;
}

std::string string_field(const json& obj, const std::string& pointer, const char* key) {
  const json& v = field(obj, pointer, key);
  if (!v.is_string()) schema_error(pointer + "/" + key, "expected string");
  return v.get<std::string>();
}

}  // namespace

ordered_json to_json_db(const Corpus& corpus, const std::string& slug) {
  ordered_json doc;
  doc["schema"] = kJsonDbSchema;
  doc["channel"] = slug;
  auto name = corpus.channel_names.find(slug);
  doc["channel_name"] = name == corpus.channel_names.end() ? slug : name->second;

  std::vector<const Corpus::VersionChain*> chains;
  for (const auto& [id, chain] : corpus.events)
    if (id.channel == slug && !chain.empty()) chains.push_back(&chain);
  std::stable_sort(chains.begin(), chains.end(), [](const auto* a, const auto* b) {
    return std::tie(a->front().timestamp, a->front().event) < std::tie(b->front().timestamp, b->front().event);
  });

  ordered_json messages = ordered_json::array();
  for (const auto* chain : chains) {
    for (const auto& v : *chain) {
      ordered_json m;
      m["id"] = v.event.local_id;
      m["date_utc"] = format_iso(v.timestamp);
      m["text"] = v.text;
      m["views"] = v.views ? ordered_json(*v.views) : ordered_json(nullptr);
      m["forwarded_from"] = nullable(v.forwarded_from);
      ordered_json media = ordered_json::array();
      for (const auto& r : v.media) {
        ordered_json e;
        e["kind"] = kind_name(r.kind);
        e["hash"] = r.hash.hex();
        e["ext"] = r.ext;
        e["bytes"] = r.bytes;
        media.push_back(std::move(e));
      }
      m["media"] = std::move(media);
      messages.push_back(std::move(m));
    }
  }
  doc["messages"] = std::move(messages);
  return doc;
}

void export_json_db(const Corpus& corpus, const fs::path& out_dir) {
  for (const auto& [slug, name] : corpus.channel_names)
    fsutil::atomic_write(out_dir / fsutil::utf8_path(slug + ".json"),
                         to_json_db(corpus, slug).dump(2) + "\n");
}

Corpus corpus_from_json_db(const json& doc) {
  const json& schema = field(doc, "", "schema");
  if (schema != kJsonDbSchema) {
    throw Error(Errc::schema, "unsupported JSON DB schema version " + schema.dump() +
                                  " (expected " + std::to_string(kJsonDbSchema) + ")");
  }
  Corpus corpus;
  std::string slug = string_field(doc, "", "channel");
  if (slug.empty() || slug.find(':') != std::string::npos) schema_error("/channel", "invalid channel slug");
  corpus.channel_names[slug] = string_field(doc, "", "channel_name");

  const json& messages = field(doc, "", "messages");
  if (!messages.is_array()) schema_error("/messages", "expected array");
  for (std::size_t i = 0; i < messages.size(); ++i) {
    const std::string ptr = "/messages/" + std::to_string(i);
    const json& m = messages[i];
    EventVersion v;
    v.event = EventId{slug, string_field(m, ptr, "id")};
    auto date = parse_iso(string_field(m, ptr, "date_utc"));
    if (!date) schema_error(ptr + "/date_utc", "invalid ISO-8601 instant");
    v.timestamp = *date;
    v.text = string_field(m, ptr, "text");
    const json& views = field(m, ptr, "views");
    if (views.is_number_integer()) v.views = views.get<std::int64_t>();
    else if (!views.is_null()) schema_error(ptr + "/views", "expected integer or null");
    const json& fwd = field(m, ptr, "forwarded_from");
    if (fwd.is_string()) v.forwarded_from = fwd.get<std::string>();
    else if (!fwd.is_null()) schema_error(ptr + "/forwarded_from", "expected string or null");
    const json& media = field(m, ptr, "media");
    if (!media.is_array()) schema_error(ptr + "/media", "expected array");
    for (std::size_t k = 0; k < media.size(); ++k) {
      const std::string mptr = ptr + "/media/" + std::to_string(k);
      MediaRef r;
      auto kind = parse_kind(string_field(media[k], mptr, "kind"));
      if (!kind || db_media_kind(*kind) != *kind) schema_error(mptr + "/kind", "unknown media kind");
      r.kind = *kind;
      auto hash = ContentHash::from_hex(string_field(media[k], mptr, "hash"));
      if (!hash) schema_error(mptr + "/hash", "expected lowercase hex digest");
      r.hash = *hash;
      r.ext = string_field(media[k], mptr, "ext");
      const json& bytes = field(media[k], mptr, "bytes");
      if (!bytes.is_number_unsigned() && !(bytes.is_number_integer() && bytes.get<std::int64_t>() >= 0))
        schema_error(mptr + "/bytes", "expected non-negative integer");
      r.bytes = bytes.get<std::uint64_t>();
      v.media.push_back(std::move(r));
    }
    auto& chain = corpus.events[v.event];
    if (!chain.empty() && v.timestamp <= chain.back().timestamp)
      schema_error(ptr + "/date_utc", "versions of one id must be strictly increasing");
    chain.push_back(std::move(v));
  }
  for (auto& [id, chain] : corpus.events) assign_valid_intervals(chain);
  return corpus;
}

Corpus import_json_db(const fs::path& file) {
  auto text = fsutil::read_file(file);
  if (!text) throw Error(Errc::io, "cannot read " + fsutil::path_utf8(file));
  json doc;
  try {
    doc = json::parse(*text);
  } catch (const json::exception& e) {
    throw Error(Errc::parse, fsutil::path_utf8(file) + ": " + e.what());
  }
  return corpus_from_json_db(doc);
}

Corpus import_json_db_dir(const fs::path& dir) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (fs::directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec))
    if (it->path().extension() == ".json") files.push_back(it->path());
  if (ec) throw Error(Errc::io, "cannot list " + fsutil::path_utf8(dir));
  std::sort(files.begin(), files.end());
  Corpus out;
  for (const auto& f : files) {
    Corpus part = import_json_db(f);
    out.channel_names.insert(part.channel_names.begin(), part.channel_names.end());
    for (auto& [id, chain] : part.events) out.events[id] = std::move(chain);
  }
  return out;
}

}  // namespace tscdn

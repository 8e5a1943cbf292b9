#include "index/persist.hpp"

#include <json.hpp>

#include "common/error.hpp"
#include "common/fsutil.hpp"
#include "store/digest.hpp"

namespace tscdn {

using nlohmann::json;

namespace {

constexpr std::string_view kChecksumPrefix = "#md5:";

std::string iso(Instant t) { return format_iso(t); }

Instant instant(const json& j) {
  auto t = parse_iso(j.get<std::string>());
  if (!t) throw Error(Errc::schema, "malformed instant " + j.dump() + " in index");
  return *t;
}

json entry_json(const PostingEntry& e) {
  return json::array({e.event.channel, e.event.local_id, iso(e.interval.begin),
                      e.interval.end ? json(iso(*e.interval.end)) : json(nullptr), e.repetition, e.positions});
}

PostingEntry entry_from(const json& j) {
  if (!j.is_array() || j.size() != 6) throw Error(Errc::schema, "malformed posting entry");
  PostingEntry e;
  e.event = {j[0].get<std::string>(), j[1].get<std::string>()};
  e.interval.begin = instant(j[2]);
  if (!j[3].is_null()) e.interval.end = instant(j[3]);
  e.repetition = j[4].get<std::uint32_t>();
  e.positions = j[5].get<std::vector<std::uint32_t>>();
  return e;
}

}  // namespace

std::string serialize_index(const InvertedIndex& index) {
  json doc = json::object();
  doc["schema"] = kIndexSchemaVersion;
  doc["built_at"] = format_iso(index.built_at);
  doc["coalesce"] = index.coalesce ? json{{"tau", index.coalesce->tau}} : json(nullptr);

  json words = json::array();
  for (const auto& [id, n] : index.stats.total_words) words.push_back({id.channel, id.local_id, n});
  json version_words = json::array();
  for (const auto& [key, n] : index.stats.version_words)
    version_words.push_back({key.first.channel, key.first.local_id, iso(key.second), n});
  doc["stats"] = {{"events", index.stats.total_events},
                  {"ef", index.stats.event_frequency},
                  {"words", std::move(words)},
                  {"version_words", std::move(version_words)}};

  json terms = json::object();
  for (const auto& [term, list] : index.dictionary) {
    json arr = json::array();
    for (const auto& e : list) arr.push_back(entry_json(e));
    terms[term] = std::move(arr);
  }
  doc["terms"] = std::move(terms);

  std::string body = doc.dump();
  return body + "\n" + std::string(kChecksumPrefix) + hash_content(body, DigestAlgorithm::md5).hex() + "\n";
}

InvertedIndex deserialize_index(std::string_view text) {
  auto nl = text.find('\n');
  if (nl == std::string_view::npos) throw Error(Errc::integrity, "index file is truncated: no checksum line");
  std::string_view body = text.substr(0, nl);
  std::string_view tail = text.substr(nl + 1);
  while (!tail.empty() && (tail.back() == '\n' || tail.back() == '\r')) tail.remove_suffix(1);
  if (!tail.starts_with(kChecksumPrefix)) throw Error(Errc::integrity, "index file has no checksum line");
  std::string_view expected = tail.substr(kChecksumPrefix.size());
  if (hash_content(body, DigestAlgorithm::md5).hex() != expected)
    throw Error(Errc::integrity, "index checksum mismatch; the file is corrupt or truncated");

  json doc = json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw Error(Errc::schema, "index body is not a JSON object");
  if (!doc.contains("schema") || !doc["schema"].is_number_integer())
    throw Error(Errc::schema, "index has no schema version");
  if (doc["schema"].get<int>() != kIndexSchemaVersion)
    throw Error(Errc::schema, "unsupported index schema version " + doc["schema"].dump());

  try {
    InvertedIndex index;
    auto built = parse_iso(doc.at("built_at").get<std::string>());
    if (!built) throw Error(Errc::schema, "malformed index built_at");
    index.built_at = *built;
    if (!doc.at("coalesce").is_null()) index.coalesce = CoalesceConfig{doc["coalesce"].at("tau").get<double>()};
    const json& st = doc.at("stats");
    index.stats.total_events = st.at("events").get<std::size_t>();
    index.stats.event_frequency = st.at("ef").get<std::map<std::string, std::size_t>>();
    for (const auto& w : st.at("words"))
      index.stats.total_words[{w.at(0).get<std::string>(), w.at(1).get<std::string>()}] = w.at(2).get<std::size_t>();
    for (const auto& w : st.at("version_words"))
      index.stats.version_words[{EventId{w.at(0).get<std::string>(), w.at(1).get<std::string>()}, instant(w.at(2))}] =
          w.at(3).get<std::size_t>();
    for (const auto& [term, arr] : doc.at("terms").items()) {
      PostingList list;
      for (const auto& e : arr) list.push_back(entry_from(e));
      index.dictionary.emplace(term, std::move(list));
    }
    return index;
  } catch (const json::exception& e) {
    throw Error(Errc::schema, std::string("malformed index: ") + e.what());
  }
}

void save_index(const InvertedIndex& index, const std::filesystem::path& file) {
  fsutil::atomic_write(file, serialize_index(index));
}

InvertedIndex load_index(const std::filesystem::path& file) {
  auto text = fsutil::read_file(file);
  if (!text) throw Error(Errc::not_found, "index not found at " + fsutil::path_utf8(file) + "; run `tscdn index` first");
  return deserialize_index(*text);
}

}  // namespace tscdn

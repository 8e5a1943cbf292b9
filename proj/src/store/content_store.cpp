#include "store/content_store.hpp"


#include "common/error.hpp"
#include "common/fsutil.hpp"

namespace tscdn {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string_view last_path_segment(std::string_view path) {
  auto slash = path.find_last_of('/');
  return slash == std::string_view::npos ? path : path.substr(slash + 1);
}

std::optional<ObjectKey> parse_stored_name(std::string_view name) {
  auto dot = name.find('.');
  std::string_view hex = name.substr(0, dot);
  std::string_view ext = dot == std::string_view::npos ? std::string_view{} : name.substr(dot + 1);
  if (!ContentHash::from_hex(hex)) return std::nullopt;
  if (dot != std::string_view::npos && ext.empty()) return std::nullopt;
  for (char c : ext)
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'))) return std::nullopt;
  return ObjectKey{std::string(hex), std::string(ext)};
}

bool is_stored_name(std::string_view name) { return parse_stored_name(name).has_value(); }

ContentStore::ContentStore(fs::path root, StoreOptions options)
    : root_(std::move(root)), options_(options) {}

ContentStore::ContentStore(ContentStore&& other) noexcept
    : root_(std::move(other.root_)),
      options_(other.options_),
      objects_(std::move(other.objects_)),
      dictionaries_(std::move(other.dictionaries_)) {}

ContentStore ContentStore::open(const fs::path& root, StoreOptions options) {
  ContentStore store(root, options);
  std::error_code ec;
  fs::create_directories(store.objects_dir(), ec);
  if (ec) throw Error(Errc::io, "cannot create store at " + fsutil::path_utf8(root) + ": " + ec.message());
  if (fs::exists(store.index_path(), ec)) store.load_index();
  return store;
}

void ContentStore::load_index() {
  auto text = fsutil::read_file(index_path());
  if (!text) throw Error(Errc::io, "cannot read " + fsutil::path_utf8(index_path()));
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(*text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, "cdn-index.json is not valid JSON: " + std::string(e.what()));
  }
  auto fail = [](const std::string& where) {
    throw Error(Errc::schema, "cdn-index.json: unexpected content at " + where);
  };
  if (!j.is_object() || !j.contains("version")) fail("/version");
  if (j["version"] != kIndexVersion)
    throw Error(Errc::schema, "cdn-index.json: unsupported version " + j["version"].dump());
  if (!j.contains("objects") || !j["objects"].is_array()) fail("/objects");
  std::size_t i = 0;
  for (const auto& o : j["objects"]) {
    std::string where = "/objects/" + std::to_string(i++);
    try {
      StoredObject obj;
      auto hash = ContentHash::from_hex(o.at("hash").get<std::string>());
      if (!hash) fail(where + "/hash");
      obj.hash = *hash;
      obj.extension = o.at("ext").get<std::string>();
      obj.size_bytes = o.at("size").get<std::uint64_t>();
      auto kind = parse_kind(o.at("kind").get<std::string>());
      if (!kind) fail(where + "/kind");
      obj.kind = *kind;
      auto seen = parse_iso(o.at("first_seen").get<std::string>());
      if (!seen) fail(where + "/first_seen");
      obj.first_seen = *seen;
      for (const auto& n : o.at("names")) obj.source_names.insert(n.get<std::string>());
      objects_.emplace(ObjectKey{obj.hash.hex(), obj.extension}, std::move(obj));
    } catch (const nlohmann::json::exception&) {
      fail(where);
    }
  }
  if (!j.contains("dictionaries") || !j["dictionaries"].is_object()) fail("/dictionaries");
  for (const auto& [archive, entries] : j["dictionaries"].items()) {
    if (!entries.is_object()) fail("/dictionaries/" + archive);
    auto& dict = dictionaries_[archive];
    for (const auto& [path, target] : entries.items()) {
      if (!target.is_string()) fail("/dictionaries/" + archive);
      const auto& name = target.get_ref<const std::string&>();
      if (name == "missing")
        dict[path] = std::nullopt;
      else
        dict[path] = name;
    }
  }
}

StoredObject ContentStore::ingest_file(std::string_view archive_id, std::string_view original_path,
                                       std::string_view bytes, Instant seen) {
  ContentHash hash = hash_content(bytes, options_.digest);
  std::string ext = extension_of(original_path);
  ObjectKey key{hash.hex(), ext};

  std::lock_guard lock(mutex_);
  auto it = objects_.find(key);
  if (it == objects_.end()) {
    StoredObject obj;
    obj.hash = hash;
    obj.extension = ext;
    obj.size_bytes = bytes.size();
    obj.kind = classify_extension(ext);
    obj.first_seen = seen;
    fs::path target = objects_dir() / obj.filename();
    std::error_code ec;
    if (fs::exists(target, ec)) {
      if (fs::file_size(target, ec) != bytes.size())
        throw Error(Errc::integrity, "existing object " + obj.filename() + " has a different size");
    } else {
      fsutil::atomic_write(target, bytes);
    }
    it = objects_.emplace(key, std::move(obj)).first;
  } else if (seen < it->second.first_seen) {
    it->second.first_seen = seen;
  }
  it->second.source_names.insert(std::string(last_path_segment(original_path)));
  dictionaries_[std::string(archive_id)][std::string(original_path)] = it->second.filename();
  return it->second;
}

void ContentStore::record_missing(std::string_view archive_id, std::string_view original_path) {
  std::lock_guard lock(mutex_);
  dictionaries_[std::string(archive_id)][std::string(original_path)] = std::nullopt;
}

const StoredObject* ContentStore::find(std::string_view stored_name) const {
  auto key = parse_stored_name(stored_name);
  if (!key) return nullptr;
  auto it = objects_.find(*key);
  return it == objects_.end() ? nullptr : &it->second;
}

std::optional<std::string> ContentStore::read_object(std::string_view stored_name) const {
  if (!find(stored_name)) return std::nullopt;
  return fsutil::read_file(objects_dir() / std::string(stored_name));
}

ordered_json ContentStore::index_json() const {
  ordered_json j;
  j["version"] = kIndexVersion;
  ordered_json objs = ordered_json::array();
  for (const auto& [key, o] : objects_) {
    ordered_json e;
    e["hash"] = o.hash.hex();
    e["ext"] = o.extension;
    e["size"] = o.size_bytes;
    e["kind"] = kind_name(o.kind);
    e["first_seen"] = format_iso(o.first_seen);
    e["names"] = o.source_names;
    objs.push_back(std::move(e));
  }
  j["objects"] = std::move(objs);
  ordered_json dicts = ordered_json::object();
  for (const auto& [archive, entries] : dictionaries_) {
    ordered_json d = ordered_json::object();
    for (const auto& [path, target] : entries) d[path] = target ? *target : std::string("missing");
    dicts[archive] = std::move(d);
  }
  j["dictionaries"] = std::move(dicts);
  return j;
}

void ContentStore::save_index() const {
  std::lock_guard lock(mutex_);
  fsutil::atomic_write(index_path(), index_json().dump(2) + "\n");
}

void ContentStore::replace_catalog(std::map<ObjectKey, StoredObject> objects,
                                   PathDictionary dictionaries) {
  std::lock_guard lock(mutex_);
  objects_ = std::move(objects);
  dictionaries_ = std::move(dictionaries);
}

}  // namespace tscdn

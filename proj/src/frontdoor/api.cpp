#include "frontdoor/api.hpp"

#include <charconv>

#include "frontdoor/analytics.hpp"
#include "ingest/links.hpp"
#include "store/stats.hpp"

namespace tscdn {

using nlohmann::ordered_json;

constexpr std::size_t kDefaultLimit = 200;

int http_status(Errc code) {
  switch (code) {
    case Errc::invalid_argument:
    case Errc::parse:
    case Errc::empty_query:
    case Errc::invalid_interval:
      return 400;
    case Errc::not_found:
      return 404;
    case Errc::empty_corpus:
      return 409;
    default:
      return 500;
  }
}

ApiResponse error_response(Errc code, const std::string& message) {
  ordered_json j;
  j["error"] = {{"code", errc_name(code)}, {"message", message}};
  return {http_status(code), j.dump()};
}

ApiParams parse_query_string(std::string_view query) {
  ApiParams out;
  auto decode = [](std::string_view s) {
    std::string plus(s);
    for (char& c : plus)
      if (c == '+') c = ' ';
    auto decoded = percent_decode(plus);
    if (!decoded) throw Error(Errc::invalid_argument, "malformed percent-encoding in query string");
    return *decoded;
  };
  std::size_t pos = 0;
  while (pos < query.size()) {
    auto amp = query.find('&', pos);
    std::string_view pair = query.substr(pos, amp == std::string_view::npos ? std::string_view::npos : amp - pos);
    if (!pair.empty()) {
      auto eq = pair.find('=');
      std::string key = decode(pair.substr(0, eq));
      std::string value = eq == std::string_view::npos ? std::string() : decode(pair.substr(eq + 1));
      out.emplace(std::move(key), std::move(value));
    }
    if (amp == std::string_view::npos) break;
    pos = amp + 1;
  }
  return out;
}

Instant parse_bound(std::string_view text, bool upper) {
  auto t = parse_iso(text);
  if (!t) throw Error(Errc::invalid_argument, "malformed date '" + std::string(text) + "'");
  if (upper && text.size() == 10) return *t + std::chrono::days{1} - std::chrono::seconds{1};
  return *t;
}

namespace {

const std::string* param(const ApiParams& p, const std::string& key) {
  auto it = p.find(key);
  return it == p.end() ? nullptr : &it->second;
}

bool flag(const ApiParams& p, const std::string& key) {
  const std::string* v = param(p, key);
  if (!v) return false;
  if (v->empty() || *v == "1" || *v == "true" || *v == "yes") return true;
  if (*v == "0" || *v == "false" || *v == "no") return false;
  throw Error(Errc::invalid_argument, "parameter '" + key + "' must be a boolean");
}

std::size_t count_param(const ApiParams& p, const std::string& key, std::size_t fallback) {
  const std::string* v = param(p, key);
  if (!v) return fallback;
  std::size_t n = 0;
  auto [end, ec] = std::from_chars(v->data(), v->data() + v->size(), n);
  if (ec != std::errc() || end != v->data() + v->size())
    throw Error(Errc::invalid_argument, "parameter '" + key + "' must be a non-negative integer");
  return n;
}

std::set<std::string> channel_list(const ApiParams& p) {
  std::set<std::string> out;
  const std::string* v = param(p, "channels");
  if (!v) return out;
  std::size_t pos = 0;
  while (pos <= v->size()) {
    auto comma = v->find(',', pos);
    std::string item = v->substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) out.insert(item);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<std::string> split_phrase(const std::string& q) {
  std::vector<std::string> out;
  if (!q.empty()) out.push_back(q);
  return out;
}

ordered_json interval_json(const Interval& iv) {
  return {{"begin", format_iso(iv.begin)}, {"end", iv.end ? ordered_json(format_iso(*iv.end)) : ordered_json(nullptr)}};
}

ordered_json media_json(const MediaRef& m) {
  std::string name = m.ext.empty() ? m.hash.hex() : m.hash.hex() + "." + m.ext;
  return {{"kind", kind_name(m.kind)}, {"hash", m.hash.hex()}, {"ext", m.ext}, {"bytes", m.bytes}, {"url", "/cdn/" + name}};
}

ApiResponse json_ok(const ordered_json& j) { return {200, j.dump()}; }

QuerySpec analytics_spec(const ApiParams& p) {
  QuerySpec q = search_spec(p);
  q.limit.reset();
  q.offset = 0;
  return q;
}

ApiResponse route(const Engine& engine, std::string_view path, const ApiParams& p) {
  if (path == "/healthz") {
    ordered_json j;
    j["status"] = "ok";
    j["events"] = engine.corpus().event_count();
    j["objects"] = engine.store().objects().size();
    return json_ok(j);
  }
  if (path == "/api/search") return {200, serialize_results(engine.search(search_spec(p)))};
  if (path == "/api/trends") {
    Granularity g = Granularity::day;
    if (const std::string* v = param(p, "granularity")) {
      auto parsed = parse_granularity(*v);
      if (!parsed) throw Error(Errc::invalid_argument, "granularity must be day, week or month");
      g = *parsed;
    }
    QuerySpec q = analytics_spec(p);
    ordered_json j;
    j["query"] = p.at("q");
    auto body = to_json(trend_series(engine, std::move(q), g));
    for (auto& [k, v] : body.items()) j[k] = v;
    return json_ok(j);
  }
  if (path == "/api/weekend") {
    const std::string* months = param(p, "months");
    if (!months) throw Error(Errc::invalid_argument, "missing parameter 'months'");
    QuerySpec q = analytics_spec(p);
    ordered_json j;
    j["query"] = p.at("q");
    auto body = to_json(weekend_window(engine, std::move(q), parse_months(*months)));
    for (auto& [k, v] : body.items()) j[k] = v;
    return json_ok(j);
  }
  if (path == "/api/daily-average") {
    QuerySpec q = analytics_spec(p);
    ordered_json j;
    j["query"] = p.at("q");
    j["channels"] = to_json(daily_average(engine, std::move(q)));
    return json_ok(j);
  }
  if (path == "/api/channels") return json_ok(to_json(channel_rankings(engine.corpus(), engine.store())));
  if (path == "/api/stats") {
    ordered_json j = stats_json(engine.store());
    j["events"] = engine.corpus().event_count();
    j["versions"] = engine.corpus().version_count();
    j["terms"] = engine.index().dictionary.size();
    j["postings"] = engine.index().entry_count();
    j["coalesced_postings"] = engine.index(true).entry_count();
    return json_ok(j);
  }
  if (path == "/api/categories") {
    const std::string* ev = param(p, "event");
    if (!ev) throw Error(Errc::invalid_argument, "missing parameter 'event'");
    auto id = EventId::parse(*ev);
    if (!id) throw Error(Errc::invalid_argument, "event must look like <channel>:<id>");
    ordered_json j;
    j["event"] = id->to_string();
    ordered_json cats = ordered_json::array();
    for (const auto& c : engine.categorize(*id)) cats.push_back({{"name", c.name}, {"similarity", c.similarity}});
    j["categories"] = std::move(cats);
    return json_ok(j);
  }
  throw Error(Errc::not_found, "no such endpoint: " + std::string(path));
}

}  // namespace

QuerySpec search_spec(const ApiParams& p) {
  QuerySpec q;
  const std::string* text = param(p, "q");
  if (!text) throw Error(Errc::invalid_argument, "missing parameter 'q'");
  q.keywords = split_phrase(*text);
  if (const std::string* v = param(p, "from")) q.from = parse_bound(*v, false);
  if (const std::string* v = param(p, "to")) q.to = parse_bound(*v, true);
  q.channels = channel_list(p);
  q.all_terms = flag(p, "all_terms");
  q.coalesced = flag(p, "coalesced");
  q.limit = count_param(p, "limit", kDefaultLimit);
  q.offset = count_param(p, "offset", 0);
  if (const std::string* v = param(p, "mode")) {
    if (*v == "occurrence") q.mode = TemporalMode::occurrence;
    else if (*v == "validity") q.mode = TemporalMode::validity;
    else throw Error(Errc::invalid_argument, "mode must be occurrence or validity");
  }
  return q;
}

ordered_json to_json(const ScoredEvent& e) {
  ordered_json j;
  j["event"] = e.event.to_string();
  j["channel"] = e.event.channel;
  j["id"] = e.event.local_id;
  j["timestamp"] = format_iso(e.timestamp);
  j["tf_ief_sum"] = e.tf_ief_sum;
  j["cosine"] = e.cosine;
  ordered_json intervals = ordered_json::array();
  for (const auto& iv : e.matched_intervals) intervals.push_back(interval_json(iv));
  j["matched_intervals"] = std::move(intervals);
  j["repetitions"] = e.repetitions;
  if (e.version) {
    j["valid"] = interval_json(e.version->valid);
    j["text"] = e.version->text;
    j["views"] = e.version->views ? ordered_json(*e.version->views) : ordered_json(nullptr);
    j["forwarded_from"] = e.version->forwarded_from ? ordered_json(*e.version->forwarded_from) : ordered_json(nullptr);
    ordered_json media = ordered_json::array();
    for (const auto& m : e.version->media) media.push_back(media_json(m));
    j["media"] = std::move(media);
  }
  return j;
}

std::string serialize_results(const std::vector<ScoredEvent>& results) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : results) arr.push_back(to_json(r));
  return arr.dump();
}

ApiResponse handle_api(const Engine& engine, std::string_view path, const ApiParams& params) {
  try {
    return route(engine, path, params);
  } catch (const Error& e) {
    return error_response(e.code(), e.what());
  } catch (const std::exception& e) {
    return error_response(Errc::internal, e.what());
  }
}

std::string content_type_for(std::string_view ext) {
  static const std::map<std::string_view, std::string_view> kTypes = {
      {"mp4", "video/mp4"},        {"m4v", "video/mp4"},          {"webm", "video/webm"},
      {"mov", "video/quicktime"},  {"mkv", "video/x-matroska"},   {"avi", "video/x-msvideo"},
      {"jpg", "image/jpeg"},       {"jpeg", "image/jpeg"},        {"png", "image/png"},
      {"gif", "image/gif"},        {"webp", "image/webp"},        {"svg", "image/svg+xml"},
      {"bmp", "image/bmp"},        {"ico", "image/x-icon"},       {"mp3", "audio/mpeg"},
      {"ogg", "audio/ogg"},        {"oga", "audio/ogg"},          {"m4a", "audio/mp4"},
      {"wav", "audio/wav"},        {"css", "text/css"},           {"js", "text/javascript"},
      {"pdf", "application/pdf"},  {"json", "application/json"},  {"txt", "text/plain; charset=utf-8"},
      {"html", "text/html; charset=utf-8"}, {"htm", "text/html; charset=utf-8"},
      {"tgs", "application/x-tgsticker"},   {"zip", "application/zip"},
  };
  auto it = kTypes.find(ext);
  return std::string(it == kTypes.end() ? "application/octet-stream" : it->second);
}

}  // namespace tscdn

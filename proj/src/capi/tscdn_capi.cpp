#include "tscdn/tscdn.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "common/error.hpp"
#include "common/fsutil.hpp"
#include "frontdoor/api.hpp"
#include "frontdoor/engine.hpp"
#include "frontdoor/pipeline.hpp"
#include "frontdoor/server.hpp"

using nlohmann::json;
using namespace tscdn;

struct tscdn_engine {
  std::shared_ptr<const Engine> engine;
};

struct tscdn_server {
  std::unique_ptr<HttpServer> server;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

void put(char** out, const std::string& s) {
  if (out) *out = dup_string(s);
}

template <typename F>
tscdn_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return TSCDN_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<tscdn_status>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return TSCDN_E_INTERNAL;
  } catch (const std::filesystem::filesystem_error& e) {
    g_last_error = e.what();
    return TSCDN_E_IO;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TSCDN_E_INTERNAL;
  }
}

std::string require(const char* s, const char* what) {
  if (!s) throw Error(Errc::invalid_argument, std::string(what) + " must not be null");
  return s;
}

json parse_options(const char* text) {
  if (!text || !*text) return json::object();
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(Errc::invalid_argument, "options must be a JSON object");
  return j;
}

template <typename T>
T option(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  try {
    return j[key].get<T>();
  } catch (const json::exception&) {
    throw Error(Errc::invalid_argument, std::string("option '") + key + "' has the wrong type");
  }
}

FixedOffset zone_option(const json& j) {
  if (!j.contains("tz_offset")) return kDefaultExportOffset;
  auto z = FixedOffset::parse(option<std::string>(j, "tz_offset", ""));
  if (!z) throw Error(Errc::invalid_argument, "tz_offset must look like +03:30");
  return *z;
}

ScoringOptions scoring_options(const json& j) {
  ScoringOptions s;
  s.suffix_stemmer = option<bool>(j, "suffix_stemmer", false);
  if (j.contains("config_dir") && !j["config_dir"].is_null())
    s.config_dir = fsutil::utf8_path(option<std::string>(j, "config_dir", ""));
  return s;
}

void put_warnings(char** out, const Diagnostics& diag) { put(out, diag.to_json_lines()); }

ApiParams query_params(const json& j) {
  ApiParams p;
  for (const auto& [key, value] : j.items()) {
    if (value.is_null()) continue;
    if (value.is_string()) {
      p[key] = value.get<std::string>();
    } else if (value.is_boolean()) {
      p[key] = value.get<bool>() ? "true" : "false";
    } else if (value.is_number_unsigned() || value.is_number_integer()) {
      if (value.is_number_integer() && value.get<long long>() < 0)
        throw Error(Errc::invalid_argument, "'" + key + "' must be non-negative");
      p[key] = value.dump();
    } else if (value.is_array() && key == "channels") {
      std::string joined;
      for (const auto& c : value) {
        if (!c.is_string()) throw Error(Errc::invalid_argument, "channels must be strings");
        if (!joined.empty()) joined += ',';
        joined += c.get<std::string>();
      }
      p[key] = joined;
    } else {
      throw Error(Errc::invalid_argument, "unsupported value for '" + key + "'");
    }
  }
  return p;
}

}  // namespace

extern "C" {

const char* tscdn_version(void) { return "1.0.0"; }

const char* tscdn_status_name(tscdn_status status) {
  if (status == TSCDN_OK) return "ok";
  if (status < TSCDN_E_INVALID_ARGUMENT || status > TSCDN_E_INTERNAL) return "unknown";
  static thread_local std::string name;
  name = std::string(errc_name(static_cast<Errc>(status)));
  return name.c_str();
}

const char* tscdn_last_error(void) { return g_last_error.c_str(); }

void tscdn_free_string(char* s) { std::free(s); }

tscdn_status tscdn_ingest(const char* export_dir, const char* cdn_dir, const char* options_json, char** report_json,
                          char** warnings) {
  return guarded([&] {
    json o = parse_options(options_json);
    IngestOptions opts;
    opts.export_root = fsutil::utf8_path(require(export_dir, "export_dir"));
    opts.cdn_root = fsutil::utf8_path(require(cdn_dir, "cdn_dir"));
    opts.channel_slug = option<std::string>(o, "channel", "");
    opts.channel_name = option<std::string>(o, "name", "");
    if (o.contains("crawl_time")) {
      auto t = parse_iso(option<std::string>(o, "crawl_time", ""));
      if (!t) throw Error(Errc::invalid_argument, "crawl_time must be ISO-8601");
      opts.crawl_time = *t;
    }
    if (o.contains("archive_id")) opts.archive_id = option<std::string>(o, "archive_id", "");
    opts.zone = zone_option(o);
    opts.cdn_prefix = option<std::string>(o, "cdn_prefix", "cdn");
    std::string digest = option<std::string>(o, "digest", "md5");
    if (digest == "sha256") opts.store.digest = DigestAlgorithm::sha256;
    else if (digest != "md5") throw Error(Errc::invalid_argument, "digest must be md5 or sha256");
    Diagnostics diag;
    IngestReport r = ingest_export(opts, diag);
    put(report_json, to_json(r).dump());
    put_warnings(warnings, diag);
  });
}

tscdn_status tscdn_merge(const char* master_dir, const char* const* other_dirs, size_t count, char** report_json,
                         char** warnings) {
  return guarded([&] {
    std::vector<std::filesystem::path> others;
    if (count && !other_dirs) throw Error(Errc::invalid_argument, "other_dirs must not be null");
    for (size_t i = 0; i < count; ++i) others.push_back(fsutil::utf8_path(require(other_dirs[i], "other_dirs[i]")));
    Diagnostics diag;
    MergeReport r = merge_cdns(fsutil::utf8_path(require(master_dir, "master_dir")), others, diag);
    put(report_json, to_json(r).dump());
    put_warnings(warnings, diag);
  });
}

tscdn_status tscdn_build_index(const char* cdn_dir, const char* options_json, char** report_json, char** warnings) {
  return guarded([&] {
    json o = parse_options(options_json);
    IndexOptions opts;
    opts.scoring = scoring_options(o);
    if (option<bool>(o, "coalesce", false)) opts.coalesce = CoalesceConfig{option<double>(o, "tau", CoalesceConfig{}.tau)};
    Diagnostics diag;
    IndexReport r = build_index_files(fsutil::utf8_path(require(cdn_dir, "cdn_dir")), opts, diag);
    put(report_json, to_json(r).dump());
    put_warnings(warnings, diag);
  });
}

tscdn_status tscdn_export_json(const char* cdn_dir, const char* out_dir, char** report_json, char** warnings) {
  return guarded([&] {
    Diagnostics diag;
    ExportReport r = export_json(fsutil::utf8_path(require(cdn_dir, "cdn_dir")),
                                 fsutil::utf8_path(require(out_dir, "out_dir")), diag);
    put(report_json, to_json(r).dump());
    put_warnings(warnings, diag);
  });
}

tscdn_status tscdn_stats(const char* cdn_dir, char** stats_json) {
  return guarded([&] {
    std::filesystem::path root = fsutil::utf8_path(require(cdn_dir, "cdn_dir"));
    std::error_code ec;
    if (!std::filesystem::is_directory(root, ec))
      throw Error(Errc::not_found, "CDN directory not found: " + fsutil::path_utf8(root));
    put(stats_json, tscdn::stats_json(ContentStore::open(root)).dump());
  });
}

tscdn_status tscdn_verify(const char* cdn_dir, char** report_json, int* ok) {
  return guarded([&] {
    std::filesystem::path root = fsutil::utf8_path(require(cdn_dir, "cdn_dir"));
    std::error_code ec;
    if (!std::filesystem::is_directory(root, ec))
      throw Error(Errc::not_found, "CDN directory not found: " + fsutil::path_utf8(root));
    bool good = false;
    put(report_json, verify_json(root, good).dump());
    if (ok) *ok = good ? 1 : 0;
  });
}

tscdn_status tscdn_engine_open(const char* cdn_dir, const char* options_json, tscdn_engine** out) {
  return guarded([&] {
    if (!out) throw Error(Errc::invalid_argument, "out must not be null");
    *out = nullptr;
    json o = parse_options(options_json);
    EngineOptions opts;
    opts.cdn_root = fsutil::utf8_path(require(cdn_dir, "cdn_dir"));
    if (o.contains("suffix_stemmer") || o.contains("config_dir")) opts.scoring = scoring_options(o);
    std::string now = option<std::string>(o, "now", "horizon");
    if (now == "wall_clock") opts.now = NowPolicy::wall_clock;
    else if (now != "horizon") throw Error(Errc::invalid_argument, "now must be horizon or wall_clock");
    opts.zone = zone_option(o);
    auto handle = std::make_unique<tscdn_engine>();
    handle->engine = Engine::open(opts);
    *out = handle.release();
  });
}

void tscdn_engine_close(tscdn_engine* engine) { delete engine; }

tscdn_status tscdn_engine_query(const tscdn_engine* engine, const char* query_json, char** results_json) {
  return guarded([&] {
    if (!engine) throw Error(Errc::invalid_argument, "engine must not be null");
    json q = parse_options(require(query_json, "query_json").c_str());
    QuerySpec spec = search_spec(query_params(q));
    put(results_json, serialize_results(engine->engine->search(spec)));
  });
}

tscdn_status tscdn_engine_get(const tscdn_engine* engine, const char* target, int* http_status, char** body) {
  return guarded([&] {
    if (!engine) throw Error(Errc::invalid_argument, "engine must not be null");
    std::string t = require(target, "target");
    auto qmark = t.find('?');
    std::string path = t.substr(0, qmark);
    ApiResponse r;
    try {
      ApiParams params = qmark == std::string::npos ? ApiParams{} : parse_query_string(t.substr(qmark + 1));
      r = handle_api(*engine->engine, path, params);
    } catch (const Error& e) {
      r = error_response(e.code(), e.what());
    }
    if (http_status) *http_status = r.status;
    put(body, r.body);
  });
}

tscdn_status tscdn_server_start(const tscdn_engine* engine, const char* host, int port, const char* ui_dir,
                                tscdn_server** out, int* bound_port) {
  return guarded([&] {
    if (!engine || !out) throw Error(Errc::invalid_argument, "engine and out must not be null");
    *out = nullptr;
    ServeOptions opts;
    if (host) opts.host = host;
    opts.port = port;
    if (ui_dir) opts.ui_dir = fsutil::utf8_path(ui_dir);
    auto handle = std::make_unique<tscdn_server>();
    handle->server = std::make_unique<HttpServer>(engine->engine, opts);
    int bound = handle->server->start();
    if (bound_port) *bound_port = bound;
    *out = handle.release();
  });
}

void tscdn_server_stop(tscdn_server* server) { delete server; }

tscdn_status tscdn_serve(const char* cdn_dir, const char* host, int port, const char* ui_dir,
                         const char* options_json) {
  tscdn_engine* engine = nullptr;
  tscdn_status st = tscdn_engine_open(cdn_dir, options_json, &engine);
  if (st != TSCDN_OK) return st;
  std::unique_ptr<tscdn_engine> owned(engine);
  return guarded([&] {
    ServeOptions opts;
    if (host) opts.host = host;
    opts.port = port;
    if (ui_dir) opts.ui_dir = fsutil::utf8_path(ui_dir);
    HttpServer server(owned->engine, opts);
    server.run();
  });
}

}  // extern "C"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include <tscdn/tscdn.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kExports = fs::path(TSCDN_FIXTURES) / "exports";

struct Scratch {
  fs::path root;
  Scratch() {
    std::random_device rd;
    root = fs::temp_directory_path() / ("tscdn-capi-" + std::to_string(rd()));
    fs::create_directories(root);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(root, ec);
  }
  std::string operator/(const std::string& rel) const { return (root / rel).string(); }
};

// Takes ownership of a library string.
std::string take(char* s) {
  std::string out = s ? s : "";
  tscdn_free_string(s);
  return out;
}

json ingest(const std::string& exp, const std::string& cdn, const json& opts) {
  char* report = nullptr;
  char* warnings = nullptr;
  tscdn_status st = tscdn_ingest((kExports / exp).string().c_str(), cdn.c_str(), opts.dump().c_str(), &report, &warnings);
  REQUIRE_MESSAGE(st == TSCDN_OK, tscdn_last_error());
  take(warnings);
  return json::parse(take(report));
}

// Three fixture crawls ingested into one CDN.
struct Cdn {
  Scratch dir;
  std::string root = dir / "cdn";
  Cdn() {
    ingest("khabar-crawl1", root, {{"channel", "khabar"}, {"crawl_time", "2020-03-28T00:00:00Z"}});
    ingest("khabar-crawl2", root, {{"channel", "khabar"}, {"crawl_time", "2020-04-02T00:00:00Z"}});
    ingest("akhbar-crawl1", root, {{"channel", "akhbar"}, {"crawl_time", "2020-03-29T00:00:00Z"}});
  }
};

tscdn_engine* open(const std::string& root, const char* opts = nullptr) {
  tscdn_engine* e = nullptr;
  REQUIRE_MESSAGE(tscdn_engine_open(root.c_str(), opts, &e) == TSCDN_OK, tscdn_last_error());
  return e;
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(tscdn_version()) == "1.0.0");
  CHECK(std::string(tscdn_status_name(TSCDN_OK)) == "ok");
  CHECK(std::string(tscdn_status_name(TSCDN_E_INVALID_INTERVAL)) == "invalid_interval");
  CHECK(std::string(tscdn_status_name(TSCDN_E_EMPTY_QUERY)) == "empty_query");
  CHECK(std::string(tscdn_status_name(TSCDN_E_NOT_FOUND)) == "not_found");
  CHECK(std::string(tscdn_status_name(static_cast<tscdn_status>(99))) == "unknown");
  tscdn_free_string(nullptr);
}

TEST_CASE("failures set the thread's last error and success clears it") {
  tscdn_engine* e = reinterpret_cast<tscdn_engine*>(0x1);
  CHECK(tscdn_engine_open("/definitely/not/here", nullptr, &e) == TSCDN_E_NOT_FOUND);
  CHECK(e == nullptr);
  CHECK(std::string(tscdn_last_error()).size() > 0);
  std::string other_thread;
  std::thread([&] { other_thread = tscdn_last_error(); }).join();
  CHECK(other_thread.empty());
  CHECK(tscdn_status_name(TSCDN_OK) != nullptr);
  char* out = nullptr;
  CHECK(tscdn_engine_open(nullptr, nullptr, nullptr) == TSCDN_E_INVALID_ARGUMENT);
  CHECK(tscdn_stats("/definitely/not/here", &out) == TSCDN_E_NOT_FOUND);
  Scratch s;
  CHECK(tscdn_ingest((kExports / "khabar-crawl1").string().c_str(), (s / "cdn").c_str(), "{\"channel\":\"k\"",
                     &out, nullptr) == TSCDN_E_INVALID_ARGUMENT);
  CHECK(tscdn_ingest((kExports / "khabar-crawl1").string().c_str(), (s / "cdn").c_str(),
                     R"({"channel":"k","digest":"crc32"})", &out, nullptr) == TSCDN_E_INVALID_ARGUMENT);
  CHECK(tscdn_ingest((kExports / "khabar-crawl1").string().c_str(), (s / "cdn").c_str(),
                     R"({"channel":"k","crawl_time":"2020-03-28T00:00:00Z"})", &out, nullptr) == TSCDN_OK);
  CHECK(std::string(tscdn_last_error()).empty());
  take(out);
}

TEST_CASE("ingest, stats and verify through the C API") {
  Cdn cdn;
  char* stats = nullptr;
  REQUIRE(tscdn_stats(cdn.root.c_str(), &stats) == TSCDN_OK);
  json s = json::parse(take(stats));
  CHECK(s["per_archive"].size() == 3);

  char* report = nullptr;
  int ok = 0;
  REQUIRE(tscdn_verify(cdn.root.c_str(), &report, &ok) == TSCDN_OK);
  take(report);
  CHECK(ok == 1);

  for (const auto& e : fs::directory_iterator(fs::path(cdn.root) / "objects")) {
    std::ofstream(e.path(), std::ios::binary | std::ios::app) << "x";
    break;
  }
  REQUIRE(tscdn_verify(cdn.root.c_str(), &report, &ok) == TSCDN_OK);
  take(report);
  CHECK(ok == 0);
}

TEST_CASE("merge reports shared bytes") {
  Scratch s;
  ingest("khabar-crawl1", s / "a", {{"channel", "khabar"}, {"crawl_time", "2020-03-28T00:00:00Z"}});
  ingest("akhbar-crawl1", s / "b", {{"channel", "akhbar"}, {"crawl_time", "2020-03-29T00:00:00Z"}});
  std::string other = s / "b";
  const char* others[] = {other.c_str()};
  char* report = nullptr;
  REQUIRE(tscdn_merge((s / "a").c_str(), others, 1, &report, nullptr) == TSCDN_OK);
  json r = json::parse(take(report));
  CHECK(r["archives_merged"] == 1);
  CHECK(r["objects_deduplicated"].get<int>() >= 1);
  CHECK(tscdn_merge((s / "a").c_str(), nullptr, 1, &report, nullptr) == TSCDN_E_INVALID_ARGUMENT);
}

TEST_CASE("engine queries match the in-process API") {
  Cdn cdn;
  tscdn_engine* e = open(cdn.root);
  char* results = nullptr;
  REQUIRE(tscdn_engine_query(e, R"({"q":"flood","from":"2020-03-23","to":"2020-09-21","limit":10})", &results) ==
          TSCDN_OK);
  std::string direct = take(results);
  int status = 0;
  char* body = nullptr;
  REQUIRE(tscdn_engine_get(e, "/api/search?q=flood&from=2020-03-23&to=2020-09-21&limit=10", &status, &body) ==
          TSCDN_OK);
  CHECK(status == 200);
  CHECK(take(body) == direct);
  CHECK(json::parse(direct).is_array());
  CHECK_FALSE(json::parse(direct).empty());

  REQUIRE(tscdn_engine_query(e, R"({"q":"flood","channels":["akhbar"],"all_terms":true})", &results) == TSCDN_OK);
  for (const auto& hit : json::parse(take(results))) CHECK(hit["channel"] == "akhbar");

  CHECK(tscdn_engine_query(e, R"({"q":"flood","from":"2020-09-21","to":"2020-03-23"})", &results) ==
        TSCDN_E_INVALID_INTERVAL);
  CHECK(tscdn_engine_query(e, R"({"q":""})", &results) == TSCDN_E_EMPTY_QUERY);
  CHECK(tscdn_engine_query(e, R"({"q":"flood","limit":-1})", &results) == TSCDN_E_INVALID_ARGUMENT);
  CHECK(tscdn_engine_query(nullptr, R"({"q":"flood"})", &results) == TSCDN_E_INVALID_ARGUMENT);

  REQUIRE(tscdn_engine_get(e, "/api/search?q=flood&from=2020-09-21&to=2020-03-23", &status, &body) == TSCDN_OK);
  CHECK(status == 400);
  CHECK(json::parse(take(body))["error"]["code"] == "invalid_interval");
  REQUIRE(tscdn_engine_get(e, "/api/unknown", &status, &body) == TSCDN_OK);
  take(body);
  CHECK(status == 404);
  tscdn_engine_close(e);
}

TEST_CASE("index options round-trip through the C API") {
  Cdn cdn;
  char* report = nullptr;
  REQUIRE(tscdn_build_index(cdn.root.c_str(), R"({"coalesce":true,"tau":0.1})", &report, nullptr) == TSCDN_OK);
  json r = json::parse(take(report));
  CHECK(r["coalesced_entries"].is_number());
  CHECK(r["coalesced_entries"].get<int>() <= r["entries"].get<int>());
  CHECK(fs::exists(fs::path(cdn.root) / "index-coalesced.json"));
  tscdn_engine* e = open(cdn.root);
  char* results = nullptr;
  CHECK(tscdn_engine_query(e, R"({"q":"flood","coalesced":true})", &results) == TSCDN_OK);
  take(results);
  tscdn_engine_close(e);
  CHECK(tscdn_build_index(cdn.root.c_str(), R"({"coalesce":"yes"})", &report, nullptr) == TSCDN_E_INVALID_ARGUMENT);
}

TEST_CASE("engine open rejects bad options and missing indexes") {
  Cdn cdn;
  tscdn_engine* e = nullptr;
  CHECK(tscdn_engine_open(cdn.root.c_str(), R"({"now":"tomorrow"})", &e) == TSCDN_E_INVALID_ARGUMENT);
  CHECK(tscdn_engine_open(cdn.root.c_str(), R"({"tz_offset":"3.5"})", &e) == TSCDN_E_INVALID_ARGUMENT);
  fs::remove(fs::path(cdn.root) / "index.json");
  CHECK(tscdn_engine_open(cdn.root.c_str(), nullptr, &e) == TSCDN_E_NOT_FOUND);
  CHECK(e == nullptr);
}

TEST_CASE("JSON DB export through the C API") {
  Cdn cdn;
  Scratch out;
  char* report = nullptr;
  REQUIRE(tscdn_export_json(cdn.root.c_str(), out.root.string().c_str(), &report, nullptr) == TSCDN_OK);
  json r = json::parse(take(report));
  CHECK(r["channels"] == 2);
  CHECK(fs::exists(out.root / "khabar.json"));
  CHECK(fs::exists(out.root / "akhbar.json"));
}

TEST_CASE("the server started through the C API answers on its port") {
  Cdn cdn;
  tscdn_engine* e = open(cdn.root);
  tscdn_server* server = nullptr;
  int port = 0;
  REQUIRE(tscdn_server_start(e, "127.0.0.1", 0, nullptr, &server, &port) == TSCDN_OK);
  CHECK(port > 0);
  tscdn_server_stop(server);
  CHECK(tscdn_server_start(nullptr, "127.0.0.1", 0, nullptr, &server, &port) == TSCDN_E_INVALID_ARGUMENT);
  tscdn_engine_close(e);
}

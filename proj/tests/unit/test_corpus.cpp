#include <doctest.h>

#include <json.hpp>

#include "common/error.hpp"
#include "corpus/build.hpp"
#include "corpus/event.hpp"
#include "corpus/json_db.hpp"
#include "corpus/snapshot.hpp"
#include "frontdoor/pipeline.hpp"
#include "support/fixtures.hpp"

using namespace tscdn;
using namespace tscdn::testing;

namespace {

const fs::path kExports = fs::path(TSCDN_FIXTURES) / "exports";

SnapshotMessage message(const std::string& id, Instant date, const std::string& text) {
  SnapshotMessage m;
  m.id = id;
  m.date = date;
  m.date_raw = format_iso(date);
  m.text = text;
  return m;
}

Snapshot snapshot(const std::string& archive, Instant crawl, std::vector<SnapshotMessage> msgs) {
  return Snapshot{archive, "khabar", "Khabar", crawl, std::move(msgs)};
}

// Checks that a chain's intervals tile [t_1, now) without gaps or overlaps.
void check_tiling(const Corpus::VersionChain& chain) {
  REQUIRE_FALSE(chain.empty());
  for (std::size_t i = 0; i < chain.size(); ++i) {
    CHECK(chain[i].valid.begin == chain[i].timestamp);
    if (i + 1 < chain.size()) {
      REQUIRE(chain[i].valid.end.has_value());
      CHECK(*chain[i].valid.end == chain[i + 1].valid.begin);
      CHECK(chain[i].valid.begin < *chain[i].valid.end);
    } else {
      CHECK(chain[i].valid.is_open());
    }
  }
}

struct FixtureCdn {
  TempDir dir;
  FixtureCdn() {
    Diagnostics diag;
    auto ingest = [&](const char* exp, const char* slug, const char* name, Instant crawl) {
      IngestOptions o;
      o.export_root = kExports / exp;
      o.cdn_root = dir.path();
      o.channel_slug = slug;
      o.channel_name = name;
      o.crawl_time = crawl;
      ingest_export(o, diag);
    };
    ingest("khabar-crawl1", "khabar", "Khabar Fouri", make_instant(2020, 3, 28));
    ingest("khabar-crawl2", "khabar", "Khabar Fouri", make_instant(2020, 4, 2));
    ingest("akhbar-crawl1", "akhbar", "Akhbar Channel", make_instant(2020, 3, 29));
  }
};

}  // namespace

TEST_CASE("event ids print and parse") {
  EventId id{"khabar", "101"};
  CHECK(id.to_string() == "khabar:101");
  CHECK(EventId::parse("khabar:101") == id);
  CHECK(EventId::parse("a:b:c") == EventId{"a", "b:c"});
  CHECK_FALSE(EventId::parse("nocolon").has_value());
  CHECK_FALSE(EventId::parse(":x").has_value());
}

TEST_CASE("valid_interval follows the successor") {
  EventVersion a, b;
  a.timestamp = Instant{std::chrono::seconds{100}};
  b.timestamp = Instant{std::chrono::seconds{200}};
  auto closed = valid_interval(a, &b);
  CHECK(closed.begin == a.timestamp);
  CHECK(closed.end == b.timestamp);
  auto open = valid_interval(a, nullptr);
  CHECK(open.begin == a.timestamp);
  CHECK(open.is_open());
  EventVersion same = a;
  try {
    valid_interval(a, &same);
    FAIL("expected a model violation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::model_violation);
  }
}

TEST_CASE("open intervals intersect any window that ends after their start") {
  Interval open{Instant{std::chrono::seconds{100}}, std::nullopt};
  CHECK(open.intersects(Instant{std::chrono::seconds{500}}, Instant{std::chrono::seconds{600}}));
  CHECK_FALSE(open.intersects(Instant{std::chrono::seconds{0}}, Instant{std::chrono::seconds{99}}));
  Interval closed{Instant{std::chrono::seconds{100}}, Instant{std::chrono::seconds{200}}};
  CHECK_FALSE(closed.intersects(Instant{std::chrono::seconds{200}}, Instant{std::chrono::seconds{300}}));
  CHECK(closed.intersects(Instant{std::chrono::seconds{199}}, Instant{std::chrono::seconds{300}}));
}

TEST_CASE("one snapshot with three messages gives three single-version events") {
  Diagnostics diag;
  auto t = make_instant(2020, 3, 23);
  auto c = build_corpus({snapshot("a1", make_instant(2020, 3, 30),
                                  {message("1", t, "a"), message("2", t, "b"), message("3", t, "c")})},
                        diag);
  CHECK(c.event_count() == 3);
  CHECK(c.version_count() == 3);
  for (const auto& [id, chain] : c.events) CHECK(chain.size() == 1);
}

TEST_CASE("a changed message gains a version stamped with the later crawl") {
  Diagnostics diag;
  auto t = make_instant(2020, 3, 23, 5);
  auto crawl1 = make_instant(2020, 3, 28), crawl2 = make_instant(2020, 4, 2);
  auto c = build_corpus({snapshot("a2", crawl2, {message("1", t, "edited")}),
                         snapshot("a1", crawl1, {message("1", t, "original")})},
                        diag);
  const auto* chain = c.find(EventId{"khabar", "1"});
  REQUIRE(chain);
  REQUIRE(chain->size() == 2);
  CHECK((*chain)[0].text == "original");
  CHECK((*chain)[0].timestamp == t);
  CHECK((*chain)[1].text == "edited");
  CHECK((*chain)[1].timestamp == crawl2);
  check_tiling(*chain);
  CHECK(c.horizon() == crawl2);
}

TEST_CASE("identical content across crawls collapses") {
  Diagnostics diag;
  auto t = make_instant(2020, 3, 23);
  auto s1 = snapshot("a1", make_instant(2020, 3, 28), {message("1", t, "same"), message("2", t, "x")});
  auto once = build_corpus({s1}, diag);
  auto s2 = s1;
  s2.archive_id = "a2";
  s2.crawl_time = make_instant(2020, 4, 2);
  auto twice = build_corpus({s1, s2}, diag);
  CHECK(twice.version_count() == once.version_count());
  CHECK(twice.event_count() == once.event_count());
  auto dup = build_corpus({s1, s1}, diag);
  CHECK(dup.version_count() == once.version_count());
}

TEST_CASE("conflicting observations at one crawl keep the later one") {
  Diagnostics diag;
  auto t = make_instant(2020, 3, 23);
  auto crawl = make_instant(2020, 3, 28);
  auto c = build_corpus({snapshot("a1", crawl, {message("1", t, "first")}),
                         snapshot("a2", crawl, {message("1", t, "second")})},
                        diag);
  CHECK(c.find(EventId{"khabar", "1"})->front().text == "second");
  CHECK(diag.count("version_conflict") == 1);
}

TEST_CASE("messages without a date are excluded and counted") {
  Diagnostics diag;
  SnapshotMessage bad;
  bad.id = "9";
  bad.text = "undated";
  auto c = build_corpus({snapshot("a1", make_instant(2020, 3, 28), {bad, message("1", make_instant(2020, 3, 1), "x")})},
                        diag);
  CHECK(c.event_count() == 1);
  CHECK(c.excluded_messages == 1);
}

TEST_CASE("random chains tile their valid time") {
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    auto c = random_corpus(rng, {});
    std::size_t versions = 0;
    for (const auto& [id, chain] : c.events) {
      check_tiling(chain);
      for (std::size_t k = 1; k < chain.size(); ++k) CHECK(chain[k - 1].timestamp < chain[k].timestamp);
      versions += chain.size();
    }
    CHECK(versions >= c.event_count());
    CHECK(c.version_count() == versions);
  }
}

TEST_CASE("fixture exports build the expected chains") {
  FixtureCdn cdn;
  Diagnostics diag;
  auto c = load_corpus(cdn.dir.path(), diag);
  CHECK(c.channel_names.at("khabar") == "Khabar Fouri");
  CHECK(c.excluded_messages >= 1);
  const auto* edited = c.find(EventId{"khabar", "102"});
  REQUIRE(edited);
  REQUIRE(edited->size() == 2);
  CHECK((*edited)[0].timestamp == make_instant(2020, 3, 23, 5, 30));
  CHECK((*edited)[1].timestamp == make_instant(2020, 4, 2));
  CHECK((*edited)[1].text.find("until April") != std::string::npos);
  CHECK(c.find(EventId{"khabar", "101"})->size() == 1);
  CHECK(c.find(EventId{"khabar", "105"}) == nullptr);
  CHECK(c.find(EventId{"khabar", "107"})->size() == 1);
  CHECK(c.find(EventId{"akhbar", "11"}) != nullptr);
  std::size_t multi = 0;
  for (const auto& [id, chain] : c.events) {
    check_tiling(chain);
    multi += chain.size() > 1;
  }
  CHECK(multi >= 1);

  // The video shared under three names resolves to one hash everywhere.
  auto v1 = c.find(EventId{"khabar", "101"})->front().media;
  REQUIRE_FALSE(v1.empty());
  CHECK(v1[0].kind == MediaKind::video);
  CHECK(v1[0].ext == "mp4");
  bool shared = false;
  for (const auto& [id, chain] : c.events)
    if (id.channel == "akhbar")
      for (const auto& r : chain.back().media) shared = shared || r.hash == v1[0].hash;
  CHECK(shared);
}

TEST_CASE("JSON DB of an empty channel") {
  Corpus c;
  c.channel_names["empty"] = "Empty";
  auto doc = to_json_db(c, "empty");
  CHECK(doc["channel"] == "empty");
  CHECK(doc["messages"].is_array());
  CHECK(doc["messages"].empty());
  CHECK(corpus_from_json_db(nlohmann::json::parse(doc.dump())).same_content(c));
}

TEST_CASE("JSON DB entries carry every field") {
  Diagnostics diag;
  auto t = make_instant(2020, 3, 23, 4, 45);
  auto m1 = message("1", t, "with image");
  m1.views = 1200;
  m1.media.push_back(MediaRef{*ContentHash::from_hex("900150983cd24fb0d6963f7d28e17f72"), "png", MediaKind::image, 3});
  auto m2 = message("2", t + std::chrono::hours{1}, "forwarded");
  m2.forwarded_from = "Akhbar Channel";
  auto c = build_corpus({snapshot("a1", make_instant(2020, 3, 28), {m1, m2})}, diag);
  auto doc = to_json_db(c, "khabar");
  REQUIRE(doc["messages"].size() == 2);
  const auto& e = doc["messages"][0];
  CHECK(e["id"] == "1");
  CHECK(e["date_utc"] == "2020-03-23T04:45:00Z");
  CHECK(e["text"] == "with image");
  CHECK(e["views"] == 1200);
  CHECK(e["forwarded_from"].is_null());
  REQUIRE(e["media"].size() == 1);
  CHECK(e["media"][0]["hash"] == "900150983cd24fb0d6963f7d28e17f72");
  CHECK(e["media"][0]["ext"] == "png");
  CHECK(e["media"][0]["kind"] == "image");
  CHECK(e["media"][0]["bytes"] == 3);
  CHECK(doc["messages"][1]["forwarded_from"] == "Akhbar Channel");
  CHECK(doc["messages"][1]["views"].is_null());
}

TEST_CASE("JSON DB export and import round-trip the fixtures") {
  FixtureCdn cdn;
  Diagnostics diag;
  auto corpus = load_corpus(cdn.dir.path(), diag);
  TempDir out;
  export_json_db(corpus, out.path());
  CHECK(fs::exists(out / "khabar.json"));
  CHECK(fs::exists(out / "akhbar.json"));
  auto back = import_json_db_dir(out.path());
  CHECK(back.same_content(corpus));
  auto khabar = import_json_db(out / "khabar.json");
  CHECK(khabar.event_count() + import_json_db(out / "akhbar.json").event_count() == corpus.event_count());
  // Exporting the imported corpus reproduces the same bytes.
  TempDir again;
  export_json_db(back, again.path());
  CHECK(slurp(again / "khabar.json") == slurp(out / "khabar.json"));
}

TEST_CASE("JSON DB round-trips random corpora") {
  Rng rng(11);
  for (int i = 0; i < 10; ++i) {
    auto c = random_corpus(rng, {});
    Corpus back;
    for (const auto& [slug, name] : c.channel_names) {
      auto part = corpus_from_json_db(nlohmann::json::parse(to_json_db(c, slug).dump()));
      back.events.merge(part.events);
      back.channel_names.merge(part.channel_names);
    }
    CHECK(back.same_content(c));
  }
}

TEST_CASE("JSON DB rejects unknown schema versions by number") {
  auto doc = nlohmann::json::parse(R"({"schema":7,"channel":"x","channel_name":"X","messages":[]})");
  try {
    corpus_from_json_db(doc);
    FAIL("expected a schema error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::schema);
    CHECK(std::string(e.what()).find("7") != std::string::npos);
  }
}

TEST_CASE("JSON DB errors name the offending pointer") {
  auto doc = nlohmann::json::parse(
      R"({"schema":1,"channel":"x","channel_name":"X","messages":[{"id":"1","date_utc":"nope","text":"","views":null,"forwarded_from":null,"media":[]}]})");
  try {
    corpus_from_json_db(doc);
    FAIL("expected a schema error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::schema);
    CHECK(std::string(e.what()).find("/messages/0/date_utc") != std::string::npos);
  }
}

TEST_CASE("a hand-written minimal JSON DB file") {
  TempDir dir;
  write_file(dir / "mini.json", R"({
    "schema": 1,
    "channel": "mini",
    "channel_name": "Mini",
    "messages": [
      {"id": "1", "date_utc": "2020-03-23T04:45:00Z", "text": "hello", "views": null,
       "forwarded_from": null, "media": []}
    ]
  })");
  auto c = import_json_db(dir / "mini.json");
  REQUIRE(c.event_count() == 1);
  const auto& v = c.events.begin()->second.front();
  CHECK(v.event == EventId{"mini", "1"});
  CHECK(v.timestamp == make_instant(2020, 3, 23, 4, 45));
  CHECK(v.text == "hello");
  CHECK(v.valid.is_open());
}

TEST_CASE("snapshots round-trip through JSON") {
  auto s = snapshot("a1", make_instant(2020, 3, 28), {message("1", make_instant(2020, 3, 1), "x")});
  s.messages[0].views = 5;
  SnapshotMessage undated;
  undated.id = "2";
  undated.date_raw = "bad";
  s.messages.push_back(undated);
  CHECK(snapshot_from_json(nlohmann::json::parse(to_json(s).dump())) == s);
  TempDir dir;
  save_snapshot(dir.path(), s);
  CHECK(load_snapshot(snapshot_path(dir.path(), "a1")) == s);
  CHECK(load_snapshots(dir.path()).size() == 1);
}

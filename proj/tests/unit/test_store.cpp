#include <doctest.h>

#include <regex>
#include <set>

#include <json.hpp>

#include "common/error.hpp"
#include "ingest/links.hpp"
#include "store/content_store.hpp"
#include "store/digest.hpp"
#include "store/integrity.hpp"
#include "store/merge.hpp"
#include "store/rewrite.hpp"
#include "store/stats.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace tscdn;
using namespace tscdn::testing;

namespace {

const Instant kSeen = make_instant(2020, 4, 1);

std::set<std::pair<ObjectKey, std::uint64_t>> object_set(const ContentStore& s) {
  std::set<std::pair<ObjectKey, std::uint64_t>> out;
  for (const auto& [k, o] : s.objects()) out.insert({k, o.size_bytes});
  return out;
}

std::string blob(char c, std::size_t n) { return std::string(n, c); }

}  // namespace

TEST_CASE("MD5 digests match the RFC vectors and md5sum") {
  CHECK(hash_content("").hex() == "d41d8cd98f00b204e9800998ecf8427e");
  CHECK(hash_content("abc").hex() == "900150983cd24fb0d6963f7d28e17f72");
  for (std::string s : {std::string(""), std::string("abc"), std::string("message digest"), blob('\0', 1000),
                        std::string("فیلم")})
    CHECK(hash_content(s).hex() == md5_oracle(s));
}

TEST_CASE("SHA-256 is available as an alternative digest") {
  CHECK(hash_content("abc", DigestAlgorithm::sha256).hex() ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("content hashes ignore file names and parse strictly") {
  CHECK(hash_content("same") == hash_content("same"));
  CHECK(ContentHash::from_hex("d41d8cd98f00b204e9800998ecf8427e").has_value());
  CHECK_FALSE(ContentHash::from_hex("D41D8CD98F00B204E9800998ECF8427E").has_value());
  CHECK_FALSE(ContentHash::from_hex("d41d8").has_value());
  CHECK(is_stored_name("d41d8cd98f00b204e9800998ecf8427e.mp4"));
  CHECK(is_stored_name("d41d8cd98f00b204e9800998ecf8427e"));
  CHECK_FALSE(is_stored_name("../d41d8cd98f00b204e9800998ecf8427e.mp4"));
  CHECK_FALSE(is_stored_name("x.mp4"));
}

TEST_CASE("identical bytes under different names become one object") {
  TempDir dir;
  auto store = ContentStore::open(dir.path());
  std::string video = blob('v', 4096);
  auto a = store.ingest_file("a1", "video_files/7.mp4", video, kSeen);
  auto b = store.ingest_file("a2", "video_files/فیلم.mp4", video, kSeen);
  CHECK(a.hash == b.hash);
  REQUIRE(store.objects().size() == 1);
  const auto& obj = store.objects().begin()->second;
  CHECK(obj.source_names == std::set<std::string>{"7.mp4", "فیلم.mp4"});
  CHECK(obj.size_bytes == 4096);
  CHECK(fs::file_size(store.objects_dir() / obj.filename()) == 4096);
  CHECK(store.dictionaries().at("a1").at("video_files/7.mp4") == obj.filename());
  CHECK(store.dictionaries().at("a2").at("video_files/فیلم.mp4") == obj.filename());
}

TEST_CASE("ingesting the same file twice leaves the store unchanged") {
  TempDir dir;
  auto store = ContentStore::open(dir.path());
  store.ingest_file("a", "x.png", "png-bytes", kSeen);
  auto before = object_set(store);
  store.ingest_file("a", "x.png", "png-bytes", kSeen);
  CHECK(object_set(store) == before);
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(store.objects_dir())) ++files;
  CHECK(files == 1);
}

TEST_CASE("ten files with three duplicates store seven objects") {
  TempDir dir;
  auto store = ContentStore::open(dir.path());
  std::vector<std::pair<std::string, std::string>> files;
  for (int i = 0; i < 7; ++i) files.push_back({"f" + std::to_string(i) + ".jpg", "payload-" + std::to_string(i)});
  files.push_back({"dup0.jpg", "payload-0"});
  files.push_back({"dup3.jpg", "payload-3"});
  files.push_back({"dup6.jpg", "payload-6"});
  for (const auto& [name, bytes] : files) store.ingest_file("a", name, bytes, kSeen);

  // Pairwise byte comparison: a file is new unless an earlier one has the
  // same bytes and extension.
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    bool seen = false;
    for (std::size_t j = 0; j < i; ++j)
      seen = seen || (files[j].second == files[i].second &&
                      extension_of(files[j].first) == extension_of(files[i].first));
    distinct += !seen;
  }
  CHECK(distinct == 7);
  CHECK(store.objects().size() == distinct);
}

TEST_CASE("same bytes with different extensions are distinct objects") {
  TempDir dir;
  auto store = ContentStore::open(dir.path());
  store.ingest_file("a", "x.jpg", "bytes", kSeen);
  store.ingest_file("a", "x.jpeg", "bytes", kSeen);
  CHECK(store.objects().size() == 2);
}

TEST_CASE("stored names are content-addressed for any input name") {
  TempDir dir;
  auto store = ContentStore::open(dir.path());
  store.ingest_file("a", "فیلم.MP4", "1", kSeen);
  store.ingest_file("a", "mixed نام name.Jpg", "2", kSeen);
  store.ingest_file("a", "noext", "3", kSeen);
  store.ingest_file("a", "%D8%AA.png", "4", kSeen);
  std::regex pattern("[0-9a-f]{32}(\\.[a-z0-9]+)?");
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(store.objects_dir())) {
    CHECK(std::regex_match(e.path().filename().string(), pattern));
    ++n;
  }
  CHECK(n == 4);
}

TEST_CASE("the catalog survives reopening") {
  TempDir dir;
  {
    auto store = ContentStore::open(dir.path());
    store.ingest_file("a", "x.png", "png", kSeen);
    store.record_missing("a", "gone.jpg");
    store.save_index();
  }
  auto again = ContentStore::open(dir.path());
  REQUIRE(again.objects().size() == 1);
  CHECK(again.objects().begin()->second.first_seen == kSeen);
  CHECK_FALSE(again.dictionaries().at("a").at("gone.jpg").has_value());
  auto name = again.objects().begin()->second.filename();
  CHECK(again.read_object(name) == "png");
  CHECK(again.find(name) != nullptr);
  CHECK(again.find("nope") == nullptr);
}

TEST_CASE("rewrite substitutes mapped links") {
  ArchiveDictionary dict{{"7.mp4", "aaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaa.mp4"}};
  Diagnostics diag;
  auto r = rewrite_references(R"(<video src="7.mp4"></video>)", dict, {}, diag);
  CHECK(r.html == R"(<video src="cdn/aaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaa.mp4"></video>)");
  CHECK(r.rewritten == 1);
  CHECK(diag.empty());
}

TEST_CASE("rewrite leaves documents without local links untouched") {
  Diagnostics diag;
  std::string html = R"(<p>hello <a href="https://x.org/a.mp4">x</a></p>)";
  CHECK(rewrite_references(html, {}, {}, diag).html == html);
  CHECK(diag.empty());
}

TEST_CASE("rewrite with three mapped links and one missing") {
  ArchiveDictionary dict{{"a.png", "11111111111111111111111111111111.png"},
                         {"v/b.mp4", "22222222222222222222222222222222.mp4"},
                         {"c.css", "33333333333333333333333333333333.css"}};
  std::string html = R"(<link href="c.css"><img src="a.png"><video src="v/b.mp4"></video><img src="gone.jpg">)";
  Diagnostics diag;
  auto r = rewrite_references(html, dict, {}, diag);
  CHECK(r.rewritten == 3);
  CHECK(r.unchanged == 1);
  CHECK(diag.warnings().size() == 1);
  CHECK(r.html ==
        R"(<link href="cdn/33333333333333333333333333333333.css"><img src="cdn/11111111111111111111111111111111.png">)"
        R"(<video src="cdn/22222222222222222222222222222222.mp4"></video><img src="gone.jpg">)");
}

TEST_CASE("rewrite maps percent-encoded and relative forms through resolution") {
  ArchiveDictionary dict{{"photos/تصویر.png", "44444444444444444444444444444444.png"}};
  RewriteOptions opts;
  opts.base_dir = "pages";
  opts.cdn_prefix = "../cdn";
  Diagnostics diag;
  auto r = rewrite_references(R"(<img src="../photos/%D8%AA%D8%B5%D9%88%DB%8C%D8%B1.png">)", dict, opts, diag);
  CHECK(r.html == R"(<img src="../cdn/44444444444444444444444444444444.png">)");
}

TEST_CASE("rewrite is idempotent") {
  ArchiveDictionary dict{{"a.png", "11111111111111111111111111111111.png"}, {"b.jpg", std::nullopt}};
  std::string html = R"(<img src="a.png"><img src="b.jpg"><a href="next.html">n</a>)";
  Diagnostics diag;
  auto once = rewrite_references(html, dict, {}, diag);
  auto twice = rewrite_references(once.html, dict, {}, diag);
  CHECK(once.html == twice.html);
  CHECK(twice.rewritten == 0);
}

TEST_CASE("rewritten archives have no dangling cdn links") {
  TempDir dir;
  auto store = ContentStore::open(dir.path());
  std::vector<std::string> names = {"a.png", "b.mp4", "c.css", "d.png"};
  ArchiveDictionary dict;
  for (std::size_t i = 0; i < names.size(); ++i)
    dict[names[i]] = store.ingest_file("arc", names[i], "bytes" + std::to_string(i % 3), kSeen).filename();
  std::string html;
  for (const auto& n : names) html += "<img src=\"" + n + "\">";
  Diagnostics diag;
  auto out = rewrite_references(html, dict, {}, diag).html;
  std::size_t checked = 0;
  for (const auto& l : extract_links(out)) {
    REQUIRE(l.resolved_path.rfind("cdn/", 0) == 0);
    CHECK(store.find(l.resolved_path.substr(4)) != nullptr);
    ++checked;
  }
  CHECK(checked == names.size());
}

TEST_CASE("merging a store with a copy of itself adds nothing") {
  TempDir a, b;
  auto s = ContentStore::open(a.path());
  s.ingest_file("x", "1.mp4", "video", kSeen);
  s.ingest_file("x", "2.png", "image", kSeen);
  s.save_index();
  fs::copy(a.path(), b.path(), fs::copy_options::recursive | fs::copy_options::overwrite_existing);
  auto before = object_set(s);
  auto copy = ContentStore::open(b.path());
  Diagnostics diag;
  auto report = merge_cdn(s, copy, diag);
  CHECK(report.objects_added == 0);
  CHECK(report.objects_deduplicated == 2);
  CHECK(object_set(s) == before);
}

TEST_CASE("merging two archives that share one video") {
  TempDir a, b;
  auto sa = ContentStore::open(a.path());
  auto sb = ContentStore::open(b.path());
  std::string video = blob('v', 5000);
  sa.ingest_file("A", "7.mp4", video, kSeen);
  sa.ingest_file("A", "p.jpg", "photo-a", kSeen);
  sb.ingest_file("B", "فیلم.mp4", video, kSeen);
  sb.ingest_file("B", "q.jpg", "photo-b", kSeen);
  sb.ingest_file("B", "r.css", "css-b", kSeen);
  auto ua = object_set(sa), ub = object_set(sb);
  std::set<std::pair<ObjectKey, std::uint64_t>> oracle = ua;
  oracle.insert(ub.begin(), ub.end());
  Diagnostics diag;
  auto report = merge_cdn(sa, sb, diag);
  CHECK(sa.objects().size() == ua.size() + ub.size() - 1);
  CHECK(object_set(sa) == oracle);
  CHECK(report.bytes_saved == 5000);
  CHECK(report.objects_added == 2);
  CHECK(report.objects_deduplicated == 1);
  CHECK(sa.dictionaries().size() == 2);
  for (const auto& [k, o] : sa.objects()) CHECK(fs::exists(sa.objects_dir() / o.filename()));
  auto reopened = ContentStore::open(a.path());
  CHECK(object_set(reopened) == oracle);
}

TEST_CASE("merge is associative on object sets") {
  TempDir a, b, c, x, y, z;
  {
    auto sa = ContentStore::open(a.path());
    auto sb = ContentStore::open(b.path());
    auto sc = ContentStore::open(c.path());
    sa.ingest_file("A", "1.mp4", "one", kSeen);
    sa.ingest_file("A", "2.jpg", "two", kSeen);
    sb.ingest_file("B", "2.jpg", "two", kSeen);
    sb.ingest_file("B", "3.css", "three", kSeen);
    sc.ingest_file("C", "3.css", "three", kSeen);
    sc.ingest_file("C", "1.mp4", "one", kSeen);
    sc.ingest_file("C", "4.js", "four", kSeen);
    sa.save_index();
    sb.save_index();
    sc.save_index();
  }
  auto copy = [](const fs::path& from, const fs::path& to) {
    fs::copy(from, to, fs::copy_options::recursive | fs::copy_options::overwrite_existing);
  };
  Diagnostics diag;
  // (A + B) + C
  copy(a.path(), x.path());
  auto left = ContentStore::open(x.path());
  merge_cdn(left, ContentStore::open(b.path()), diag);
  merge_cdn(left, ContentStore::open(c.path()), diag);
  // A + (B + C)
  copy(b.path(), y.path());
  {
    auto bc = ContentStore::open(y.path());
    merge_cdn(bc, ContentStore::open(c.path()), diag);
  }
  copy(a.path(), z.path());
  auto right = ContentStore::open(z.path());
  merge_cdn(right, ContentStore::open(y.path()), diag);
  CHECK(object_set(left) == object_set(right));
  CHECK(left.objects().size() == 4);
  CHECK(left.dictionaries() == right.dictionaries());
}

TEST_CASE("merge rejects a shared key with different sizes and keeps the master index") {
  TempDir a, b;
  auto sa = ContentStore::open(a.path());
  sa.ingest_file("A", "1.mp4", "one", kSeen);
  sa.save_index();
  {
    auto sb = ContentStore::open(b.path());
    sb.ingest_file("B", "1.mp4", "one", kSeen);
    sb.ingest_file("B", "2.mp4", "two", kSeen);
    sb.save_index();
  }
  auto j = nlohmann::json::parse(slurp(b / "cdn-index.json"));
  for (auto& o : j["objects"])
    if (o["hash"] == hash_content("one").hex()) o["size"] = 999;
  write_file(b / "cdn-index.json", j.dump());
  auto before = slurp(a / "cdn-index.json");
  Diagnostics diag;
  try {
    merge_cdn(sa, ContentStore::open(b.path()), diag);
    FAIL("expected an integrity error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::integrity);
  }
  CHECK(slurp(a / "cdn-index.json") == before);
}

TEST_CASE("decrease percentages are truncated to one decimal") {
  const std::uint64_t GB = 1000000000ULL;
  CHECK(decrease_percentage_one_decimal(795 * GB / 10, 478 * GB / 10) == 39.8);
  CHECK(decrease_percentage_one_decimal(4 * GB, 36 * GB / 10) == 10.0);
  CHECK(decrease_percentage_one_decimal(26 * GB / 10, 25 * GB / 10) == 3.8);
  CHECK(decrease_percentage_one_decimal(7 * GB, 7 * GB) == 0.0);
  CHECK(decrease_percentage_one_decimal(0, 0) == 0.0);
  CHECK(decrease_percentage(795, 478) == doctest::Approx(100.0 * 317 / 795));
}

TEST_CASE("compute_stats conserves items and bytes per class") {
  std::vector<InventoryItem> before = {{MediaKind::video, 100}, {MediaKind::video, 100}, {MediaKind::image, 40},
                                       {MediaKind::css, 5},     {MediaKind::js, 5},      {MediaKind::other, 1}};
  std::vector<InventoryItem> after = {{MediaKind::video, 100}, {MediaKind::image, 40}, {MediaKind::css, 5},
                                      {MediaKind::js, 5},      {MediaKind::other, 1}};
  auto s = compute_stats(before, after);
  const auto& v = s.at(StatsClass::video);
  CHECK(v.items_before == 2);
  CHECK(v.items_after == 1);
  CHECK(v.bytes_before == 200);
  CHECK(v.bytes_after == 100);
  CHECK(v.decrease_pct == doctest::Approx(50.0));
  CHECK(s.at(StatsClass::css_js).items_before == 2);
  CHECK(s.at(StatsClass::image).decrease_pct == 0.0);
  CHECK(s.total.bytes_before == 251);
  CHECK(s.total.bytes_after == 151);
  CHECK(s.total.decrease_pct_reported() == 39.8);
  auto empty = compute_stats({}, {});
  CHECK(empty.total.decrease_pct == 0.0);
}

TEST_CASE("store inventories conserve bytes") {
  TempDir dir;
  auto store = ContentStore::open(dir.path());
  store.ingest_file("A", "1.mp4", blob('a', 300), kSeen);
  store.ingest_file("A", "2.mp4", blob('a', 300), kSeen);
  store.ingest_file("B", "3.mp4", blob('a', 300), kSeen);
  store.ingest_file("B", "4.png", blob('b', 50), kSeen);
  auto before = inventory_before(store);
  auto after = inventory_after(store);
  std::uint64_t bb = 0, ba = 0;
  for (const auto& i : before) bb += i.size_bytes;
  for (const auto& i : after) ba += i.size_bytes;
  CHECK(before.size() == 4);
  CHECK(after.size() == 2);
  CHECK(bb == 950);
  CHECK(ba == 350);
  CHECK(ba <= bb);
  CHECK(inventory_before(store, "B").size() == 2);
  CHECK(inventory_after(store, "B").size() == 2);
}

TEST_CASE("verify_integrity reports corrupted objects") {
  TempDir dir;
  auto store = ContentStore::open(dir.path());
  CHECK(verify_integrity(store).ok());
  CHECK(verify_integrity(store).checked == 0);
  auto a = store.ingest_file("A", "1.mp4", "video bytes", kSeen);
  store.ingest_file("A", "2.png", "image bytes", kSeen);
  auto fresh = verify_integrity(store);
  CHECK(fresh.ok());
  CHECK(fresh.checked == 2);

  auto path = store.objects_dir() / a.filename();
  std::string bytes = slurp(path);
  bytes[0] ^= 0x01;
  write_file(path, bytes);
  auto report = verify_integrity(store);
  REQUIRE(report.issues.size() == 1);
  CHECK(report.issues[0].name == a.filename());
  CHECK(report.issues[0].problem == "digest_mismatch");

  write_file(store.objects_dir() / "stray.bin", "x");
  CHECK(verify_integrity(store).issues.size() == 2);
}

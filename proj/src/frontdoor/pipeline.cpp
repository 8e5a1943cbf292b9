#include "frontdoor/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "common/error.hpp"
#include "common/fsutil.hpp"
#include "corpus/build.hpp"
#include "corpus/json_db.hpp"
#include "corpus/snapshot.hpp"
#include "index/build.hpp"
#include "index/coalesce.hpp"
#include "index/persist.hpp"
#include "scoring/tf_ief.hpp"
#include "store/integrity.hpp"
#include "store/rewrite.hpp"
#include "store/stats.hpp"

namespace tscdn {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string parent_of(std::string_view rel) {
  auto slash = rel.rfind('/');
  return slash == std::string_view::npos ? std::string() : std::string(rel.substr(0, slash));
}

bool is_page_link(const LocalLink& link, const std::set<std::string>& page_extensions) {
  return page_extensions.count(extension_of(link.resolved_path)) > 0;
}

std::optional<std::string> read_linked_file(const fs::path& root, const std::string& rel) {
  fs::path p = root / fsutil::utf8_path(rel);
  std::error_code ec;
  if (!fs::is_regular_file(p, ec)) return std::nullopt;
  return fsutil::read_file(p);
}

json options_json(const IndexOptions& o) {
  json j = {{"schema", 1}, {"suffix_stemmer", o.scoring.suffix_stemmer}};
  j["config_dir"] = o.scoring.config_dir ? json(fsutil::path_utf8(*o.scoring.config_dir)) : json(nullptr);
  j["coalesce"] = o.coalesce ? json{{"tau", o.coalesce->tau}} : json(nullptr);
  return j;
}

// Copies files below `from` into `to`, keeping files already present.
void copy_tree_missing(const fs::path& from, const fs::path& to) {
  std::error_code ec;
  if (!fs::is_directory(from, ec)) return;
  for (const auto& entry : fs::recursive_directory_iterator(from)) {
    if (!entry.is_regular_file()) continue;
    fs::path target = to / fs::relative(entry.path(), from);
    if (fs::exists(target)) continue;
    fs::create_directories(target.parent_path());
    fs::copy_file(entry.path(), target);
  }
}

}  // namespace

bool is_valid_slug(std::string_view slug) {
  if (slug.empty()) return false;
  return std::all_of(slug.begin(), slug.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '-' || c == '_' || c == '.';
  });
}

std::string default_archive_id(const std::string& slug, Instant crawl_time) {
  std::string iso = format_iso(crawl_time);  // YYYY-MM-DDTHH:MM:SSZ
  std::string compact;
  for (char c : iso)
    if (c != '-' && c != ':') compact += c;
  return slug + "-" + compact;
}

Corpus load_corpus(const fs::path& cdn_root, Diagnostics& diag) {
  return build_corpus(load_snapshots(cdn_root), diag);
}

IndexOptions read_index_options(const fs::path& cdn_root) {
  IndexOptions o;
  auto text = fsutil::read_file(CdnLayout{cdn_root}.index_config());
  if (!text) return o;
  json j = json::parse(*text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(Errc::schema, "index-config.json is not a JSON object");
  o.scoring.suffix_stemmer = j.value("suffix_stemmer", false);
  if (j.contains("config_dir") && j["config_dir"].is_string())
    o.scoring.config_dir = fsutil::utf8_path(j["config_dir"].get<std::string>());
  if (j.contains("coalesce") && j["coalesce"].is_object())
    o.coalesce = CoalesceConfig{j["coalesce"].value("tau", CoalesceConfig{}.tau)};
  return o;
}

IndexReport build_index_files(const fs::path& cdn_root, const IndexOptions& options, Diagnostics& diag) {
  if (options.coalesce && options.coalesce->tau < 0)
    throw Error(Errc::invalid_argument, "coalescing tolerance must be non-negative");
  CdnLayout layout{cdn_root};
  Corpus corpus = load_corpus(cdn_root, diag);
  ScoringConfig config = load_scoring_config(options.scoring);
  CorpusTermStats stats = build_term_stats(corpus, config.pipeline);
  InvertedIndex index = build_index(corpus, stats, config.pipeline);

  IndexReport report;
  report.events = corpus.event_count();
  report.versions = corpus.version_count();
  report.terms = index.dictionary.size();
  report.entries = index.entry_count();
  report.built_at = index.built_at;

  save_index(index, layout.index());
  std::error_code ec;
  if (options.coalesce) {
    InvertedIndex coalesced = coalesce_index(index, *options.coalesce);
    report.coalesced_entries = coalesced.entry_count();
    save_index(coalesced, layout.coalesced_index());
  } else {
    fs::remove(layout.coalesced_index(), ec);
  }
  fsutil::atomic_write(layout.index_config(), options_json(options).dump(2) + "\n");
  return report;
}

IngestReport ingest_export(const IngestOptions& options, Diagnostics& diag) {
  if (!is_valid_slug(options.channel_slug))
    throw Error(Errc::invalid_argument, "channel slug must be non-empty ASCII letters, digits, '-', '_' or '.'");
  std::error_code ec;
  if (!fs::is_directory(options.export_root, ec))
    throw Error(Errc::io, "export directory not found: " + fsutil::path_utf8(options.export_root));

  SourceMeta source;
  source.channel_slug = options.channel_slug;
  source.channel_name = options.channel_name.empty() ? options.channel_slug : options.channel_name;
  source.export_root = options.export_root;
  source.crawl_time = options.crawl_time.value_or(now_utc());

  IngestReport report;
  report.archive_id = options.archive_id.value_or(default_archive_id(source.channel_slug, source.crawl_time));
  if (!is_valid_slug(report.archive_id))
    throw Error(Errc::invalid_argument, "archive id must be ASCII letters, digits, '-', '_' or '.'");

  ContentStore store = ContentStore::open(options.cdn_root, options.store);
  CdnLayout layout{options.cdn_root};
  if (store.dictionaries().count(report.archive_id) || fs::exists(snapshot_path(layout.root, report.archive_id)))
    throw Error(Errc::invalid_argument, "archive " + report.archive_id + " is already in this CDN");

  RewriteOptions rewrite_opts;
  rewrite_opts.cdn_prefix = options.cdn_prefix;
  ParseOptions parse_opts{options.profile, options.zone};

  std::vector<ExportPage> pages = scan_export(options.export_root, diag);
  report.pages = pages.size();

  Snapshot snapshot;
  snapshot.archive_id = report.archive_id;
  snapshot.channel_slug = source.channel_slug;
  snapshot.channel_name = source.channel_name;
  snapshot.crawl_time = source.crawl_time;

  std::vector<std::vector<RawMessage>> parsed;
  parsed.reserve(pages.size());
  std::set<std::string> handled;
  for (const auto& page : pages) {
    parsed.push_back(parse_export(page.bytes, source, page.relative_path, parse_opts, diag));
    for (const auto& link : extract_links(page.bytes, parent_of(page.relative_path))) {
      if (is_page_link(link, rewrite_opts.page_extensions)) continue;
      ++report.links;
      if (!handled.insert(link.resolved_path).second) continue;
      auto bytes = read_linked_file(options.export_root, link.resolved_path);
      if (!bytes) {
        store.record_missing(report.archive_id, link.resolved_path);
        diag.warn("missing_media", "linked file is absent from the export", link.resolved_path);
        ++report.missing;
        continue;
      }
      std::size_t before = store.objects().size();
      store.ingest_file(report.archive_id, link.resolved_path, *bytes, source.crawl_time);
      ++report.files_ingested;
      report.bytes_read += bytes->size();
      if (store.objects().size() > before) {
        ++report.objects_added;
        report.bytes_added += bytes->size();
      } else {
        ++report.objects_deduplicated;
      }
    }
  }

  const ArchiveDictionary empty_dict;
  auto dict_it = store.dictionaries().find(report.archive_id);
  const ArchiveDictionary& dict = dict_it == store.dictionaries().end() ? empty_dict : dict_it->second;

  for (std::size_t i = 0; i < pages.size(); ++i) {
    const auto& page = pages[i];
    RewriteOptions opts = rewrite_opts;
    opts.base_dir = parent_of(page.relative_path);
    Diagnostics page_diag;
    RewriteResult rewritten = rewrite_references(page.bytes, dict, opts, page_diag);
    // Missing files were already reported once per path above.
    for (const auto& w : page_diag.warnings())
      if (w.code != "missing_media") diag.warn(w.code, w.message, page.relative_path + ": " + w.path);
    report.references_rewritten += rewritten.rewritten;
    fsutil::atomic_write(layout.rewritten(report.archive_id) / fsutil::utf8_path(page.relative_path), rewritten.html);

    for (auto& msg : parsed[i]) {
      ++report.messages;
      if (!msg.timestamp) ++report.invalid_timestamps;
      SnapshotMessage sm;
      sm.ordinal = msg.source_ordinal;
      sm.page = page.relative_path;
      sm.id = msg.message_id;
      sm.date = msg.timestamp;
      sm.date_raw = msg.timestamp_raw;
      sm.text = std::move(msg.text);
      sm.views = msg.views;
      sm.forwarded_from = msg.forwarded_from;
      for (const auto& link : msg.media_links) {
        if (is_page_link(link, rewrite_opts.page_extensions)) continue;
        auto it = dict.find(link.resolved_path);
        if (it == dict.end() || !it->second) continue;
        const StoredObject* obj = store.find(*it->second);
        if (!obj) continue;
        sm.media.push_back(MediaRef{obj->hash, obj->extension, db_media_kind(obj->kind), obj->size_bytes});
      }
      snapshot.messages.push_back(std::move(sm));
    }
  }

  store.save_index();
  save_snapshot(layout.root, snapshot);
  if (options.rebuild_index) build_index_files(layout.root, read_index_options(layout.root), diag);
  return report;
}

MergeReport merge_cdns(const fs::path& master, const std::vector<fs::path>& others, Diagnostics& diag) {
  ContentStore master_store = ContentStore::open(master);
  CdnLayout to{master};
  MergeReport total;
  for (const auto& other_root : others) {
    std::error_code ec;
    if (!fs::is_directory(other_root, ec))
      throw Error(Errc::io, "CDN directory not found: " + fsutil::path_utf8(other_root));
    ContentStore other = ContentStore::open(other_root);
    MergeReport r = merge_cdn(master_store, other, diag);
    total.objects_added += r.objects_added;
    total.objects_deduplicated += r.objects_deduplicated;
    total.bytes_added += r.bytes_added;
    total.bytes_saved += r.bytes_saved;
    total.archives_merged += r.archives_merged;

    CdnLayout from{other_root};
    if (fs::equivalent(from.root, to.root, ec)) continue;
    if (fs::is_directory(from.snapshots(), ec)) {
      for (const auto& entry : fs::directory_iterator(from.snapshots())) {
        if (entry.path().extension() != ".json") continue;
        fs::path target = to.snapshots() / entry.path().filename();
        if (fs::exists(target)) {
          if (load_snapshot(target) != load_snapshot(entry.path()))
            diag.warn("snapshot_conflict", "archive already present with different content; kept master copy",
                      fsutil::path_utf8(entry.path().filename()));
          continue;
        }
        fs::create_directories(to.snapshots());
        fs::copy_file(entry.path(), target);
      }
    }
    copy_tree_missing(from.root / "rewritten", to.root / "rewritten");
  }
  build_index_files(master, read_index_options(master), diag);
  return total;
}

ExportReport export_json(const fs::path& cdn_root, const fs::path& out_dir, Diagnostics& diag) {
  Corpus corpus = load_corpus(cdn_root, diag);
  export_json_db(corpus, out_dir);
  ExportReport r;
  std::set<std::string> channels;
  for (const auto& [slug, name] : corpus.channel_names) channels.insert(slug);
  for (const auto& [id, chain] : corpus.events) channels.insert(id.channel);
  r.channels = channels.size();
  r.events = corpus.event_count();
  r.versions = corpus.version_count();
  return r;
}

ordered_json stats_json(const ContentStore& store) {
  ordered_json out;
  out["objects"] = store.objects().size();
  out["archives"] = store.dictionaries().size();
  auto before = inventory_before(store);
  auto after = inventory_after(store);
  out["global"] = to_json(compute_stats(before, after));
  ordered_json per = ordered_json::object();
  for (const auto& [archive, dict] : store.dictionaries()) {
    auto b = inventory_before(store, archive);
    auto a = inventory_after(store, archive);
    per[archive] = to_json(compute_stats(b, a));
  }
  out["per_archive"] = std::move(per);
  return out;
}

ordered_json verify_json(const fs::path& cdn_root, bool& ok) {
  ContentStore store = ContentStore::open(cdn_root);
  IntegrityReport report = verify_integrity(store);
  ordered_json out;
  out["checked"] = report.checked;
  ordered_json issues = ordered_json::array();
  for (const auto& i : report.issues) issues.push_back({{"name", i.name}, {"problem", i.problem}});
  out["issues"] = std::move(issues);
  ok = report.ok();

  CdnLayout layout{cdn_root};
  auto check_index = [&](const fs::path& file, bool required) -> ordered_json {
    if (!fs::exists(file)) {
      if (required) ok = false;
      return required ? "missing" : "absent";
    }
    try {
      load_index(file);
      return "ok";
    } catch (const Error& e) {
      ok = false;
      return std::string(errc_name(e.code())) + ": " + e.what();
    }
  };
  out["index"] = check_index(layout.index(), true);
  out["coalesced_index"] = check_index(layout.coalesced_index(), false);
  out["ok"] = ok;
  return out;
}

ordered_json to_json(const IngestReport& r) {
  ordered_json j;
  j["archive_id"] = r.archive_id;
  j["pages"] = r.pages;
  j["messages"] = r.messages;
  j["invalid_timestamps"] = r.invalid_timestamps;
  j["links"] = r.links;
  j["files_ingested"] = r.files_ingested;
  j["objects_added"] = r.objects_added;
  j["objects_deduplicated"] = r.objects_deduplicated;
  j["missing"] = r.missing;
  j["bytes_read"] = r.bytes_read;
  j["bytes_added"] = r.bytes_added;
  j["references_rewritten"] = r.references_rewritten;
  return j;
}

ordered_json to_json(const MergeReport& r) {
  ordered_json j;
  j["objects_added"] = r.objects_added;
  j["objects_deduplicated"] = r.objects_deduplicated;
  j["bytes_added"] = r.bytes_added;
  j["bytes_saved"] = r.bytes_saved;
  j["archives_merged"] = r.archives_merged;
  return j;
}

ordered_json to_json(const IndexReport& r) {
  ordered_json j;
  j["events"] = r.events;
  j["versions"] = r.versions;
  j["terms"] = r.terms;
  j["entries"] = r.entries;
  j["coalesced_entries"] = r.coalesced_entries ? ordered_json(*r.coalesced_entries) : ordered_json(nullptr);
  j["built_at"] = format_iso(r.built_at);
  return j;
}

ordered_json to_json(const ExportReport& r) {
  return {{"channels", r.channels}, {"events", r.events}, {"versions", r.versions}};
}

}  // namespace tscdn

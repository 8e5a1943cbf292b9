#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tscdn/tscdn.h"

namespace {

using nlohmann::json;

// Owns a string handed out by the library.
struct Owned {
  char* p = nullptr;
  ~Owned() { tscdn_free_string(p); }
  std::string str() const { return p ? p : ""; }
};

int fail(tscdn_status st) {
  std::cerr << "error: " << tscdn_status_name(st) << ": " << tscdn_last_error() << "\n";
  return 1;
}

void print_warnings(const Owned& w, bool quiet) {
  if (!quiet && w.p && *w.p) std::cerr << w.p;
}

void print_json(const std::string& text) {
  auto j = nlohmann::ordered_json::parse(text, nullptr, false);
  std::cout << (j.is_discarded() ? text : j.dump(2)) << "\n";
}

std::string url_encode(const std::string& s) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 15];
    }
  }
  return out;
}

struct QueryArgs {
  std::string phrase;
  std::string cdn = "cdn";
  std::string from, to, channels, mode;
  bool all_terms = false;
  bool coalesced = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("phrase", phrase, "Keywords")->required();
    cmd->add_option("--cdn", cdn, "CDN directory")->capture_default_str();
    cmd->add_option("--from", from, "Interval start, ISO-8601 UTC");
    cmd->add_option("--to", to, "Interval end, ISO-8601 UTC; a bare date covers the whole day");
    cmd->add_option("--channels", channels, "Comma-separated channel slugs");
    cmd->add_flag("--all-terms", all_terms, "Require every query term");
    cmd->add_flag("--coalesced", coalesced, "Use the coalesced index");
    cmd->add_option("--mode", mode, "occurrence (default) or validity")->check(CLI::IsMember({"occurrence", "validity"}));
  }

  std::string params() const {
    std::string p = "q=" + url_encode(phrase);
    if (!from.empty()) p += "&from=" + url_encode(from);
    if (!to.empty()) p += "&to=" + url_encode(to);
    if (!channels.empty()) p += "&channels=" + url_encode(channels);
    if (all_terms) p += "&all_terms=true";
    if (coalesced) p += "&coalesced=true";
    if (!mode.empty()) p += "&mode=" + mode;
    return p;
  }
};

// Opens the engine, runs one API request and prints its JSON body.
int api_request(const std::string& cdn, const std::string& target) {
  tscdn_engine* engine = nullptr;
  if (auto st = tscdn_engine_open(cdn.c_str(), nullptr, &engine); st != TSCDN_OK) return fail(st);
  int status = 0;
  Owned body;
  tscdn_status st = tscdn_engine_get(engine, target.c_str(), &status, &body.p);
  tscdn_engine_close(engine);
  if (st != TSCDN_OK) return fail(st);
  if (status != 200) {
    std::cerr << "error: " << body.str() << "\n";
    return 1;
  }
  print_json(body.str());
  return 0;
}

std::string snippet(const std::string& text, std::size_t max_codepoints) {
  std::string out;
  std::size_t n = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if ((c & 0xC0) != 0x80 && n++ == max_codepoints) return out + "...";
    out += (c == '\n') ? ' ' : static_cast<char>(c);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Content-addressed archive CDN and time-travel search for channel exports"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tscdn_version()));
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Suppress warning output");

  // ingest
  std::string export_dir, out_dir = "cdn", channel, name, crawl_time, archive_id, tz = "+03:30", prefix = "cdn";
  bool sha256 = false;
  auto* ingest = app.add_subcommand("ingest", "Store, rewrite and index one channel export");
  ingest->add_option("export_dir", export_dir, "Telegram HTML export directory")->required();
  ingest->add_option("--channel", channel, "Channel slug")->required();
  ingest->add_option("--name", name, "Channel display name");
  ingest->add_option("--out", out_dir, "CDN directory")->capture_default_str();
  ingest->add_option("--crawl-time", crawl_time, "When the export was taken, ISO-8601 (default: now)");
  ingest->add_option("--archive-id", archive_id, "Archive identifier (default: <channel>-<crawl time>)");
  ingest->add_option("--tz-offset", tz, "Offset of the export's wall-clock dates")->capture_default_str();
  ingest->add_option("--cdn-prefix", prefix, "Prefix for rewritten media links")->capture_default_str();
  ingest->add_flag("--sha256", sha256, "Name objects by SHA-256 instead of MD5");

  // merge
  std::string master;
  std::vector<std::string> others;
  auto* merge = app.add_subcommand("merge", "Fold other CDNs into a master CDN");
  merge->add_option("master", master, "Master CDN directory")->required();
  merge->add_option("others", others, "CDN directories to merge in")->required();

  // index
  std::string index_cdn;
  bool coalesce = false, stemmer = false;
  double tau = 0.05;
  std::string config_dir;
  auto* index = app.add_subcommand("index", "Rebuild the inverted index");
  index->add_option("cdn", index_cdn, "CDN directory")->required();
  index->add_flag("--coalesce", coalesce, "Also write a temporally coalesced index");
  index->add_option("--tau", tau, "Coalescing tolerance")->capture_default_str()->check(CLI::NonNegativeNumber);
  index->add_flag("--stem", stemmer, "Enable the suffix stemmer");
  index->add_option("--config-dir", config_dir, "Directory with stopwords.txt, stemmer.rules, categories.json");

  // query
  QueryArgs qa;
  std::size_t limit = 20, offset = 0;
  bool as_json = false;
  auto* query = app.add_subcommand("query", "Keyword + time-interval search");
  qa.add_to(query);
  query->add_option("--limit", limit, "Maximum results")->capture_default_str();
  query->add_option("--offset", offset, "Results to skip");
  query->add_flag("--json", as_json, "Print the raw JSON result array");

  // analytics
  QueryArgs ta;
  std::string granularity = "day";
  auto* trends = app.add_subcommand("trends", "Per-channel match counts over time");
  ta.add_to(trends);
  trends->add_option("--granularity", granularity, "day, week or month")
      ->capture_default_str()
      ->check(CLI::IsMember({"day", "week", "month"}));

  QueryArgs wa;
  std::string months;
  auto* weekend = app.add_subcommand("weekend", "Wednesday / Thursday+Friday / Saturday counts per month");
  wa.add_to(weekend);
  weekend->add_option("--months", months, "e.g. 2020-03..2020-08 or 2020-03,2020-05")->required();

  QueryArgs da;
  auto* daily = app.add_subcommand("daily-average", "Matches per calendar day, per channel");
  da.add_to(daily);

  std::string chan_cdn = "cdn";
  auto* channels = app.add_subcommand("channels", "Channel rankings by posts and media");
  channels->add_option("--cdn", chan_cdn, "CDN directory")->capture_default_str();

  std::string cat_cdn = "cdn", event;
  auto* categories = app.add_subcommand("categories", "Category similarities of one event");
  categories->add_option("event", event, "Event id, <channel>:<id>")->required();
  categories->add_option("--cdn", cat_cdn, "CDN directory")->capture_default_str();

  // store maintenance
  std::string stats_cdn, verify_cdn, export_cdn, export_out;
  auto* stats = app.add_subcommand("stats", "Before/after deduplication statistics");
  stats->add_option("cdn", stats_cdn, "CDN directory")->required();
  auto* verify = app.add_subcommand("verify", "Re-hash stored objects and check the index");
  verify->add_option("cdn", verify_cdn, "CDN directory")->required();
  auto* export_cmd = app.add_subcommand("export-json", "Write the JSON message database");
  export_cmd->add_option("cdn", export_cdn, "CDN directory")->required();
  export_cmd->add_option("--out", export_out, "Output directory")->required();

  // serve
  std::string serve_cdn, host = "127.0.0.1", ui;
  int port = 8080;
  bool wall_clock = false;
  auto* serve = app.add_subcommand("serve", "HTTP API and media server");
  serve->add_option("cdn", serve_cdn, "CDN directory")->required();
  serve->add_option("--host", host, "Listen address")->capture_default_str();
  serve->add_option("--port", port, "Listen port")->capture_default_str();
  serve->add_option("--ui", ui, "Static UI bundle to mount at /");
  serve->add_flag("--wall-clock", wall_clock, "Resolve open intervals at the current time, not the last crawl");

  CLI11_PARSE(app, argc, argv);

  if (*ingest) {
    json o = {{"channel", channel}, {"tz_offset", tz}, {"cdn_prefix", prefix}, {"digest", sha256 ? "sha256" : "md5"}};
    if (!name.empty()) o["name"] = name;
    if (!crawl_time.empty()) o["crawl_time"] = crawl_time;
    if (!archive_id.empty()) o["archive_id"] = archive_id;
    Owned report, warnings;
    auto st = tscdn_ingest(export_dir.c_str(), out_dir.c_str(), o.dump().c_str(), &report.p, &warnings.p);
    print_warnings(warnings, quiet);
    if (st != TSCDN_OK) return fail(st);
    print_json(report.str());
    return 0;
  }
  if (*merge) {
    std::vector<const char*> ptrs;
    for (const auto& o : others) ptrs.push_back(o.c_str());
    Owned report, warnings;
    auto st = tscdn_merge(master.c_str(), ptrs.data(), ptrs.size(), &report.p, &warnings.p);
    print_warnings(warnings, quiet);
    if (st != TSCDN_OK) return fail(st);
    print_json(report.str());
    return 0;
  }
  if (*index) {
    json o = {{"coalesce", coalesce}, {"tau", tau}, {"suffix_stemmer", stemmer}};
    if (!config_dir.empty()) o["config_dir"] = config_dir;
    Owned report, warnings;
    auto st = tscdn_build_index(index_cdn.c_str(), o.dump().c_str(), &report.p, &warnings.p);
    print_warnings(warnings, quiet);
    if (st != TSCDN_OK) return fail(st);
    print_json(report.str());
    return 0;
  }
  if (*query) {
    tscdn_engine* engine = nullptr;
    if (auto st = tscdn_engine_open(qa.cdn.c_str(), nullptr, &engine); st != TSCDN_OK) return fail(st);
    int status = 0;
    Owned body;
    std::string target = "/api/search?" + qa.params() + "&limit=" + std::to_string(limit) +
                         "&offset=" + std::to_string(offset);
    auto st = tscdn_engine_get(engine, target.c_str(), &status, &body.p);
    tscdn_engine_close(engine);
    if (st != TSCDN_OK) return fail(st);
    if (status != 200) {
      std::cerr << "error: " << body.str() << "\n";
      return 1;
    }
    if (as_json) {
      std::cout << body.str() << "\n";
      return 0;
    }
    json results = json::parse(body.str());
    if (results.empty()) {
      std::cout << "no matches\n";
      return 0;
    }
    std::size_t rank = offset;
    for (const auto& r : results) {
      std::printf("%3zu  cos=%.4f  tf-ief=%.4f  %s  %s\n     %s\n", ++rank, r["cosine"].get<double>(),
                  r["tf_ief_sum"].get<double>(), r["timestamp"].get<std::string>().c_str(),
                  r["event"].get<std::string>().c_str(), snippet(r.value("text", ""), 100).c_str());
    }
    return 0;
  }
  if (*trends) return api_request(ta.cdn, "/api/trends?" + ta.params() + "&granularity=" + granularity);
  if (*weekend) return api_request(wa.cdn, "/api/weekend?" + wa.params() + "&months=" + url_encode(months));
  if (*daily) return api_request(da.cdn, "/api/daily-average?" + da.params());
  if (*channels) return api_request(chan_cdn, "/api/channels");
  if (*categories) return api_request(cat_cdn, "/api/categories?event=" + url_encode(event));
  if (*stats) {
    Owned out;
    if (auto st = tscdn_stats(stats_cdn.c_str(), &out.p); st != TSCDN_OK) return fail(st);
    print_json(out.str());
    return 0;
  }
  if (*verify) {
    Owned out;
    int ok = 0;
    if (auto st = tscdn_verify(verify_cdn.c_str(), &out.p, &ok); st != TSCDN_OK) return fail(st);
    print_json(out.str());
    return ok ? 0 : 1;
  }
  if (*export_cmd) {
    Owned report, warnings;
    auto st = tscdn_export_json(export_cdn.c_str(), export_out.c_str(), &report.p, &warnings.p);
    print_warnings(warnings, quiet);
    if (st != TSCDN_OK) return fail(st);
    print_json(report.str());
    return 0;
  }
  if (*serve) {
    json o = {{"now", wall_clock ? "wall_clock" : "horizon"}};
    std::cerr << "serving " << serve_cdn << " on http://" << host << ":" << port << "\n";
    auto st = tscdn_serve(serve_cdn.c_str(), host.c_str(), port, ui.empty() ? nullptr : ui.c_str(), o.dump().c_str());
    if (st != TSCDN_OK) return fail(st);
    return 0;
  }
  return 0;
}

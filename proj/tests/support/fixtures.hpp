#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "corpus/event.hpp"
#include "corpus/snapshot.hpp"
#include "frontdoor/pipeline.hpp"

namespace tscdn::testing {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& rel) const { return path_ / fs::u8path(rel); }

 private:
  fs::path path_;
};

void write_file(const fs::path& path, std::string_view bytes);
std::string slurp(const fs::path& path);

struct CommandResult {
  int exit_code = -1;
  std::string output;
};
// Runs through /bin/sh, capturing stdout.
CommandResult run_command(const std::string& command);
std::string shell_quote(const std::string& s);

// One message block in a Telegram Desktop style export page.
struct PageMessage {
  std::string id;         // numeric id, rendered as id="message<id>"
  std::string date;       // title attribute of the date element
  std::string text;       // inner HTML of the text element
  std::string media_html;  // inserted before the text
};

std::string telegram_page(const std::string& title, const std::vector<PageMessage>& messages,
                          const std::string& head_links = {});
std::string video_link(const std::string& href);
std::string photo_link(const std::string& href);

using Rng = std::mt19937_64;

// Text over a vocabulary of "w0".."w<n-1>" plus occasional stopwords.
std::string random_text(Rng& rng, std::size_t vocab, std::size_t min_words, std::size_t max_words);

struct RandomCorpusSpec {
  std::size_t events = 50;
  std::size_t vocab = 40;
  std::size_t channels = 3;
  std::size_t max_versions = 3;
  std::size_t max_words = 12;
  Instant start = make_instant(2020, 3, 1);
  std::int64_t span_days = 120;
};

// Events with strictly increasing version timestamps and assigned intervals.
Corpus random_corpus(Rng& rng, const RandomCorpusSpec& spec);

// Single-crawl snapshot of one channel; each post is (date, text).
Snapshot planted_snapshot(const std::string& slug, Instant crawl,
                          const std::vector<std::pair<Instant, std::string>>& posts);

// Writes the snapshots into a CDN directory and builds its index files.
void plant_cdn(const fs::path& cdn_root, const std::vector<Snapshot>& snapshots, const IndexOptions& options = {});

}  // namespace tscdn::testing

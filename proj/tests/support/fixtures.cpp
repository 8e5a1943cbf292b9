#include "support/fixtures.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <unistd.h>
#include <sys/wait.h>

namespace tscdn::testing {

TempDir::TempDir() {
  std::string tmpl = (fs::temp_directory_path() / "tscdn-test-XXXXXX").string();
  if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void write_file(const fs::path& path, std::string_view bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CommandResult run_command(const std::string& command) {
  CommandResult r;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

std::string telegram_page(const std::string& title, const std::vector<PageMessage>& messages,
                          const std::string& head_links) {
  std::string html =
      "<!DOCTYPE html>\n<html>\n <head>\n  <meta charset=\"utf-8\"/>\n  <title>Exported Data</title>\n" + head_links +
      " </head>\n <body>\n  <div class=\"page_wrap\">\n   <div class=\"page_header\"><div class=\"content\">"
      "<div class=\"text bold\">" + title + "</div></div></div>\n   <div class=\"page_body chat_page\">\n"
      "    <div class=\"history\">\n";
  for (const auto& m : messages) {
    html += "     <div class=\"message default clearfix\" id=\"message" + m.id + "\">\n      <div class=\"body\">\n"
            "       <div class=\"pull_right date details\" title=\"" + m.date + "\">00:00</div>\n"
            "       <div class=\"from_name\">" + title + "</div>\n       " + m.media_html + "\n"
            "       <div class=\"text\">" + m.text + "</div>\n      </div>\n     </div>\n";
  }
  html += "    </div>\n   </div>\n  </div>\n </body>\n</html>\n";
  return html;
}

std::string video_link(const std::string& href) {
  return "<div class=\"media_wrap clearfix\"><a class=\"video_file_wrap clearfix pull_left\" href=\"" + href +
         "\"><div class=\"video_play_bg\"><div class=\"video_play\"></div></div></a></div>";
}

std::string photo_link(const std::string& href) {
  return "<div class=\"media_wrap clearfix\"><a class=\"photo_wrap clearfix pull_left\" href=\"" + href +
         "\"><img class=\"photo\" src=\"" + href + "\"/></a></div>";
}

std::string random_text(Rng& rng, std::size_t vocab, std::size_t min_words, std::size_t max_words) {
  static const char* kStop[] = {"the", "and", "of"};
  std::uniform_int_distribution<std::size_t> len(min_words, max_words);
  std::uniform_int_distribution<std::size_t> word(0, vocab - 1);
  std::uniform_int_distribution<int> coin(0, 9);
  std::string text;
  std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) {
    if (!text.empty()) text += ' ';
    if (coin(rng) == 0) text += kStop[word(rng) % 3];
    else text += "w" + std::to_string(word(rng));
  }
  return text;
}

Corpus random_corpus(Rng& rng, const RandomCorpusSpec& spec) {
  Corpus c;
  std::uniform_int_distribution<std::int64_t> offset(0, spec.span_days * 86400);
  std::uniform_int_distribution<std::size_t> versions(1, spec.max_versions);
  std::uniform_int_distribution<std::size_t> channel(0, spec.channels - 1);
  std::uniform_int_distribution<std::int64_t> gap(3600, 20 * 86400);
  std::uniform_int_distribution<int> coin(0, 3);
  for (std::size_t ch = 0; ch < spec.channels; ++ch)
    c.channel_names["ch" + std::to_string(ch)] = "Channel " + std::to_string(ch);
  for (std::size_t i = 0; i < spec.events; ++i) {
    EventId id{"ch" + std::to_string(channel(rng)), std::to_string(1000 + i)};
    auto& chain = c.events[id];
    Instant t = spec.start + std::chrono::seconds{offset(rng)};
    std::string text = random_text(rng, spec.vocab, 0, spec.max_words);
    std::size_t n = versions(rng);
    for (std::size_t v = 0; v < n; ++v) {
      EventVersion ver;
      ver.event = id;
      ver.timestamp = t;
      // Later versions either edit a few words or rewrite the text.
      if (v > 0) text = coin(rng) == 0 ? random_text(rng, spec.vocab, 0, spec.max_words)
                                       : text + " " + random_text(rng, spec.vocab, 1, 2);
      ver.text = text;
      chain.push_back(std::move(ver));
      t += std::chrono::seconds{gap(rng)};
    }
    assign_valid_intervals(chain);
  }
  return c;
}

Snapshot planted_snapshot(const std::string& slug, Instant crawl,
                          const std::vector<std::pair<Instant, std::string>>& posts) {
  Snapshot s;
  s.archive_id = default_archive_id(slug, crawl);
  s.channel_slug = slug;
  s.channel_name = "Channel " + slug;
  s.crawl_time = crawl;
  for (std::size_t i = 0; i < posts.size(); ++i) {
    SnapshotMessage m;
    m.ordinal = i;
    m.page = "messages.html";
    m.id = std::to_string(i + 1);
    m.date = posts[i].first;
    m.date_raw = format_iso(posts[i].first);
    m.text = posts[i].second;
    s.messages.push_back(std::move(m));
  }
  return s;
}

void plant_cdn(const fs::path& cdn_root, const std::vector<Snapshot>& snapshots, const IndexOptions& options) {
  fs::create_directories(cdn_root);
  for (const auto& s : snapshots) save_snapshot(cdn_root, s);
  Diagnostics diag;
  build_index_files(cdn_root, options, diag);
}

}  // namespace tscdn::testing

#include "scoring/tf_ief.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "common/error.hpp"

namespace tscdn {

std::size_t CorpusTermStats::ef(std::string_view term) const {
  auto it = event_frequency.find(std::string(term));
  return it == event_frequency.end() ? 0 : it->second;
}

std::size_t CorpusTermStats::words_in_version(const EventId& id, Instant valid_from) const {
  auto it = version_words.find({id, valid_from});
  return it == version_words.end() ? 0 : it->second;
}

CorpusTermStats build_term_stats(const Corpus& corpus, const TextPipeline& pipeline) {
  CorpusTermStats stats;
  for (const auto& [id, chain] : corpus.events) {
    if (chain.empty()) continue;
    ++stats.total_events;
    for (const auto& v : chain) stats.version_words[{id, v.timestamp}] = pipeline.analyze(v.text).size();
    auto latest = pipeline.analyze(chain.back().text);
    stats.total_words[id] = latest.size();
    std::set<std::string> distinct(latest.begin(), latest.end());
    for (const auto& term : distinct) ++stats.event_frequency[term];
  }
  return stats;
}

double tf_from_counts(std::size_t count, std::size_t total) {
  if (total == 0) return 0.0;
  return static_cast<double>(count) / static_cast<double>(total);
}

double tf(std::string_view term, std::span<const std::string> tokens) {
  auto count = static_cast<std::size_t>(std::count(tokens.begin(), tokens.end(), term));
  return tf_from_counts(count, tokens.size());
}

double ief_from_counts(std::size_t total_events, std::size_t ef) {
  if (total_events == 0) throw Error(Errc::empty_corpus, "inverse event frequency over an empty corpus");
  if (ef == 0) return std::log2(2.0 * static_cast<double>(total_events));
  return std::log2(static_cast<double>(total_events) / static_cast<double>(ef));
}

double ief(std::string_view term, const CorpusTermStats& stats) {
  return ief_from_counts(stats.total_events, stats.ef(term));
}

double tf_ief(std::string_view term, std::span<const std::string> tokens, const CorpusTermStats& stats) {
  double t = tf(term, tokens);
  if (t == 0.0) return 0.0;
  return t * ief(term, stats);
}

}  // namespace tscdn

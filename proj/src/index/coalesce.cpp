#include "index/coalesce.hpp"

#include <cmath>

#include "common/error.hpp"

namespace tscdn {

double entry_score(const std::string& term, const PostingEntry& entry, const CorpusTermStats& stats) {
  std::size_t words = stats.words_in_version(entry.event, entry.interval.begin);
  return tf_from_counts(entry.repetition, words) * ief(term, stats);
}

PostingList coalesce(const PostingList& list, const EntryScorer& score, const CoalesceConfig& cfg) {
  if (!(cfg.tau >= 0.0)) throw Error(Errc::invalid_argument, "coalescing tolerance must be >= 0");
  PostingList out;
  out.reserve(list.size());
  std::size_t i = 0;
  while (i < list.size()) {
    const PostingEntry& anchor = list[i];
    const double anchor_score = score(anchor);
    const double band = cfg.tau * std::fabs(anchor_score);
    PostingEntry merged = anchor;
    std::size_t j = i + 1;
    while (j < list.size()) {
      const PostingEntry& next = list[j];
      if (next.event != anchor.event) break;
      if (!merged.interval.end || *merged.interval.end != next.interval.begin) break;
      if (std::fabs(score(next) - anchor_score) > band) break;
      merged.interval.end = next.interval.end;
      ++j;
    }
    out.push_back(std::move(merged));
    i = j;
  }
  return out;
}

PostingList coalesce(const std::string& term, const PostingList& list, const CorpusTermStats& stats,
                     const CoalesceConfig& cfg) {
  return coalesce(list, [&](const PostingEntry& e) { return entry_score(term, e, stats); }, cfg);
}

InvertedIndex coalesce_index(const InvertedIndex& index, const CoalesceConfig& cfg) {
  InvertedIndex out;
  out.stats = index.stats;
  out.built_at = index.built_at;
  out.coalesce = cfg;
  for (const auto& [term, list] : index.dictionary) out.dictionary.emplace(term, coalesce(term, list, index.stats, cfg));
  return out;
}

}  // namespace tscdn

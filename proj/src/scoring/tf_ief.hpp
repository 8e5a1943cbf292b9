#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corpus/event.hpp"
#include "scoring/text.hpp"

namespace tscdn {

// Corpus-level counts behind TF-IEF. Event frequencies are taken over the
// latest version of each event; per-version term totals are kept so that
// any version can be scored against the same corpus-level IEF.
struct CorpusTermStats {
  std::size_t total_events = 0;
  std::map<std::string, std::size_t> event_frequency;              // ef_v
  std::map<EventId, std::size_t> total_words;                      // latest version
  std::map<std::pair<EventId, Instant>, std::size_t> version_words;  // keyed by valid_from

  std::size_t ef(std::string_view term) const;
  // Term count of the version starting at `valid_from`; 0 if unknown.
  std::size_t words_in_version(const EventId& id, Instant valid_from) const;

  friend bool operator==(const CorpusTermStats&, const CorpusTermStats&) = default;
};

CorpusTermStats build_term_stats(const Corpus& corpus, const TextPipeline& pipeline);

// count(term) / len(tokens); 0 for an empty token list.
double tf(std::string_view term, std::span<const std::string> tokens);
double tf_from_counts(std::size_t count, std::size_t total);

// log2(|E| / ef). An unseen term (ef = 0) weighs log2(2|E|), rarer than
// any seen term. Throws Error(empty_corpus) when |E| = 0.
double ief(std::string_view term, const CorpusTermStats& stats);
double ief_from_counts(std::size_t total_events, std::size_t ef);

double tf_ief(std::string_view term, std::span<const std::string> tokens, const CorpusTermStats& stats);

}  // namespace tscdn

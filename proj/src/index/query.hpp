#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "corpus/event.hpp"
#include "index/posting.hpp"
#include "scoring/text.hpp"
#include "scoring/vector.hpp"

namespace tscdn {

// How a posting entry is matched against the query window [from, to].
enum class TemporalMode {
  occurrence,  // the version appeared inside the window: from <= begin <= to
  validity,    // the version's valid interval intersects the window
};

struct QuerySpec {
  std::vector<std::string> keywords;
  std::optional<Instant> from;  // default: earliest version in the corpus
  std::optional<Instant> to;    // default: the evaluation instant
  std::set<std::string> channels;  // empty = all
  std::optional<std::size_t> limit;
  std::size_t offset = 0;
  bool coalesced = false;
  bool all_terms = false;  // AND instead of OR over query terms
  TemporalMode mode = TemporalMode::occurrence;

  static QuerySpec time_point(std::vector<std::string> keywords, Instant at);
};

// Normalized terms of every version, computed once per corpus.
class VersionTerms {
 public:
  VersionTerms() = default;
  VersionTerms(const Corpus& corpus, const TextPipeline& pipeline);

  const std::vector<std::string>& at(const EventId& id, Instant valid_from) const;

 private:
  std::map<std::pair<EventId, Instant>, std::vector<std::string>> terms_;
  std::vector<std::string> empty_;
};

struct ScoredEvent {
  EventId event;
  Instant timestamp{};  // valid_from of the scored version
  const EventVersion* version = nullptr;
  std::vector<Interval> matched_intervals;
  double tf_ief_sum = 0.0;
  double cosine = 0.0;
  std::map<std::string, std::uint32_t> repetitions;
};

struct ResolvedQuery {
  std::vector<std::string> terms;           // distinct, in first-seen order
  std::vector<std::string> analyzed;        // with multiplicity, for the query vector
  Instant from{};
  Instant to{};
};

// Validates and normalizes. Throws Error(empty_query) when no keyword term
// survives normalization and Error(invalid_interval) when from > to.
ResolvedQuery resolve_query(const QuerySpec& q, const Corpus& corpus, const TextPipeline& pipeline, Instant now);

// Ranked by cosine desc, then tf_ief_sum desc, then timestamp asc, then
// EventId. Each result is scored on the version that opens its latest
// matching posting entry.
std::vector<ScoredEvent> query(const InvertedIndex& index, const Corpus& corpus, const VersionTerms& terms,
                               const TextPipeline& pipeline, const QuerySpec& q, Instant now);

// Total number of matches before offset/limit are applied.
std::size_t count_matches(const InvertedIndex& index, const Corpus& corpus, const VersionTerms& terms,
                          const TextPipeline& pipeline, QuerySpec q, Instant now);

}  // namespace tscdn

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "corpus/event.hpp"
#include "scoring/tf_ief.hpp"

namespace tscdn {

// One (event, valid-time interval, repetition) element of a posting list,
// with the token positions of the term inside that event version.
struct PostingEntry {
  EventId event;
  Interval interval;
  std::uint32_t repetition = 0;
  std::vector<std::uint32_t> positions;

  friend bool operator==(const PostingEntry&, const PostingEntry&) = default;
};

// Sorted by (event, interval.begin).
using PostingList = std::vector<PostingEntry>;

struct CoalesceConfig {
  double tau = 0.05;  // relative score band around the run's first entry

  friend bool operator==(const CoalesceConfig&, const CoalesceConfig&) = default;
};

struct InvertedIndex {
  std::map<std::string, PostingList> dictionary;
  CorpusTermStats stats;
  Instant built_at{};
  std::optional<CoalesceConfig> coalesce;  // set on coalesced indexes

  const PostingList* find(const std::string& term) const;
  std::size_t entry_count() const;

  friend bool operator==(const InvertedIndex&, const InvertedIndex&) = default;
};

}  // namespace tscdn

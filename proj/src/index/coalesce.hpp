#pragma once

#include <functional>
#include <string>

#include "index/posting.hpp"

namespace tscdn {

using EntryScorer = std::function<double(const PostingEntry&)>;

// Temporal coalescing of one posting list. Within a single event, a maximal
// run of consecutive entries that are time-adjacent (end == next begin) and
// whose scores all lie within tau * |anchor score| of the run's first entry
// collapses into one entry spanning the run, keeping the anchor's repetition
// and positions. Different events never merge.
PostingList coalesce(const PostingList& list, const EntryScorer& score, const CoalesceConfig& cfg);

// Scores entries by per-version TF-IEF of `term` against `stats`.
PostingList coalesce(const std::string& term, const PostingList& list, const CorpusTermStats& stats,
                     const CoalesceConfig& cfg);

InvertedIndex coalesce_index(const InvertedIndex& index, const CoalesceConfig& cfg);

// TF-IEF of `term` in the version an entry refers to.
double entry_score(const std::string& term, const PostingEntry& entry, const CorpusTermStats& stats);

}  // namespace tscdn

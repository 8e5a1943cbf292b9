#pragma once

#include "corpus/event.hpp"
#include "index/posting.hpp"
#include "scoring/text.hpp"

namespace tscdn {

// One posting entry per (term, event version) carrying the version's valid
// interval, the term's count and its token positions. `built_at` defaults to
// the corpus horizon so that rebuilding the same corpus is byte-identical.
InvertedIndex build_index(const Corpus& corpus, const CorpusTermStats& stats, const TextPipeline& pipeline,
                          std::optional<Instant> built_at = {});

}  // namespace tscdn

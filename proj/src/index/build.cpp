#include "index/build.hpp"

namespace tscdn {

InvertedIndex build_index(const Corpus& corpus, const CorpusTermStats& stats, const TextPipeline& pipeline,
                          std::optional<Instant> built_at) {
  InvertedIndex index;
  index.stats = stats;
  index.built_at = built_at.value_or(corpus.horizon());
  // Events iterate in EventId order and versions in time order, so every
  // list comes out sorted by (event, begin) without a final sort.
  for (const auto& [id, chain] : corpus.events) {
    for (const auto& version : chain) {
      auto terms = pipeline.analyze(version.text);
      std::map<std::string, std::vector<std::uint32_t>> positions;
      for (std::uint32_t i = 0; i < terms.size(); ++i) positions[terms[i]].push_back(i);
      for (auto& [term, pos] : positions) {
        PostingEntry e;
        e.event = id;
        e.interval = version.valid;
        e.repetition = static_cast<std::uint32_t>(pos.size());
        e.positions = std::move(pos);
        index.dictionary[term].push_back(std::move(e));
      }
    }
  }
  return index;
}

}  // namespace tscdn

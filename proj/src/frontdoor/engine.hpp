#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

#include "corpus/event.hpp"
#include "frontdoor/pipeline.hpp"
#include "index/query.hpp"
#include "scoring/categories.hpp"
#include "store/content_store.hpp"

namespace tscdn {

// Where the open "now" end of the latest versions is pinned at query time.
enum class NowPolicy {
  horizon,     // latest crawl time; reproducible
  wall_clock,  // the current time at each evaluation
};

struct EngineOptions {
  std::filesystem::path cdn_root;
  std::optional<ScoringOptions> scoring;  // defaults to what the index was built with
  NowPolicy now = NowPolicy::horizon;
  FixedOffset zone = kDefaultExportOffset;  // local calendar for weekday analytics
};

// Read-only view of one CDN: store catalog, corpus, raw and coalesced
// indexes. Immutable after open, so concurrent readers need no locking.
class Engine {
 public:
  // Throws Error(not_found) with a remediation hint when the index is
  // missing and Error(integrity) when it no longer matches the snapshots.
  static std::unique_ptr<Engine> open(const EngineOptions& options);

  const ContentStore& store() const { return store_; }
  const Corpus& corpus() const { return corpus_; }
  const InvertedIndex& index(bool coalesced = false) const { return coalesced ? coalesced_ : index_; }
  const TextPipeline& pipeline() const { return pipeline_; }
  const VersionTerms& version_terms() const { return terms_; }
  const std::vector<CategoryVector>& categories() const { return categories_; }
  FixedOffset zone() const { return zone_; }
  Instant now() const;

  std::vector<ScoredEvent> search(const QuerySpec& q) const;
  std::size_t count(const QuerySpec& q) const;
  ResolvedQuery resolve(const QuerySpec& q) const;

  // Category similarities of the event's latest version.
  std::vector<CategoryScore> categorize(const EventId& id) const;

 private:
  explicit Engine(ContentStore store) : store_(std::move(store)) {}

  ContentStore store_;
  Corpus corpus_;
  InvertedIndex index_;
  InvertedIndex coalesced_;
  TextPipeline pipeline_;
  VersionTerms terms_;
  std::vector<CategoryVector> categories_;
  NowPolicy now_policy_ = NowPolicy::horizon;
  FixedOffset zone_;
};

}  // namespace tscdn

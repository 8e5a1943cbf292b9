#include "frontdoor/engine.hpp"

#include "common/error.hpp"
#include "common/fsutil.hpp"
#include "index/coalesce.hpp"
#include "index/persist.hpp"
#include "scoring/tf_ief.hpp"

namespace tscdn {

namespace fs = std::filesystem;

std::unique_ptr<Engine> Engine::open(const EngineOptions& options) {
  std::error_code ec;
  if (!fs::is_directory(options.cdn_root, ec))
    throw Error(Errc::not_found, "CDN directory not found: " + fsutil::path_utf8(options.cdn_root));
  CdnLayout layout{options.cdn_root};
  if (!fs::exists(layout.index()))
    throw Error(Errc::not_found, "no index in " + fsutil::path_utf8(options.cdn_root) + "; run `tscdn index " +
                                     fsutil::path_utf8(options.cdn_root) + "` first");

  std::unique_ptr<Engine> e(new Engine(ContentStore::open(options.cdn_root)));
  e->now_policy_ = options.now;
  e->zone_ = options.zone;

  IndexOptions built_with = read_index_options(options.cdn_root);
  ScoringConfig config = load_scoring_config(options.scoring.value_or(built_with.scoring));
  e->pipeline_ = std::move(config.pipeline);

  Diagnostics diag;
  e->corpus_ = load_corpus(options.cdn_root, diag);
  e->index_ = load_index(layout.index());
  if (e->index_.stats != build_term_stats(e->corpus_, e->pipeline_))
    throw Error(Errc::integrity, "index does not match the stored snapshots or scoring options; rerun `tscdn index`");

  if (fs::exists(layout.coalesced_index())) {
    e->coalesced_ = load_index(layout.coalesced_index());
    if (e->coalesced_.stats != e->index_.stats)
      throw Error(Errc::integrity, "coalesced index is stale; rerun `tscdn index --coalesce`");
  } else {
    e->coalesced_ = coalesce_index(e->index_, built_with.coalesce.value_or(CoalesceConfig{}));
  }
  e->terms_ = VersionTerms(e->corpus_, e->pipeline_);
  if (e->index_.stats.total_events > 0)
    e->categories_ = build_category_vectors(config.categories, e->pipeline_, e->index_.stats);
  return e;
}

Instant Engine::now() const { return now_policy_ == NowPolicy::wall_clock ? now_utc() : corpus_.horizon(); }

std::vector<ScoredEvent> Engine::search(const QuerySpec& q) const {
  return query(index(q.coalesced), corpus_, terms_, pipeline_, q, now());
}

std::size_t Engine::count(const QuerySpec& q) const {
  return count_matches(index(q.coalesced), corpus_, terms_, pipeline_, q, now());
}

ResolvedQuery Engine::resolve(const QuerySpec& q) const { return resolve_query(q, corpus_, pipeline_, now()); }

std::vector<CategoryScore> Engine::categorize(const EventId& id) const {
  const auto* chain = corpus_.find(id);
  if (!chain || chain->empty()) throw Error(Errc::not_found, "unknown event " + id.to_string());
  const auto& latest = chain->back();
  TermVector v = build_term_vector(terms_.at(id, latest.timestamp), index_.stats);
  return adapt_categories(v, categories_);
}

}  // namespace tscdn

#include "index/query.hpp"

#include <algorithm>
#include <set>

#include "common/error.hpp"

namespace tscdn {

QuerySpec QuerySpec::time_point(std::vector<std::string> keywords, Instant at) {
  QuerySpec q;
  q.keywords = std::move(keywords);
  q.from = at;
  q.to = at;
  return q;
}

VersionTerms::VersionTerms(const Corpus& corpus, const TextPipeline& pipeline) {
  for (const auto& [id, chain] : corpus.events)
    for (const auto& v : chain) terms_.emplace(std::make_pair(id, v.timestamp), pipeline.analyze(v.text));
}

const std::vector<std::string>& VersionTerms::at(const EventId& id, Instant valid_from) const {
  auto it = terms_.find({id, valid_from});
  return it == terms_.end() ? empty_ : it->second;
}

ResolvedQuery resolve_query(const QuerySpec& q, const Corpus& corpus, const TextPipeline& pipeline, Instant now) {
  ResolvedQuery r;
  for (const auto& kw : q.keywords) {
    for (auto& term : pipeline.analyze(kw)) {
      if (std::find(r.terms.begin(), r.terms.end(), term) == r.terms.end()) r.terms.push_back(term);
      r.analyzed.push_back(std::move(term));
    }
  }
  if (r.terms.empty()) throw Error(Errc::empty_query, "no query term survives normalization");
  if (q.from) {
    r.from = *q.from;
  } else {
    r.from = Instant::max();
    for (const auto& [id, chain] : corpus.events)
      if (!chain.empty()) r.from = std::min(r.from, chain.front().timestamp);
    if (r.from == Instant::max()) r.from = Instant{};
  }
  r.to = q.to.value_or(now);
  if (r.from > r.to)
    throw Error(Errc::invalid_interval, "query interval begins (" + format_iso(r.from) + ") after it ends (" +
                                            format_iso(r.to) + ")");
  return r;
}

namespace {

bool entry_matches(const PostingEntry& e, TemporalMode mode, Instant from, Instant to) {
  if (mode == TemporalMode::occurrence) return e.interval.begin >= from && e.interval.begin <= to;
  return e.interval.intersects(from, to);
}

struct Candidate {
  std::vector<const PostingEntry*> entries;
  std::set<std::size_t> terms_hit;
  std::map<std::string, const PostingEntry*> latest_per_term;
};

std::vector<ScoredEvent> evaluate(const InvertedIndex& index, const Corpus& corpus, const VersionTerms& vterms,
                                  const ResolvedQuery& r, const QuerySpec& q) {
  std::map<EventId, Candidate> candidates;
  for (std::size_t ti = 0; ti < r.terms.size(); ++ti) {
    const PostingList* list = index.find(r.terms[ti]);
    if (!list) continue;
    for (const auto& e : *list) {
      if (!q.channels.empty() && !q.channels.count(e.event.channel)) continue;
      if (!entry_matches(e, q.mode, r.from, r.to)) continue;
      auto& c = candidates[e.event];
      c.entries.push_back(&e);
      c.terms_hit.insert(ti);
      auto& latest = c.latest_per_term[r.terms[ti]];
      if (!latest || latest->interval.begin < e.interval.begin) latest = &e;
    }
  }

  TermVector query_vec = build_term_vector(r.analyzed, index.stats);
  std::vector<ScoredEvent> out;
  for (auto& [id, c] : candidates) {
    if (q.all_terms && c.terms_hit.size() != r.terms.size()) continue;
    const auto* chain = corpus.find(id);
    if (!chain || chain->empty()) continue;

    Instant scored_at = c.entries.front()->interval.begin;
    for (const auto* e : c.entries) scored_at = std::max(scored_at, e->interval.begin);
    auto vit = std::find_if(chain->begin(), chain->end(), [&](const EventVersion& v) { return v.timestamp == scored_at; });
    if (vit == chain->end()) continue;

    ScoredEvent s;
    s.event = id;
    s.timestamp = scored_at;
    s.version = &*vit;
    std::vector<Interval> intervals;
    for (const auto* e : c.entries) intervals.push_back(e->interval);
    std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) {
      if (a.begin != b.begin) return a.begin < b.begin;
      return a.end.value_or(Instant::max()) < b.end.value_or(Instant::max());
    });
    intervals.erase(std::unique(intervals.begin(), intervals.end()), intervals.end());
    s.matched_intervals = std::move(intervals);
    for (const auto& [term, e] : c.latest_per_term) s.repetitions[term] = e->repetition;

    const auto& tokens = vterms.at(id, scored_at);
    for (const auto& term : r.terms) {
      std::size_t count = static_cast<std::size_t>(std::count(tokens.begin(), tokens.end(), term));
      if (count) s.tf_ief_sum += tf_from_counts(count, tokens.size()) * ief(term, index.stats);
    }
    s.cosine = cosine(query_vec, build_term_vector(tokens, index.stats));
    out.push_back(std::move(s));
  }

  std::sort(out.begin(), out.end(), [](const ScoredEvent& a, const ScoredEvent& b) {
    if (a.cosine != b.cosine) return a.cosine > b.cosine;
    if (a.tf_ief_sum != b.tf_ief_sum) return a.tf_ief_sum > b.tf_ief_sum;
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    return a.event < b.event;
  });
  return out;
}

}  // namespace

std::vector<ScoredEvent> query(const InvertedIndex& index, const Corpus& corpus, const VersionTerms& terms,
                               const TextPipeline& pipeline, const QuerySpec& q, Instant now) {
  ResolvedQuery r = resolve_query(q, corpus, pipeline, now);
  auto results = evaluate(index, corpus, terms, r, q);
  std::size_t begin = std::min(q.offset, results.size());
  std::size_t end = q.limit ? std::min(results.size(), begin + *q.limit) : results.size();
  return {std::make_move_iterator(results.begin() + static_cast<std::ptrdiff_t>(begin)),
          std::make_move_iterator(results.begin() + static_cast<std::ptrdiff_t>(end))};
}

std::size_t count_matches(const InvertedIndex& index, const Corpus& corpus, const VersionTerms& terms,
                          const TextPipeline& pipeline, QuerySpec q, Instant now) {
  q.offset = 0;
  q.limit.reset();
  return query(index, corpus, terms, pipeline, q, now).size();
}

}  // namespace tscdn

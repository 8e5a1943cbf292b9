#include "corpus/build.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tscdn {

namespace {

struct Observation {
  Instant crawl_time{};
  const SnapshotMessage* message = nullptr;
};

std::vector<MediaRef> sorted_media(std::vector<MediaRef> media) {
  std::sort(media.begin(), media.end());
  return media;
}

bool same_content(const EventVersion& v, const SnapshotMessage& m) {
  return v.text == m.text && sorted_media(v.media) == sorted_media(m.media);
}

EventVersion make_version(const EventId& id, Instant at, const SnapshotMessage& m) {
  EventVersion v;
  v.event = id;
  v.timestamp = at;
  v.text = m.text;
  v.media = m.media;
  for (auto& r : v.media) r.kind = db_media_kind(r.kind);
  v.views = m.views;
  v.forwarded_from = m.forwarded_from;
  return v;
}

}  // namespace

Corpus build_corpus(const std::vector<Snapshot>& snapshots, Diagnostics& diag) {
  Corpus corpus;
  std::vector<const Snapshot*> order;
  for (const auto& s : snapshots) order.push_back(&s);
  std::stable_sort(order.begin(), order.end(), [](const Snapshot* a, const Snapshot* b) {
    return std::tie(a->crawl_time, a->archive_id) < std::tie(b->crawl_time, b->archive_id);
  });

  // EventId -> crawl_time -> latest-parsed message at that crawl.
  std::map<EventId, std::map<Instant, const SnapshotMessage*>> observed;
  std::set<std::pair<std::string, Instant>> seen_snapshots;
  for (const Snapshot* s : order) {
    corpus.channel_names[s->channel_slug] = s->channel_name;
    if (seen_snapshots.emplace(s->channel_slug, s->crawl_time).second)
      corpus.snapshots.push_back({s->channel_slug, s->crawl_time, s->archive_id});
    for (const auto& m : s->messages) {
      if (!m.date) {
        ++corpus.excluded_messages;
        continue;
      }
      EventId id{s->channel_slug, m.id};
      auto& slot = observed[id][s->crawl_time];
      if (slot && (slot->text != m.text || sorted_media(slot->media) != sorted_media(m.media)))
        diag.warn("version_conflict",
                  "message " + id.to_string() + " observed twice at " + format_iso(s->crawl_time) +
                      " with different content; keeping the later one",
                  s->archive_id);
      slot = &m;
    }
  }

  for (const auto& [id, by_crawl] : observed) {
    Corpus::VersionChain chain;
    for (const auto& [crawl, msg] : by_crawl) {
      if (chain.empty()) {
        chain.push_back(make_version(id, *msg->date, *msg));
        continue;
      }
      if (same_content(chain.back(), *msg)) continue;
      if (crawl <= chain.back().timestamp) {
        diag.warn("version_order",
                  "update of " + id.to_string() + " seen at " + format_iso(crawl) +
                      " is not later than its previous version; ignored");
        continue;
      }
      chain.push_back(make_version(id, crawl, *msg));
    }
    assign_valid_intervals(chain);
    corpus.events.emplace(id, std::move(chain));
  }
  return corpus;
}

}  // namespace tscdn

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "common/time.hpp"
#include "ingest/links.hpp"
#include "store/digest.hpp"

namespace tscdn {

struct EventId {
  std::string channel;
  std::string local_id;

  // "<channel>:<local_id>"; channel slugs never contain ':'.
  std::string to_string() const { return channel + ":" + local_id; }
  static std::optional<EventId> parse(std::string_view text);

  friend auto operator<=>(const EventId&, const EventId&) = default;
};

struct MediaRef {
  ContentHash hash;
  std::string ext;
  MediaKind kind = MediaKind::other;  // one of video|image|audio|document|other
  std::uint64_t bytes = 0;

  friend auto operator<=>(const MediaRef&, const MediaRef&) = default;
};

// JSON DB media kinds are coarser than link kinds.
MediaKind db_media_kind(MediaKind kind);

// Half-open valid-time interval; an empty `end` is the open "now" marker,
// later than every stored instant.
struct Interval {
  Instant begin{};
  std::optional<Instant> end;

  bool is_open() const { return !end.has_value(); }
  // Intersection with the closed query window [from, to].
  bool intersects(Instant from, Instant to) const { return begin <= to && (!end || *end > from); }

  friend bool operator==(const Interval&, const Interval&) = default;
};

struct EventVersion {
  EventId event;
  Instant timestamp{};
  std::string text;
  std::vector<MediaRef> media;
  std::optional<std::int64_t> views;
  std::optional<std::string> forwarded_from;
  Interval valid;

  friend bool operator==(const EventVersion&, const EventVersion&) = default;
};

// [t_i, t_{i+1}) when a successor exists, else [t_i, now).
// Throws Error(model_violation) if the successor is not strictly later.
Interval valid_interval(const EventVersion& version, const EventVersion* successor);

struct CyberspaceSnapshot {
  std::string channel_slug;
  Instant crawl_time{};
  std::string archive_id;

  friend auto operator<=>(const CyberspaceSnapshot&, const CyberspaceSnapshot&) = default;
};

class Corpus {
 public:
  using VersionChain = std::vector<EventVersion>;

  std::map<EventId, VersionChain> events;
  std::map<std::string, std::string> channel_names;  // slug -> display name
  std::vector<CyberspaceSnapshot> snapshots;
  std::size_t excluded_messages = 0;

  std::size_t event_count() const { return events.size(); }
  std::size_t version_count() const;
  const VersionChain* find(const EventId& id) const;

  // Latest crawl time, or the latest version timestamp when no snapshots
  // are recorded. Used as the offline "now".
  Instant horizon() const;

  // Events and channel names; snapshot bookkeeping is not compared.
  bool same_content(const Corpus& other) const {
    return events == other.events && channel_names == other.channel_names;
  }
};

// Recomputes every version's valid interval from its chain.
void assign_valid_intervals(Corpus::VersionChain& chain);

}  // namespace tscdn

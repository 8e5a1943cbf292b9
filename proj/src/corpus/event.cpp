#include "corpus/event.hpp"

#include <algorithm>

#include "common/error.hpp"

namespace tscdn {

std::optional<EventId> EventId::parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == text.size()) return std::nullopt;
  return EventId{std::string(text.substr(0, colon)), std::string(text.substr(colon + 1))};
}

MediaKind db_media_kind(MediaKind kind) {
  switch (kind) {
    case MediaKind::video:
    case MediaKind::image:
    case MediaKind::audio:
    case MediaKind::document: return kind;
    case MediaKind::sticker:
    case MediaKind::icon: return MediaKind::image;
    default: return MediaKind::other;
  }
}

Interval valid_interval(const EventVersion& version, const EventVersion* successor) {
  if (!successor) return Interval{version.timestamp, std::nullopt};
  if (successor->timestamp <= version.timestamp)
    throw Error(Errc::model_violation, "version of " + version.event.to_string() + " at " +
                                           format_iso(version.timestamp) +
                                           " is followed by a version that is not later (" +
                                           format_iso(successor->timestamp) + ")");
  return Interval{version.timestamp, successor->timestamp};
}

void assign_valid_intervals(Corpus::VersionChain& chain) {
  for (std::size_t i = 0; i < chain.size(); ++i)
    chain[i].valid = valid_interval(chain[i], i + 1 < chain.size() ? &chain[i + 1] : nullptr);
}

std::size_t Corpus::version_count() const {
  std::size_t n = 0;
  for (const auto& [id, chain] : events) n += chain.size();
  return n;
}

const Corpus::VersionChain* Corpus::find(const EventId& id) const {
  auto it = events.find(id);
  return it == events.end() ? nullptr : &it->second;
}

Instant Corpus::horizon() const {
  Instant h{};
  for (const auto& s : snapshots) h = std::max(h, s.crawl_time);
  for (const auto& [id, chain] : events)
    if (!chain.empty()) h = std::max(h, chain.back().timestamp);
  return h;
}

}  // namespace tscdn

#include "store/stats.hpp"

#include <cmath>
#include <set>

namespace tscdn {

StatsClass stats_class(MediaKind kind) {
  switch (kind) {
    case MediaKind::video: return StatsClass::video;
    case MediaKind::image: return StatsClass::image;
    case MediaKind::css:
    case MediaKind::js: return StatsClass::css_js;
    default: return StatsClass::misc;
  }
}

std::string_view stats_class_name(StatsClass c) {
  switch (c) {
    case StatsClass::video: return "video";
    case StatsClass::image: return "image";
    case StatsClass::css_js: return "css_js";
    case StatsClass::misc: return "misc";
  }
  return "misc";
}

double decrease_percentage(std::uint64_t before, std::uint64_t after) {
  if (before == 0) return 0.0;
  return 100.0 * (static_cast<double>(before) - static_cast<double>(after)) /
         static_cast<double>(before);
}

double decrease_percentage_one_decimal(std::uint64_t before, std::uint64_t after) {
  if (before == 0 || after >= before) return 0.0;
  unsigned __int128 tenths = static_cast<unsigned __int128>(before - after) * 1000u / before;
  return static_cast<double>(static_cast<std::uint64_t>(tenths)) / 10.0;
}

double ClassStats::decrease_pct_reported() const {
  return decrease_percentage_one_decimal(bytes_before, bytes_after);
}

ArchiveStats compute_stats(std::span<const InventoryItem> before,
                           std::span<const InventoryItem> after) {
  ArchiveStats s;
  for (const auto& item : before) {
    auto& c = s.classes[static_cast<std::size_t>(stats_class(item.kind))];
    ++c.items_before;
    c.bytes_before += item.size_bytes;
  }
  for (const auto& item : after) {
    auto& c = s.classes[static_cast<std::size_t>(stats_class(item.kind))];
    ++c.items_after;
    c.bytes_after += item.size_bytes;
  }
  for (auto& c : s.classes) {
    c.decrease_pct = decrease_percentage(c.bytes_before, c.bytes_after);
    s.total.items_before += c.items_before;
    s.total.items_after += c.items_after;
    s.total.bytes_before += c.bytes_before;
    s.total.bytes_after += c.bytes_after;
  }
  s.total.decrease_pct = decrease_percentage(s.total.bytes_before, s.total.bytes_after);
  return s;
}

std::vector<InventoryItem> inventory_before(const ContentStore& store,
                                            std::optional<std::string_view> archive_id) {
  std::vector<InventoryItem> items;
  for (const auto& [archive, entries] : store.dictionaries()) {
    if (archive_id && archive != *archive_id) continue;
    for (const auto& [path, target] : entries) {
      if (!target) continue;
      if (const StoredObject* obj = store.find(*target)) items.push_back({obj->kind, obj->size_bytes});
    }
  }
  return items;
}

std::vector<InventoryItem> inventory_after(const ContentStore& store,
                                           std::optional<std::string_view> archive_id) {
  std::set<std::string> names;
  for (const auto& [archive, entries] : store.dictionaries()) {
    if (archive_id && archive != *archive_id) continue;
    for (const auto& [path, target] : entries)
      if (target) names.insert(*target);
  }
  std::vector<InventoryItem> items;
  for (const auto& name : names)
    if (const StoredObject* obj = store.find(name)) items.push_back({obj->kind, obj->size_bytes});
  return items;
}

namespace {

nlohmann::ordered_json class_json(const ClassStats& c) {
  nlohmann::ordered_json j;
  j["items_before"] = c.items_before;
  j["items_after"] = c.items_after;
  j["bytes_before"] = c.bytes_before;
  j["bytes_after"] = c.bytes_after;
  j["decrease_pct"] = c.decrease_pct_reported();
  j["decrease_pct_exact"] = c.decrease_pct;
  return j;
}

}  // namespace

nlohmann::ordered_json to_json(const ArchiveStats& stats) {
  nlohmann::ordered_json j;
  for (std::size_t i = 0; i < kStatsClassCount; ++i)
    j[std::string(stats_class_name(static_cast<StatsClass>(i)))] = class_json(stats.classes[i]);
  j["total"] = class_json(stats.total);
  return j;
}

}  // namespace tscdn

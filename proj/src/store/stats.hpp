#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ingest/links.hpp"
#include "store/content_store.hpp"

namespace tscdn {

enum class StatsClass { video, image, css_js, misc };
inline constexpr std::size_t kStatsClassCount = 4;

StatsClass stats_class(MediaKind kind);
std::string_view stats_class_name(StatsClass c);

struct InventoryItem {
  MediaKind kind = MediaKind::other;
  std::uint64_t size_bytes = 0;
};

struct ClassStats {
  std::uint64_t items_before = 0;
  std::uint64_t items_after = 0;
  std::uint64_t bytes_before = 0;
  std::uint64_t bytes_after = 0;
  double decrease_pct = 0.0;  // exact: 100 * (before - after) / before

  // Truncated (not rounded) to one decimal place, computed in integer
  // arithmetic on byte counts.
  double decrease_pct_reported() const;
};

struct ArchiveStats {
  std::array<ClassStats, kStatsClassCount> classes{};
  ClassStats total;

  const ClassStats& at(StatsClass c) const { return classes[static_cast<std::size_t>(c)]; }
};

double decrease_percentage(std::uint64_t bytes_before, std::uint64_t bytes_after);
double decrease_percentage_one_decimal(std::uint64_t bytes_before, std::uint64_t bytes_after);

ArchiveStats compute_stats(std::span<const InventoryItem> before, std::span<const InventoryItem> after);

// Inventories derived from the master index. "Before" counts every linked
// input file (one per dictionary entry that resolved); "after" counts the
// distinct stored objects those entries reference. With `archive_id` set,
// both are restricted to that archive.
std::vector<InventoryItem> inventory_before(const ContentStore& store,
                                            std::optional<std::string_view> archive_id = {});
std::vector<InventoryItem> inventory_after(const ContentStore& store,
                                           std::optional<std::string_view> archive_id = {});

nlohmann::ordered_json to_json(const ArchiveStats& stats);

}  // namespace tscdn

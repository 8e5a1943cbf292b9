#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace tscdn {

// All instants are UTC with one-second resolution.
using Instant = std::chrono::sys_seconds;

struct FixedOffset {
  std::chrono::minutes offset{0};

  // "+03:30", "-05:00", "Z", "+0330".
  static std::optional<FixedOffset> parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const FixedOffset&, const FixedOffset&) = default;
};

// Local wall clock of the exports the tool was first written for.
inline constexpr FixedOffset kDefaultExportOffset{std::chrono::minutes{210}};

std::string format_iso(Instant t);

// ISO-8601 date or date-time. A value without an explicit zone designator is
// read as wall-clock time at `assumed`.
std::optional<Instant> parse_iso(std::string_view text, FixedOffset assumed = {});

Instant make_instant(int year, unsigned month, unsigned day, int hour = 0,
                     int minute = 0, int second = 0);

std::chrono::sys_days utc_day(Instant t);
std::chrono::sys_days local_day(Instant t, FixedOffset zone);

Instant now_utc();

}  // namespace tscdn

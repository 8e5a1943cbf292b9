#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "corpus/event.hpp"
#include "index/query.hpp"
#include "store/content_store.hpp"

namespace tscdn {

class Engine;

enum class Granularity { day, week, month };

std::string_view granularity_name(Granularity g);
std::optional<Granularity> parse_granularity(std::string_view text);

// Start of the UTC calendar unit containing `t`; weeks start on Monday.
Instant bucket_start(Instant t, Granularity g);
Instant next_bucket(Instant start, Granularity g);

struct TrendBucket {
  Instant start{};
  std::size_t count = 0;
  double mean_tf_ief_sum = 0.0;

  friend bool operator==(const TrendBucket&, const TrendBucket&) = default;
};

struct TrendSeries {
  Instant from{};
  Instant to{};
  Granularity granularity = Granularity::day;
  std::map<std::string, std::vector<TrendBucket>> channels;
};

// Buckets results by the UTC calendar unit of their timestamp. Every listed
// channel gets the full contiguous run of buckets covering [from, to].
TrendSeries bucket_results(const std::vector<ScoredEvent>& results, const std::vector<std::string>& channels,
                           Instant from, Instant to, Granularity g);

// Runs the query (all matches, occurrence semantics) and buckets it.
TrendSeries trend_series(const Engine& engine, QuerySpec q, Granularity g);

struct WeekendCounts {
  std::size_t wednesday = 0;
  std::size_t thursday = 0;
  std::size_t friday = 0;
  std::size_t saturday = 0;

  std::size_t thursday_friday() const { return thursday + friday; }
  friend bool operator==(const WeekendCounts&, const WeekendCounts&) = default;
};

struct WeekendWindow {
  std::vector<std::chrono::year_month> months;
  // month index -> channel -> counts
  std::vector<std::map<std::string, WeekendCounts>> rows;
  std::map<std::string, WeekendCounts> totals;
};

// "YYYY-MM", "YYYY-MM..YYYY-MM" or a comma-separated list of either.
// Throws Error(invalid_argument) on malformed or repeated months.
std::vector<std::chrono::year_month> parse_months(std::string_view text);

// Counts matches by weekday in `zone`, per local calendar month.
WeekendWindow weekend_window(const std::vector<ScoredEvent>& results, const std::vector<std::string>& channels,
                             const std::vector<std::chrono::year_month>& months, FixedOffset zone);
WeekendWindow weekend_window(const Engine& engine, QuerySpec q, const std::vector<std::chrono::year_month>& months);

struct DailyAverage {
  std::size_t matches = 0;
  std::int64_t days = 0;
  double average = 0.0;
  std::int64_t rounded = 0;
};

// Whole UTC calendar days touched by [from, to], both ends included.
std::int64_t calendar_days(Instant from, Instant to);
DailyAverage daily_average(std::size_t matches, std::int64_t days);
std::map<std::string, DailyAverage> daily_average(const Engine& engine, QuerySpec q);

struct ChannelRanking {
  std::string channel;
  std::string name;
  std::size_t posts = 0;
  std::map<std::string, std::size_t> media_before;  // by kind name
  std::map<std::string, std::size_t> media_after;
  std::size_t total_media_before = 0;
  std::size_t total_media_after = 0;
  std::uint64_t bytes_before = 0;
  std::uint64_t bytes_after = 0;
};

// Posts per channel with the channel's media inventory before and after
// deduplication, most posts first.
std::vector<ChannelRanking> channel_rankings(const Corpus& corpus, const ContentStore& store);

std::vector<std::string> result_channels(const Corpus& corpus, const QuerySpec& q);

nlohmann::ordered_json to_json(const TrendSeries& s);
nlohmann::ordered_json to_json(const WeekendWindow& w);
nlohmann::ordered_json to_json(const std::map<std::string, DailyAverage>& avg);
nlohmann::ordered_json to_json(const std::vector<ChannelRanking>& ranking);

}  // namespace tscdn

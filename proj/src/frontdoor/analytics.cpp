#include "frontdoor/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "common/error.hpp"
#include "frontdoor/engine.hpp"

namespace tscdn {

using namespace std::chrono;
using nlohmann::ordered_json;

std::string_view granularity_name(Granularity g) {
  switch (g) {
    case Granularity::day: return "day";
    case Granularity::week: return "week";
    case Granularity::month: return "month";
  }
  return "day";
}

std::optional<Granularity> parse_granularity(std::string_view text) {
  if (text == "day") return Granularity::day;
  if (text == "week") return Granularity::week;
  if (text == "month") return Granularity::month;
  return std::nullopt;
}

Instant bucket_start(Instant t, Granularity g) {
  sys_days day = floor<days>(t);
  switch (g) {
    case Granularity::day: return day;
    case Granularity::week: return sys_days{day - (weekday{day} - Monday)};
    case Granularity::month: {
      year_month_day ymd{day};
      return sys_days{ymd.year() / ymd.month() / 1};
    }
  }
  return day;
}

Instant next_bucket(Instant start, Granularity g) {
  switch (g) {
    case Granularity::day: return start + days{1};
    case Granularity::week: return start + days{7};
    case Granularity::month: {
      year_month_day ymd{floor<days>(start)};
      year_month next = ymd.year() / ymd.month() + months{1};
      return sys_days{next / 1};
    }
  }
  return start + days{1};
}

std::vector<std::string> result_channels(const Corpus& corpus, const QuerySpec& q) {
  if (!q.channels.empty()) return {q.channels.begin(), q.channels.end()};
  std::set<std::string> all;
  for (const auto& [slug, name] : corpus.channel_names) all.insert(slug);
  for (const auto& [id, chain] : corpus.events) all.insert(id.channel);
  return {all.begin(), all.end()};
}

TrendSeries bucket_results(const std::vector<ScoredEvent>& results, const std::vector<std::string>& channels,
                           Instant from, Instant to, Granularity g) {
  TrendSeries s;
  s.from = from;
  s.to = to;
  s.granularity = g;
  std::vector<TrendBucket> empty;
  for (Instant b = bucket_start(from, g); b <= to; b = next_bucket(b, g)) empty.push_back({b, 0, 0.0});
  for (const auto& ch : channels) s.channels[ch] = empty;

  std::map<std::string, std::vector<double>> sums;
  for (const auto& [ch, buckets] : s.channels) sums[ch].assign(buckets.size(), 0.0);
  for (const auto& r : results) {
    auto it = s.channels.find(r.event.channel);
    if (it == s.channels.end() || it->second.empty()) continue;
    auto& buckets = it->second;
    Instant start = bucket_start(r.timestamp, g);
    auto pos = std::lower_bound(buckets.begin(), buckets.end(), start,
                                [](const TrendBucket& b, Instant t) { return b.start < t; });
    if (pos == buckets.end() || pos->start != start) continue;
    ++pos->count;
    sums[r.event.channel][static_cast<std::size_t>(pos - buckets.begin())] += r.tf_ief_sum;
  }
  for (auto& [ch, buckets] : s.channels)
    for (std::size_t i = 0; i < buckets.size(); ++i)
      if (buckets[i].count) buckets[i].mean_tf_ief_sum = sums[ch][i] / static_cast<double>(buckets[i].count);
  return s;
}

namespace {

QuerySpec all_matches(QuerySpec q) {
  q.mode = TemporalMode::occurrence;
  q.limit.reset();
  q.offset = 0;
  return q;
}

}  // namespace

TrendSeries trend_series(const Engine& engine, QuerySpec q, Granularity g) {
  q = all_matches(std::move(q));
  ResolvedQuery r = engine.resolve(q);
  q.from = r.from;
  q.to = r.to;
  return bucket_results(engine.search(q), result_channels(engine.corpus(), q), r.from, r.to, g);
}

std::vector<year_month> parse_months(std::string_view text) {
  auto parse_one = [](std::string_view s) -> year_month {
    auto bad = [&] { return Error(Errc::invalid_argument, "malformed month '" + std::string(s) + "', expected YYYY-MM"); };
    if (s.size() != 7 || s[4] != '-') throw bad();
    int y = 0;
    unsigned m = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      if (s[i] < '0' || s[i] > '9') throw bad();
      y = y * 10 + (s[i] - '0');
    }
    for (std::size_t i = 5; i < 7; ++i) {
      if (s[i] < '0' || s[i] > '9') throw bad();
      m = m * 10 + static_cast<unsigned>(s[i] - '0');
    }
    year_month ym{year{y}, month{m}};
    if (!ym.ok()) throw bad();
    return ym;
  };

  std::vector<year_month> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    std::string_view item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      auto range = item.find("..");
      if (range == std::string_view::npos) {
        out.push_back(parse_one(item));
      } else {
        year_month a = parse_one(item.substr(0, range));
        year_month b = parse_one(item.substr(range + 2));
        if (b < a) throw Error(Errc::invalid_argument, "month range ends before it starts: " + std::string(item));
        for (year_month m = a; m <= b; m += months{1}) out.push_back(m);
      }
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw Error(Errc::invalid_argument, "no months given");
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw Error(Errc::invalid_argument, "months overlap");
  return out;
}

WeekendWindow weekend_window(const std::vector<ScoredEvent>& results, const std::vector<std::string>& channels,
                             const std::vector<year_month>& month_list, FixedOffset zone) {
  WeekendWindow w;
  w.months = month_list;
  std::map<std::string, WeekendCounts> zero;
  for (const auto& ch : channels) zero[ch] = {};
  w.rows.assign(month_list.size(), zero);
  w.totals = zero;
  for (const auto& r : results) {
    sys_days local = local_day(r.timestamp, zone);
    year_month_day ymd{local};
    auto mit = std::lower_bound(w.months.begin(), w.months.end(), ymd.year() / ymd.month());
    if (mit == w.months.end() || *mit != ymd.year() / ymd.month()) continue;
    auto& row = w.rows[static_cast<std::size_t>(mit - w.months.begin())];
    auto cit = row.find(r.event.channel);
    if (cit == row.end()) continue;
    WeekendCounts& c = cit->second;
    WeekendCounts& t = w.totals[r.event.channel];
    weekday wd{local};
    if (wd == Wednesday) ++c.wednesday, ++t.wednesday;
    else if (wd == Thursday) ++c.thursday, ++t.thursday;
    else if (wd == Friday) ++c.friday, ++t.friday;
    else if (wd == Saturday) ++c.saturday, ++t.saturday;
  }
  return w;
}

WeekendWindow weekend_window(const Engine& engine, QuerySpec q, const std::vector<year_month>& month_list) {
  if (month_list.empty()) throw Error(Errc::invalid_argument, "no months given");
  q = all_matches(std::move(q));
  seconds offset = engine.zone().offset;
  year_month last = month_list.back() + months{1};
  q.from = Instant{sys_days{month_list.front() / 1}} - offset;
  q.to = Instant{sys_days{last / 1}} - offset - seconds{1};
  return weekend_window(engine.search(q), result_channels(engine.corpus(), q), month_list, engine.zone());
}

std::int64_t calendar_days(Instant from, Instant to) {
  if (to < from) return 0;
  return (floor<days>(to) - floor<days>(from)).count() + 1;
}

DailyAverage daily_average(std::size_t matches, std::int64_t day_count) {
  if (day_count < 1) throw Error(Errc::invalid_interval, "daily average needs an interval of at least one day");
  DailyAverage a;
  a.matches = matches;
  a.days = day_count;
  a.average = static_cast<double>(matches) / static_cast<double>(day_count);
  a.rounded = std::llround(a.average);
  return a;
}

std::map<std::string, DailyAverage> daily_average(const Engine& engine, QuerySpec q) {
  q = all_matches(std::move(q));
  ResolvedQuery r = engine.resolve(q);
  q.from = r.from;
  q.to = r.to;
  std::map<std::string, std::size_t> counts;
  for (const auto& ch : result_channels(engine.corpus(), q)) counts[ch] = 0;
  for (const auto& res : engine.search(q)) ++counts[res.event.channel];
  std::int64_t n = calendar_days(r.from, r.to);
  std::map<std::string, DailyAverage> out;
  for (const auto& [ch, c] : counts) out[ch] = daily_average(c, n);
  return out;
}

std::vector<ChannelRanking> channel_rankings(const Corpus& corpus, const ContentStore& store) {
  std::map<std::string, ChannelRanking> by_channel;
  auto entry = [&](const std::string& slug) -> ChannelRanking& {
    auto& r = by_channel[slug];
    if (r.channel.empty()) {
      r.channel = slug;
      auto it = corpus.channel_names.find(slug);
      r.name = it == corpus.channel_names.end() ? slug : it->second;
    }
    return r;
  };
  for (const auto& [slug, name] : corpus.channel_names) entry(slug);
  for (const auto& [id, chain] : corpus.events) ++entry(id.channel).posts;

  std::map<std::string, std::set<std::string>> stored_by_channel;
  for (const auto& snap : corpus.snapshots) {
    auto dict = store.dictionaries().find(snap.archive_id);
    if (dict == store.dictionaries().end()) continue;
    ChannelRanking& r = entry(snap.channel_slug);
    for (const auto& [path, name] : dict->second) {
      if (!name) continue;
      const StoredObject* obj = store.find(*name);
      if (!obj) continue;
      ++r.media_before[std::string(kind_name(obj->kind))];
      ++r.total_media_before;
      r.bytes_before += obj->size_bytes;
      stored_by_channel[snap.channel_slug].insert(*name);
    }
  }
  for (const auto& [slug, names] : stored_by_channel) {
    ChannelRanking& r = entry(slug);
    for (const auto& name : names) {
      const StoredObject* obj = store.find(name);
      ++r.media_after[std::string(kind_name(obj->kind))];
      ++r.total_media_after;
      r.bytes_after += obj->size_bytes;
    }
  }

  std::vector<ChannelRanking> out;
  for (auto& [slug, r] : by_channel) out.push_back(std::move(r));
  std::stable_sort(out.begin(), out.end(),
                   [](const ChannelRanking& a, const ChannelRanking& b) { return a.posts > b.posts; });
  return out;
}

namespace {

std::string month_label(year_month ym) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u", static_cast<int>(ym.year()), static_cast<unsigned>(ym.month()));
  return buf;
}

ordered_json counts_json(const WeekendCounts& c) {
  ordered_json j;
  j["wednesday"] = c.wednesday;
  j["thursday"] = c.thursday;
  j["friday"] = c.friday;
  j["thursday_friday"] = c.thursday_friday();
  j["saturday"] = c.saturday;
  return j;
}

}  // namespace

ordered_json to_json(const TrendSeries& s) {
  ordered_json j;
  j["from"] = format_iso(s.from);
  j["to"] = format_iso(s.to);
  j["granularity"] = granularity_name(s.granularity);
  ordered_json series = ordered_json::array();
  for (const auto& [ch, buckets] : s.channels) {
    ordered_json b = ordered_json::array();
    for (const auto& bucket : buckets)
      b.push_back({{"start", format_iso(bucket.start)}, {"count", bucket.count}, {"mean_tf_ief_sum", bucket.mean_tf_ief_sum}});
    series.push_back({{"channel", ch}, {"buckets", std::move(b)}});
  }
  j["series"] = std::move(series);
  return j;
}

ordered_json to_json(const WeekendWindow& w) {
  ordered_json j;
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < w.months.size(); ++i) {
    ordered_json chans = ordered_json::object();
    for (const auto& [ch, c] : w.rows[i]) chans[ch] = counts_json(c);
    rows.push_back({{"month", month_label(w.months[i])}, {"channels", std::move(chans)}});
  }
  j["months"] = std::move(rows);
  ordered_json totals = ordered_json::object();
  for (const auto& [ch, c] : w.totals) totals[ch] = counts_json(c);
  j["totals"] = std::move(totals);
  return j;
}

ordered_json to_json(const std::map<std::string, DailyAverage>& avg) {
  ordered_json j = ordered_json::object();
  for (const auto& [ch, a] : avg)
    j[ch] = {{"matches", a.matches}, {"days", a.days}, {"average", a.average}, {"rounded", a.rounded}};
  return j;
}

ordered_json to_json(const std::vector<ChannelRanking>& ranking) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : ranking) {
    ordered_json j;
    j["channel"] = r.channel;
    j["name"] = r.name;
    j["posts"] = r.posts;
    j["media_before"] = r.media_before;
    j["media_after"] = r.media_after;
    j["total_media_before"] = r.total_media_before;
    j["total_media_after"] = r.total_media_after;
    j["bytes_before"] = r.bytes_before;
    j["bytes_after"] = r.bytes_after;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace tscdn

#include "common/time.hpp"

#include <cctype>
#include <cstdio>

namespace tscdn {

namespace {

bool read_digits(std::string_view s, std::size_t& pos, std::size_t count, int& out) {
  if (pos + count > s.size()) return false;
  int v = 0;
  for (std::size_t i = 0; i < count; ++i) {
    char c = s[pos + i];
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    v = v * 10 + (c - '0');
  }
  pos += count;
  out = v;
  return true;
}

bool expect(std::string_view s, std::size_t& pos, char c) {
  if (pos < s.size() && s[pos] == c) {
    ++pos;
    return true;
  }
  return false;
}

bool valid_civil(int y, int mo, int d, int h, int mi, int sec) {
  using namespace std::chrono;
  year_month_day ymd{year{y} / month{static_cast<unsigned>(mo)} / day{static_cast<unsigned>(d)}};
  return ymd.ok() && h >= 0 && h < 24 && mi >= 0 && mi < 60 && sec >= 0 && sec < 60;
}

}  // namespace

std::optional<FixedOffset> FixedOffset::parse(std::string_view text) {
  if (text == "Z" || text == "z") return FixedOffset{};
  if (text.empty() || (text[0] != '+' && text[0] != '-')) return std::nullopt;
  int sign = text[0] == '-' ? -1 : 1;
  std::size_t pos = 1;
  int hh = 0, mm = 0;
  if (!read_digits(text, pos, 2, hh)) return std::nullopt;
  if (pos < text.size()) {
    expect(text, pos, ':');
    if (!read_digits(text, pos, 2, mm)) return std::nullopt;
  }
  if (pos != text.size() || hh > 23 || mm > 59) return std::nullopt;
  return FixedOffset{std::chrono::minutes{sign * (hh * 60 + mm)}};
}

std::string FixedOffset::to_string() const {
  auto total = offset.count();
  char sign = total < 0 ? '-' : '+';
  if (total < 0) total = -total;
  char buf[16];
  std::snprintf(buf, sizeof buf, "%c%02d:%02d", sign, static_cast<int>(total / 60),
                static_cast<int>(total % 60));
  return buf;
}

std::string format_iso(Instant t) {
  using namespace std::chrono;
  auto day = floor<days>(t);
  year_month_day ymd{day};
  hh_mm_ss hms{t - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

Instant make_instant(int y, unsigned mo, unsigned d, int h, int mi, int s) {
  using namespace std::chrono;
  sys_days day{year{y} / month{mo} / std::chrono::day{d}};
  return day + hours{h} + minutes{mi} + seconds{s};
}

std::optional<Instant> parse_iso(std::string_view s, FixedOffset assumed) {
  std::size_t pos = 0;
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
  if (!read_digits(s, pos, 4, y) || !expect(s, pos, '-') || !read_digits(s, pos, 2, mo) ||
      !expect(s, pos, '-') || !read_digits(s, pos, 2, d))
    return std::nullopt;
  FixedOffset zone = assumed;
  if (pos < s.size()) {
    if (s[pos] != 'T' && s[pos] != 't' && s[pos] != ' ') return std::nullopt;
    ++pos;
    if (!read_digits(s, pos, 2, h) || !expect(s, pos, ':') || !read_digits(s, pos, 2, mi))
      return std::nullopt;
    if (expect(s, pos, ':')) {
      if (!read_digits(s, pos, 2, sec)) return std::nullopt;
      if (expect(s, pos, '.')) {
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) return std::nullopt;
      }
    }
    if (pos < s.size()) {
      auto z = FixedOffset::parse(s.substr(pos));
      if (!z) return std::nullopt;
      zone = *z;
      pos = s.size();
    }
  }
  if (!valid_civil(y, mo, d, h, mi, sec)) return std::nullopt;
  return make_instant(y, static_cast<unsigned>(mo), static_cast<unsigned>(d), h, mi, sec) -
         zone.offset;
}

std::chrono::sys_days utc_day(Instant t) { return std::chrono::floor<std::chrono::days>(t); }

std::chrono::sys_days local_day(Instant t, FixedOffset zone) {
  return std::chrono::floor<std::chrono::days>(t + zone.offset);
}

Instant now_utc() {
  return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
}

}  // namespace tscdn

#include "adl/timeutil.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace adl {

namespace {

bool read_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  auto first = s.data() + pos;
  auto [ptr, ec] = std::from_chars(first, first + len, out);
  return ec == std::errc() && ptr == first + len;
}

}  // namespace

std::optional<Timestamp> parse_iso8601(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.size() < 19) return std::nullopt;
  int y, mo, d, h, mi, sec;
  if (!read_int(s, 0, 4, y) || s[4] != '-' || !read_int(s, 5, 2, mo) || s[7] != '-' ||
      !read_int(s, 8, 2, d) || (s[10] != 'T' && s[10] != ' ') || !read_int(s, 11, 2, h) || s[13] != ':' ||
      !read_int(s, 14, 2, mi) || s[16] != ':' || !read_int(s, 17, 2, sec))
    return std::nullopt;
  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
  }
  if (pos < s.size() && s[pos] == 'Z') ++pos;
  if (pos != s.size()) return std::nullopt;
  if (h > 23 || mi > 59 || sec > 59) return std::nullopt;

  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  const auto days = sys_days(ymd).time_since_epoch().count();
  return static_cast<Timestamp>(days) * kSecondsPerDay + h * 3600 + mi * 60 + sec;
}

std::string format_iso8601(Timestamp t) {
  using namespace std::chrono;
  const auto days = day_number(t);
  const Timestamp rem = t - days * kSecondsPerDay;
  const year_month_day ymd{sys_days{std::chrono::days{days}}};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), static_cast<int>(rem / 3600),
                static_cast<int>(rem % 3600 / 60), static_cast<int>(rem % 60));
  return buf;
}

std::int64_t day_number(Timestamp t) {
  return t >= 0 ? t / kSecondsPerDay : -((-t + kSecondsPerDay - 1) / kSecondsPerDay);
}

int minute_of_day(Timestamp t) { return static_cast<int>((t - day_number(t) * kSecondsPerDay) / 60); }

DayKind day_kind(Timestamp t) {
  using namespace std::chrono;
  const weekday wd{sys_days{days{day_number(t)}}};
  return (wd == Saturday || wd == Sunday) ? DayKind::weekend : DayKind::weekday;
}

std::string_view to_string(DayKind k) { return k == DayKind::weekday ? "weekday" : "weekend"; }

std::optional<DayKind> parse_day_kind(std::string_view s) {
  if (s == "weekday") return DayKind::weekday;
  if (s == "weekend") return DayKind::weekend;
  return std::nullopt;
}

}  // namespace adl

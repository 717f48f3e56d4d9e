#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace adl {

// Seconds since the Unix epoch, UTC.
using Timestamp = std::int64_t;

constexpr Timestamp kSecondsPerDay = 86400;
constexpr int kMinutesPerDay = 1440;

enum class DayKind { weekday, weekend };

// Accepts "YYYY-MM-DD[T ]HH:MM:SS[.fff][Z]". Fractional seconds are truncated.
std::optional<Timestamp> parse_iso8601(std::string_view text);
std::string format_iso8601(Timestamp t);  // YYYY-MM-DDTHH:MM:SSZ

int minute_of_day(Timestamp t);
std::int64_t day_number(Timestamp t);  // days since epoch, floored
DayKind day_kind(Timestamp t);

std::string_view to_string(DayKind k);
std::optional<DayKind> parse_day_kind(std::string_view s);

}  // namespace adl

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace botscan {

// Days since 1970-01-01 for a proleptic Gregorian civil date.
int64_t days_from_civil(int64_t y, unsigned m, unsigned d);
void civil_from_days(int64_t days, int64_t& y, unsigned& m, unsigned& d);

// Strict "YYYY-MM-DDTHH:MM:SSZ" only. No offsets, no fractional seconds.
std::optional<int64_t> parse_rfc3339_utc(std::string_view s);
std::string format_rfc3339_utc(int64_t epoch_s);

int64_t utc_timestamp(int64_t y, unsigned mo, unsigned d,
                      unsigned h = 0, unsigned mi = 0, unsigned s = 0);

}  // namespace botscan

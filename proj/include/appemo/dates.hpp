#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace appemo {

using Date = std::chrono::year_month_day;

// Accepts "YYYY-MM-DD", optionally followed by a time part ("T..." or " ...")
// which is ignored. Returns nullopt for anything else or an invalid day.
std::optional<Date> parse_date(std::string_view s);
std::string format_date(const Date& d);

// Signed day difference b - a.
long days_between(const Date& a, const Date& b);
Date add_days(const Date& d, long days);
Date today_utc();

}  // namespace appemo

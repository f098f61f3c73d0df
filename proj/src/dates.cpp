#include "appemo/dates.hpp"

#include <charconv>
#include <cstdio>

namespace appemo {

namespace {

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::optional<Date> parse_date(std::string_view s) {
  if (s.size() > 10) {
    if (s[10] != 'T' && s[10] != ' ') return std::nullopt;
    s = s.substr(0, 10);
  }
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_int(s.substr(0, 4), y) || !parse_int(s.substr(5, 2), m) ||
      !parse_int(s.substr(8, 2), d)) {
    return std::nullopt;
  }
  const Date date{std::chrono::year(y), std::chrono::month(m),
                  std::chrono::day(d)};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()),
                static_cast<unsigned>(d.day()));
  return buf;
}

long days_between(const Date& a, const Date& b) {
  return (std::chrono::sys_days(b) - std::chrono::sys_days(a)).count();
}

Date add_days(const Date& d, long days) {
  return Date{std::chrono::sys_days(d) + std::chrono::days(days)};
}

Date today_utc() {
  return Date{std::chrono::floor<std::chrono::days>(
      std::chrono::system_clock::now())};
}

}  // namespace appemo

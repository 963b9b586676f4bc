#pragma once

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace ocw {

/// Calendar date with day precision (proleptic Gregorian).
class Date {
 public:
  constexpr Date() = default;
  Date(int year, unsigned month, unsigned day);
  explicit Date(std::chrono::sys_days days);

  /// Parses `YYYY-MM-DD`. Throws InputError on malformed or impossible dates.
  static Date parse(std::string_view text);

  int year() const { return static_cast<int>(ymd_.year()); }
  unsigned month() const { return static_cast<unsigned>(ymd_.month()); }
  unsigned day() const { return static_cast<unsigned>(ymd_.day()); }
  std::chrono::sys_days days() const { return std::chrono::sys_days{ymd_}; }

  /// Same month/day `n` years later; Feb 29 clamps to Feb 28 in common years.
  Date plus_years(int n) const;

  std::string to_string() const;

  friend bool operator==(const Date& a, const Date& b) { return a.days() == b.days(); }
  friend std::strong_ordering operator<=>(const Date& a, const Date& b) {
    return a.days().time_since_epoch().count() <=> b.days().time_since_epoch().count();
  }

 private:
  std::chrono::year_month_day ymd_{std::chrono::year{1970}, std::chrono::January,
                                   std::chrono::day{1}};
};

/// UTC instant with second precision, used for probe samples.
using Timestamp = std::chrono::sys_seconds;

/// Parses `YYYY-MM-DDTHH:MM:SSZ` (a bare date means midnight UTC).
Timestamp parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);

/// Elapsed time from `from` to `to` in calendar years: whole anniversaries
/// plus the remaining days as a fraction of the following year's length.
/// Exactly 1.0 between the same day of consecutive years. Negative when
/// `to` precedes `from`.
double years_between(const Date& from, const Date& to);

}  // namespace ocw

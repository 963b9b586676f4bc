#include "ocwobs/date.hpp"

#include <charconv>
#include <cstdio>

#include "ocwobs/errors.hpp"

namespace ocw {

namespace {

using namespace std::chrono;

int parse_field(std::string_view text, std::size_t pos, std::size_t len, std::string_view whole) {
  int value = 0;
  const char* first = text.data() + pos;
  const char* last = first + len;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw InputError("malformed date/time '" + std::string(whole) + "'");
  }
  return value;
}

year_month_day checked_ymd(int y, unsigned m, unsigned d, std::string_view whole) {
  year_month_day ymd{year{y}, month{m}, day{d}};
  if (!ymd.ok()) {
    throw InputError("invalid calendar date '" + std::string(whole) + "'");
  }
  return ymd;
}

}  // namespace

Date::Date(int y, unsigned m, unsigned d) : ymd_(checked_ymd(y, m, d, "")) {}

Date::Date(sys_days days) : ymd_(days) {}

Date Date::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw InputError("malformed date '" + std::string(text) + "', expected YYYY-MM-DD");
  }
  const int y = parse_field(text, 0, 4, text);
  const int m = parse_field(text, 5, 2, text);
  const int d = parse_field(text, 8, 2, text);
  Date out;
  out.ymd_ = checked_ymd(y, static_cast<unsigned>(m), static_cast<unsigned>(d), text);
  return out;
}

Date Date::plus_years(int n) const {
  year_month_day shifted{ymd_.year() + years{n}, ymd_.month(), ymd_.day()};
  if (!shifted.ok()) {
    shifted = year_month_day{shifted.year(), shifted.month(), std::chrono::day{28}};
  }
  Date out;
  out.ymd_ = shifted;
  return out;
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year(), month(), day());
  return buf;
}

Timestamp parse_timestamp(std::string_view text) {
  if (text.size() == 10) {
    return Timestamp{Date::parse(text).days()};
  }
  if (text.size() != 20 || text[10] != 'T' || text[13] != ':' || text[16] != ':' ||
      text[19] != 'Z') {
    throw InputError("malformed timestamp '" + std::string(text) +
                     "', expected YYYY-MM-DDTHH:MM:SSZ");
  }
  const Date date = Date::parse(text.substr(0, 10));
  const int h = parse_field(text, 11, 2, text);
  const int mi = parse_field(text, 14, 2, text);
  const int s = parse_field(text, 17, 2, text);
  if (h > 23 || mi > 59 || s > 59) {
    throw InputError("invalid time of day in '" + std::string(text) + "'");
  }
  return Timestamp{date.days()} + hours{h} + minutes{mi} + seconds{s};
}

std::string format_timestamp(Timestamp t) {
  const auto day_start = floor<days>(t);
  const Date date{day_start};
  const hh_mm_ss<seconds> tod{t - day_start};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%sT%02d:%02d:%02dZ", date.to_string().c_str(),
                static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                static_cast<int>(tod.seconds().count()));
  return buf;
}

double years_between(const Date& from, const Date& to) {
  if (to < from) {
    return -years_between(to, from);
  }
  int whole = to.year() - from.year();
  if (from.plus_years(whole) > to) {
    --whole;
  }
  const Date anchor = from.plus_years(whole);
  const Date next = from.plus_years(whole + 1);
  const double rest = static_cast<double>((to.days() - anchor.days()).count());
  const double span = static_cast<double>((next.days() - anchor.days()).count());
  return whole + rest / span;
}

}  // namespace ocw

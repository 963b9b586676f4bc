#include "ocwobs/date.hpp"

#include <gtest/gtest.h>

#include "ocwobs/errors.hpp"

namespace ocw {
namespace {

TEST(Date, ParsesAndFormats) {
  const auto d = Date::parse("2014-12-31");
  EXPECT_EQ(d.year(), 2014);
  EXPECT_EQ(d.month(), 12u);
  EXPECT_EQ(d.day(), 31u);
  EXPECT_EQ(d.to_string(), "2014-12-31");
  EXPECT_EQ(Date(2008, 1, 5).to_string(), "2008-01-05");
}

TEST(Date, RejectsMalformedText) {
  for (const char* bad : {"2014-13-01", "2014-02-30", "2014/01/01", "14-01-01", "", "2014-1-1",
                          "2014-01-0x"}) {
    EXPECT_THROW(Date::parse(bad), InputError) << bad;
  }
}

TEST(Date, OrdersChronologically) {
  EXPECT_LT(Date(2010, 1, 1), Date(2010, 1, 2));
  EXPECT_LT(Date(2009, 12, 31), Date(2010, 1, 1));
  EXPECT_EQ(Date(2012, 2, 29), Date::parse("2012-02-29"));
}

TEST(Date, PlusYearsClampsLeapDay) {
  EXPECT_EQ(Date(2012, 2, 29).plus_years(1), Date(2013, 2, 28));
  EXPECT_EQ(Date(2012, 2, 29).plus_years(4), Date(2016, 2, 29));
  EXPECT_EQ(Date(2010, 6, 15).plus_years(-2), Date(2008, 6, 15));
}

TEST(Date, YearsBetweenIsCalendarAware) {
  EXPECT_DOUBLE_EQ(years_between(Date(2010, 1, 1), Date(2011, 1, 1)), 1.0);
  EXPECT_DOUBLE_EQ(years_between(Date(2011, 1, 1), Date(2014, 1, 1)), 3.0);
  // a leap year still counts as exactly one year
  EXPECT_DOUBLE_EQ(years_between(Date(2012, 1, 1), Date(2013, 1, 1)), 1.0);
  EXPECT_DOUBLE_EQ(years_between(Date(2013, 12, 31), Date(2014, 12, 31)), 1.0);
  EXPECT_NEAR(years_between(Date(2014, 1, 1), Date(2014, 7, 2)), 182.0 / 365.0, 1e-12);
  EXPECT_DOUBLE_EQ(years_between(Date(2014, 1, 1), Date(2014, 1, 1)), 0.0);
  EXPECT_DOUBLE_EQ(years_between(Date(2014, 1, 1), Date(2010, 1, 1)), -4.0);
}

TEST(Date, YearsBetweenIsMonotone) {
  const Date from(2001, 3, 7);
  double prev = -1;
  for (int k = 0; k < 4000; k += 13) {
    const Date to(from.days() + std::chrono::days{k});
    const double y = years_between(from, to);
    EXPECT_GT(y, prev);
    prev = y;
  }
}

TEST(Timestamp, RoundTrips) {
  const auto t = parse_timestamp("2014-10-31T12:30:05Z");
  EXPECT_EQ(format_timestamp(t), "2014-10-31T12:30:05Z");
  EXPECT_EQ(format_timestamp(parse_timestamp("2014-10-31")), "2014-10-31T00:00:00Z");
  EXPECT_THROW(parse_timestamp("2014-10-31 12:30:05"), InputError);
  EXPECT_THROW(parse_timestamp("2014-10-31T25:00:00Z"), InputError);
}

}  // namespace
}  // namespace ocw

#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace fisheco {

// Calendar date with day precision, formatted as ISO 8601 "YYYY-MM-DD".
struct Date {
  int year = 0;
  int month = 0;
  int day = 0;

  auto operator<=>(const Date&) const = default;

  std::string to_string() const;

  // Strict parse: four-digit year, two-digit month/day, calendar-valid.
  static std::optional<Date> parse(std::string_view text);
};

bool is_leap_year(int year);
int days_in_month(int year, int month);

}  // namespace fisheco

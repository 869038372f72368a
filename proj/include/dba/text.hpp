#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dba::text {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);

// Lower-cases, trims and collapses internal whitespace runs to one space.
// This is the join key for beverage names across files.
std::string name_key(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

// Splits on non-alphanumeric characters, lower-cased.
std::vector<std::string> words(std::string_view s);

// "HH:MM" -> minutes of day.
int parse_clock(std::string_view s);
std::string format_clock(int minutes);

// Round half to even at `decimals` places, as printed text.
std::string fixed_half_even(double value, int decimals);

// One-decimal rendering used for scores and ABV in canonical files.
std::string one_decimal(double value);

}  // namespace dba::text

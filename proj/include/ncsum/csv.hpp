#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace ncsum {

// %.17g with "inf", "-inf" and "nan" spelled out; round-trips every double.
std::string format_double(double x);

// Comma-separated row terminated by '\n'. Fields containing a comma, quote or
// newline are quoted RFC 4180 style.
std::string csv_row(const std::vector<std::string>& fields);
std::string csv_row(std::initializer_list<std::string_view> fields);

// Either a comma list "a,b" (one value is a list of one) or a range
// "start:stop:step" that includes stop when it is hit exactly. Range points
// are start + i*step in exact decimal arithmetic, rounded once to double.
std::vector<double> parse_grid(std::string_view text);

} // namespace ncsum

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace epscert {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

// Strict double parser; throws std::invalid_argument on trailing garbage.
double parse_double(std::string_view s);

// Split "a,b,c" into trimmed tokens; empty input gives an empty list.
std::vector<std::string> split_csv(std::string_view s, char sep = ',');

}  // namespace epscert

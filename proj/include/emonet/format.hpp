#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace emonet {

// Shortest decimal form that round-trips exactly; "inf", "-inf", "nan" for
// non-finite values.
std::string format_double(double v);

// Inverse of format_double. Throws DataError on malformed input.
double parse_double(std::string_view s);

std::uint64_t parse_uint(std::string_view s);

std::string to_hex(std::uint64_t v);

}  // namespace emonet

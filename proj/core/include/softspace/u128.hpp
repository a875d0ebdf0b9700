#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace softspace {

// Machine space sizes exceed 64 bits from (7,2) onward, so indices and
// space sizes are carried as 128-bit unsigned integers throughout.
using u128 = unsigned __int128;

std::string to_string(u128 value);

// Parses a decimal string. Throws ValidationError on empty input,
// non-digit characters, or overflow past 128 bits.
u128 parse_u128(std::string_view text);

} // namespace softspace

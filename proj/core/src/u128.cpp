#include "softspace/u128.hpp"

#include "softspace/errors.hpp"

namespace softspace {

std::string to_string(u128 value) {
    if (value == 0) {
        return "0";
    }
    char buf[40];
    int pos = 40;
    while (value > 0) {
        buf[--pos] = static_cast<char>('0' + static_cast<unsigned>(value % 10));
        value /= 10;
    }
    return std::string(buf + pos, buf + 40);
}

u128 parse_u128(std::string_view text) {
    if (text.empty()) {
        throw ValidationError("empty integer literal");
    }
    constexpr u128 kMax = ~static_cast<u128>(0);
    u128 value = 0;
    for (char c : text) {
        if (c < '0' || c > '9') {
            throw ValidationError("invalid digit '" + std::string(1, c) + "' in integer literal");
        }
        unsigned digit = static_cast<unsigned>(c - '0');
        if (value > (kMax - digit) / 10) {
            throw ValidationError("integer literal overflows 128 bits: " + std::string(text));
        }
        value = value * 10 + digit;
    }
    return value;
}

} // namespace softspace

#include "graceful/count.hpp"

#include <algorithm>
#include <ostream>

namespace graceful {

Count Count::parse(std::string_view text) {
    if (text.empty()) {
        throw std::invalid_argument("empty count literal");
    }
    Raw v = 0;
    for (char ch : text) {
        if (ch < '0' || ch > '9') {
            throw std::invalid_argument("malformed count literal: " + std::string(text));
        }
        if (__builtin_mul_overflow(v, Raw{10}, &v) ||
            __builtin_add_overflow(v, static_cast<Raw>(ch - '0'), &v)) {
            throw CountOverflow("count literal exceeds 128 bits: " + std::string(text));
        }
    }
    return from_raw(v);
}

std::string Count::to_string() const {
    if (value_ == 0) {
        return "0";
    }
    std::string digits;
    Raw v = value_;
    while (v != 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
}

void Count::store_le(unsigned char* out) const {
    Raw v = value_;
    for (int i = 0; i < 16; ++i) {
        out[i] = static_cast<unsigned char>(v & 0xFF);
        v >>= 8;
    }
}

Count Count::load_le(const unsigned char* in) {
    Raw v = 0;
    for (int i = 15; i >= 0; --i) {
        v = (v << 8) | in[i];
    }
    return from_raw(v);
}

std::ostream& operator<<(std::ostream& os, Count c) { return os << c.to_string(); }

}  // namespace graceful

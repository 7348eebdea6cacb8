#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace graceful {

/// Raised whenever an exact count would exceed 128 bits.
class CountOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// Exact non-negative counter backed by a 128-bit unsigned integer.
///
/// Every arithmetic operation is checked; overflow throws CountOverflow
/// instead of wrapping.
class Count {
public:
    using Raw = unsigned __int128;

    constexpr Count() = default;
    constexpr Count(std::uint64_t v) : value_(v) {}  // NOLINT(implicit)

    static constexpr Count from_raw(Raw v) {
        Count c;
        c.value_ = v;
        return c;
    }

    /// Parses a decimal string. Throws std::invalid_argument on malformed
    /// input and CountOverflow when the value does not fit.
    static Count parse(std::string_view text);

    constexpr Raw raw() const { return value_; }
    constexpr bool is_zero() const { return value_ == 0; }

    std::uint64_t low64() const { return static_cast<std::uint64_t>(value_); }
    std::uint64_t high64() const { return static_cast<std::uint64_t>(value_ >> 64); }

    Count& operator+=(Count other) {
        if (__builtin_add_overflow(value_, other.value_, &value_)) {
            throw CountOverflow("count addition overflowed 128 bits");
        }
        return *this;
    }

    Count& operator*=(Count other) {
        if (__builtin_mul_overflow(value_, other.value_, &value_)) {
            throw CountOverflow("count multiplication overflowed 128 bits");
        }
        return *this;
    }

    friend Count operator+(Count a, Count b) { return a += b; }
    friend Count operator*(Count a, Count b) { return a *= b; }

    friend constexpr bool operator==(Count a, Count b) = default;
    friend constexpr std::strong_ordering operator<=>(Count a, Count b) {
        return a.value_ <=> b.value_;
    }

    std::string to_string() const;

    /// Little-endian 16-byte serialization used by checkpoint files.
    void store_le(unsigned char* out) const;
    static Count load_le(const unsigned char* in);

private:
    Raw value_ = 0;
};

std::ostream& operator<<(std::ostream& os, Count c);

}  // namespace graceful

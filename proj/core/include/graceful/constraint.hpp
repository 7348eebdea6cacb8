#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace graceful {

/// Endpoint restriction on counted permutations: none, a fixed first label,
/// or fixed first and last labels.
class Constraint {
public:
    enum class Kind : std::uint8_t { None = 0, OneEndpoint = 1, TwoEndpoints = 2 };

    constexpr Constraint() = default;

    static constexpr Constraint none() { return {}; }
    static constexpr Constraint one_endpoint(int a) { return {Kind::OneEndpoint, a, -1}; }
    static constexpr Constraint two_endpoints(int a, int b) { return {Kind::TwoEndpoints, a, b}; }

    /// Parses "none", "a" or "a,b". Throws std::invalid_argument.
    static Constraint parse(std::string_view text);

    constexpr Kind kind() const { return kind_; }
    constexpr int first() const { return a_; }
    constexpr int second() const { return b_; }

    /// Throws std::invalid_argument when a label is outside 0..n-1.
    void validate(int n) const;

    /// The same restriction after relabelling u as n - 1 - u.
    Constraint mirrored(int n) const;

    /// Whether a complete label sequence (read left to right) satisfies the
    /// restriction.
    bool admits_sequence(std::span<const int> seq) const;

    /// "none", "a" or "a,b".
    std::string to_string() const;

    friend constexpr bool operator==(const Constraint&, const Constraint&) = default;

private:
    constexpr Constraint(Kind k, int a, int b) : kind_(k), a_(a), b_(b) {}

    Kind kind_ = Kind::None;
    int a_ = -1;
    int b_ = -1;
};

}  // namespace graceful

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graceful/count.hpp"
#include "graceful/permutation.hpp"
#include "graceful/search.hpp"

namespace graceful {

/// A non-negative decimal numerator / 10^scale, e.g. 2.37 = {237, 2}.
struct DecimalThreshold {
    std::uint64_t numerator = 0;
    int scale = 0;

    /// Parses "2", "2.37", ... Throws std::invalid_argument.
    static DecimalThreshold parse(std::string_view text);
    std::string to_string() const;
};

struct BoundResult {
    int m = 0;
    int j = 0;
    Count count;
    /// count^(1/2m) rounded toward zero to four decimals, so it is itself a
    /// valid lower-bound base.
    std::string gamma_text = "0.0000";
    double gamma = 0.0;
    bool zero_count = false;
    std::optional<DecimalThreshold> threshold;
    std::optional<bool> certified;
};

struct InequalityCheck {
    Count lhs;
    Count rhs;
    bool holds = false;
};

/// Every adjacent pair has exactly one label below m. Throws
/// std::invalid_argument unless p has 2m labels.
bool is_bipartite_graceful(const GracefulPermutation& p, int m);

/// Combines a bipartite (2m; j, j+m)-permutation `p` and an (r; j)-permutation
/// `q` into an (r+2m; j)-permutation: labels >= m of p are raised by r, all of
/// q by m, and the two halves are joined by the edge (j+m+r, j+m). Inputs read
/// in the opposite direction are reversed first.
GracefulPermutation glue(const GracefulPermutation& p, const GracefulPermutation& q, int m, int j,
                         int r);

/// Both sides of G(r+2m; j) >= G(2m; j, j+m) * G(r; j), counted directly.
/// Counts of out-of-range endpoint restrictions are zero.
InequalityCheck verify_inequality(int r, int m, int j, const SearchOptions& opts = {});

/// True iff count * 10^(scale * exponent) > numerator^exponent, evaluated in
/// exact integer arithmetic.
bool certify_bound(Count count, int exponent, const DecimalThreshold& threshold);

/// Largest g with g^exponent <= count * 10^(digits * exponent), i.e. the
/// exponent-th root of count truncated to `digits` decimals, scaled.
std::string truncated_root(Count count, int exponent, int digits = 4);

/// Counts G(2m; j, j+m) and derives its growth base. Requires 0 <= j < m.
BoundResult gamma(int m, int j, const std::optional<DecimalThreshold>& threshold = std::nullopt,
                  const SearchOptions& opts = {});

/// Glues one (2m; j, j+m)-permutation onto an (r; j)-permutation
/// `iterations` times, giving a graceful permutation of r + 2m*iterations
/// labels starting at j. Throws ComputationRefused when either seed is
/// missing.
GracefulPermutation iterated_witness(int m, int j, int r, int iterations);

}  // namespace graceful

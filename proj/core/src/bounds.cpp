#include "graceful/bounds.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace graceful {

namespace {

using BigInt = boost::multiprecision::cpp_int;

BigInt to_big(Count c) {
    BigInt v = c.high64();
    v <<= 64;
    v += c.low64();
    return v;
}

BigInt pow10(int e) { return boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(e)); }

Count count_or_zero(int n, const Constraint& c, const SearchOptions& opts) {
    if (c.first() >= n || c.second() >= n) return 0;
    return count(n, c, opts).count;
}

}  // namespace

DecimalThreshold DecimalThreshold::parse(std::string_view text) {
    const auto dot = text.find('.');
    std::string digits(text.substr(0, dot));
    int scale = 0;
    if (dot != std::string_view::npos) {
        const auto frac = text.substr(dot + 1);
        digits += frac;
        scale = static_cast<int>(frac.size());
    }
    std::uint64_t value = 0;
    const char* end = digits.data() + digits.size();
    auto [ptr, ec] = std::from_chars(digits.data(), end, value);
    if (digits.empty() || ec != std::errc() || ptr != end) {
        throw std::invalid_argument("malformed decimal threshold '" + std::string(text) + "'");
    }
    return {value, scale};
}

std::string DecimalThreshold::to_string() const {
    std::string digits = std::to_string(numerator);
    if (scale == 0) return digits;
    if (static_cast<int>(digits.size()) <= scale) {
        digits.insert(0, static_cast<size_t>(scale) - digits.size() + 1, '0');
    }
    digits.insert(digits.size() - static_cast<size_t>(scale), ".");
    return digits;
}

bool is_bipartite_graceful(const GracefulPermutation& p, int m) {
    if (m < 1 || p.size() != 2 * m) {
        throw std::invalid_argument("bipartite check needs 2m = " + std::to_string(2 * m) +
                                    " labels, got " + std::to_string(p.size()));
    }
    for (int i = 0; i + 1 < p.size(); ++i) {
        if ((p[i] < m) == (p[i + 1] < m)) return false;
    }
    return true;
}

GracefulPermutation glue(const GracefulPermutation& p, const GracefulPermutation& q, int m, int j,
                         int r) {
    if (m < 1 || r < 1 || j < 0 || j >= m) {
        throw std::invalid_argument("glue needs m >= 1, r >= 1 and 0 <= j < m");
    }
    if (p.size() != 2 * m) {
        throw std::invalid_argument("first input must have 2m = " + std::to_string(2 * m) +
                                    " labels");
    }
    GracefulPermutation left = p;
    if (left.front() == j + m && left.back() == j) left = left.reversed();
    if (left.front() != j || left.back() != j + m) {
        throw std::invalid_argument("first input " + p.to_string() + " does not run from " +
                                    std::to_string(j) + " to " + std::to_string(j + m));
    }
    if (!is_bipartite_graceful(left, m)) {
        throw std::invalid_argument("first input " + p.to_string() + " is not bipartite");
    }
    if (q.size() != r) {
        throw std::invalid_argument("second input must have r = " + std::to_string(r) + " labels");
    }
    GracefulPermutation right = q;
    if (right.front() != j && right.back() == j) right = right.reversed();
    if (right.front() != j) {
        throw std::invalid_argument("second input " + q.to_string() + " has no endpoint " +
                                    std::to_string(j));
    }

    std::vector<int> out;
    out.reserve(static_cast<size_t>(r + 2 * m));
    for (int x : left.labels()) out.push_back(x >= m ? x + r : x);
    for (int x : right.labels()) out.push_back(x + m);
    return GracefulPermutation(std::move(out));
}

InequalityCheck verify_inequality(int r, int m, int j, const SearchOptions& opts) {
    if (r < 1 || m < 1 || j < 0 || j > m) {
        throw std::invalid_argument("inequality needs r >= 1, m >= 1 and 0 <= j <= m");
    }
    InequalityCheck check;
    check.lhs = count_or_zero(r + 2 * m, Constraint::one_endpoint(j), opts);
    check.rhs = count_or_zero(2 * m, Constraint::two_endpoints(j, j + m), opts) *
                count_or_zero(r, Constraint::one_endpoint(j), opts);
    check.holds = check.lhs >= check.rhs;
    return check;
}

bool certify_bound(Count count, int exponent, const DecimalThreshold& threshold) {
    if (exponent < 1) throw std::invalid_argument("exponent must be positive");
    const auto e = static_cast<unsigned>(exponent);
    const BigInt lhs = to_big(count) * pow10(threshold.scale * exponent);
    const BigInt rhs = boost::multiprecision::pow(BigInt(threshold.numerator), e);
    return lhs > rhs;
}

std::string truncated_root(Count count, int exponent, int digits) {
    if (exponent < 1) throw std::invalid_argument("exponent must be positive");
    const auto e = static_cast<unsigned>(exponent);
    const BigInt target = to_big(count) * pow10(digits * exponent);
    const auto fits = [&](const BigInt& g) { return boost::multiprecision::pow(g, e) <= target; };

    // Floating-point first guess, corrected exactly.
    const double approx = std::pow(static_cast<double>(count.raw()), 1.0 / exponent) *
                          std::pow(10.0, digits);
    BigInt g = static_cast<long long>(std::max(0.0, std::floor(approx)));
    while (g > 0 && !fits(g)) --g;
    while (fits(g + 1)) ++g;

    std::string text = g.str();
    if (digits == 0) return text;
    if (static_cast<int>(text.size()) <= digits) {
        text.insert(0, static_cast<size_t>(digits) - text.size() + 1, '0');
    }
    text.insert(text.size() - static_cast<size_t>(digits), ".");
    return text;
}

BoundResult gamma(int m, int j, const std::optional<DecimalThreshold>& threshold,
                  const SearchOptions& opts) {
    if (m < 1 || j < 0 || j >= m) {
        throw std::invalid_argument("gamma needs m >= 1 and 0 <= j < m");
    }
    BoundResult result;
    result.m = m;
    result.j = j;
    result.count = count(2 * m, Constraint::two_endpoints(j, j + m), opts).count;
    result.zero_count = result.count.is_zero();
    result.gamma_text = truncated_root(result.count, 2 * m);
    result.gamma = std::stod(result.gamma_text);
    if (threshold) {
        result.threshold = threshold;
        result.certified = certify_bound(result.count, 2 * m, *threshold);
    }
    return result;
}

GracefulPermutation iterated_witness(int m, int j, int r, int iterations) {
    if (iterations < 0) throw std::invalid_argument("iterations must be non-negative");
    if (m < 1 || r < 1 || j < 0 || j >= m) {
        throw std::invalid_argument("witness needs m >= 1, r >= 1 and 0 <= j < m");
    }
    if (j >= r) {
        throw ComputationRefused("no (" + std::to_string(r) + ";" + std::to_string(j) +
                                 ")-permutation exists to start from");
    }
    const auto block = enumerate(2 * m, Constraint::two_endpoints(j, j + m), 1);
    if (block.permutations.empty()) {
        throw ComputationRefused("G(" + std::to_string(2 * m) + ";" + std::to_string(j) + "," +
                                 std::to_string(j + m) + ") is zero");
    }
    const auto seed = enumerate(r, Constraint::one_endpoint(j), 1);
    if (seed.permutations.empty()) {
        throw ComputationRefused("G(" + std::to_string(r) + ";" + std::to_string(j) +
                                 ") is zero");
    }
    GracefulPermutation current = seed.permutations.front();
    for (int i = 0; i < iterations; ++i) {
        current = glue(block.permutations.front(), current, m, j, current.size());
    }
    return current;
}

}  // namespace graceful

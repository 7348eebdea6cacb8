#include "graceful/permutation.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>

namespace graceful {

bool is_graceful(std::span<const int> seq) {
    const size_t n = seq.size();
    if (n <= 64) {
        std::uint64_t labels = 0;
        std::uint64_t diffs = 0;
        for (size_t i = 0; i < n; ++i) {
            const int x = seq[i];
            if (x < 0 || static_cast<size_t>(x) >= n || (labels >> x & 1)) return false;
            labels |= std::uint64_t{1} << x;
            if (i > 0) {
                const int d = std::abs(x - seq[i - 1]);
                if (diffs >> d & 1) return false;
                diffs |= std::uint64_t{1} << d;
            }
        }
        return true;
    }
    std::vector<bool> seen_label(n, false);
    std::vector<bool> seen_diff(n, false);
    for (size_t i = 0; i < n; ++i) {
        const int x = seq[i];
        if (x < 0 || static_cast<size_t>(x) >= n || seen_label[size_t(x)]) return false;
        seen_label[size_t(x)] = true;
        if (i > 0) {
            const int d = std::abs(x - seq[i - 1]);
            // d >= 1 since labels are distinct, d <= n-1 since both are in range
            if (seen_diff[size_t(d)]) return false;
            seen_diff[size_t(d)] = true;
        }
    }
    return true;
}

GracefulPermutation::GracefulPermutation(std::vector<int> labels) : labels_(std::move(labels)) {
    if (labels_.empty() || !is_graceful(labels_)) {
        throw std::invalid_argument("not a graceful permutation: " + to_string());
    }
}

GracefulPermutation GracefulPermutation::reversed() const {
    std::vector<int> r(labels_.rbegin(), labels_.rend());
    return GracefulPermutation(std::move(r));
}

std::string GracefulPermutation::to_string() const {
    std::string out = "[";
    for (size_t i = 0; i < labels_.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(labels_[i]);
    }
    return out + "]";
}

}  // namespace graceful

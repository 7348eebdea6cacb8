#pragma once

#include <span>
#include <string>
#include <vector>

namespace graceful {

/// True iff `seq` is a permutation of 0..n-1 whose adjacent absolute
/// differences are exactly {1, ..., n-1}.
bool is_graceful(std::span<const int> seq);

/// A label sequence known to satisfy is_graceful.
class GracefulPermutation {
public:
    /// Throws std::invalid_argument if `labels` is not graceful.
    explicit GracefulPermutation(std::vector<int> labels);

    int size() const { return static_cast<int>(labels_.size()); }
    std::span<const int> labels() const { return labels_; }
    int front() const { return labels_.front(); }
    int back() const { return labels_.back(); }
    int operator[](int i) const { return labels_[static_cast<size_t>(i)]; }

    GracefulPermutation reversed() const;
    std::string to_string() const;

    friend bool operator==(const GracefulPermutation&, const GracefulPermutation&) = default;
    friend auto operator<=>(const GracefulPermutation&, const GracefulPermutation&) = default;

private:
    std::vector<int> labels_;
};

}  // namespace graceful

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace graceful {

/// Largest supported label count. Partner bytes in the key layout must stay
/// below the 0xFF sentinel.
inline constexpr int kMaxLabels = 254;

/// Partner byte written for labels that are not path endpoints.
inline constexpr std::uint8_t kNoPartner = 0xFF;

enum class Orientation : std::uint8_t { Direct, Reflected };

using LabelPair = std::pair<int, int>;

/// A node of the search tree: which labels are still free and how the
/// endpoints of the partial paths are paired up.
///
/// `free_slots(u)` is the remaining degree capacity of label u. For endpoints
/// (one free slot) `partner(u)` is the opposite end of u's partial path;
/// unused labels are their own partner. Partners of interior labels carry no
/// meaning and are ignored by comparisons.
///
/// Storage is inline, so copies never allocate.
class PartialState {
public:
    /// The root node for n labels: no edges placed, every label unused.
    /// Throws std::invalid_argument unless 1 <= n <= kMaxLabels.
    static PartialState root(int n);

    int size() const { return n_; }
    int next_edge_label() const { return next_; }
    int edges_placed() const { return n_ - 1 - next_; }
    bool is_terminal() const { return next_ == 0; }

    int free_slots(int u) const { return free_[static_cast<std::size_t>(u)]; }
    int partner(int u) const { return forb_[static_cast<std::size_t>(u)]; }

    std::span<const std::uint8_t> free_slots() const { return {free_.data(), size_t(n_)}; }
    std::span<const std::uint8_t> partners() const { return {forb_.data(), size_t(n_)}; }

    /// Labels with exactly one free slot (ends of partial paths), ascending.
    std::vector<int> endpoints() const;

    /// Throws std::logic_error describing the first violated invariant.
    void check_invariants() const;

    /// Equal level, equal free slots, equal partners on every endpoint.
    friend bool operator==(const PartialState& a, const PartialState& b);

private:
    friend PartialState add_edge(const PartialState&, int, int);
    friend PartialState complement(const PartialState&);
    friend PartialState decode_codes(std::span<const std::uint8_t>);

    PartialState() = default;

    std::uint16_t n_ = 0;
    std::uint16_t next_ = 0;
    std::array<std::uint8_t, kMaxLabels> free_{};
    std::array<std::uint8_t, kMaxLabels> forb_{};
};

/// Equivalence-class representative of a PartialState.
///
/// Held as one order-preserving code byte per label: 0 for interior labels,
/// 1 + partner for endpoints and 255 for unused labels. Comparing codes
/// lexicographically orders keys exactly like their external byte layout
/// (free byte, partner byte) per label.
class CanonicalKey {
public:
    CanonicalKey() = default;
    explicit CanonicalKey(std::vector<std::uint8_t> codes) : codes_(std::move(codes)) {}

    /// Parses the 2n-byte external layout. Throws std::invalid_argument when
    /// the bytes do not describe a valid state.
    static CanonicalKey from_bytes(std::span<const std::uint8_t> bytes);

    /// External layout: per label, free count then partner (0xFF unless the
    /// label is an endpoint).
    std::vector<std::uint8_t> bytes() const;

    int size() const { return static_cast<int>(codes_.size()); }
    std::span<const std::uint8_t> codes() const { return codes_; }

    PartialState decode() const;

    /// True when this key is the smaller of the state's two encodings.
    bool is_canonical() const;
    /// True when the state equals its own complement.
    bool is_self_complementary() const;

    friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
    friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;

private:
    std::vector<std::uint8_t> codes_;
};

struct CanonicalForm {
    CanonicalKey key;
    Orientation orientation = Orientation::Direct;
};

inline PartialState new_root(int n) { return PartialState::root(n); }

/// Label pairs whose difference is k, i.e. the only places edge label k can
/// go: (i, i + k) for i = 0 .. n - 1 - k.
std::vector<LabelPair> candidate_pairs(int n, int k);

bool can_add_edge(const PartialState& s, int u, int v);

/// Places the next edge between u and v. Throws std::invalid_argument when
/// |u - v| is not the next edge label or the edge is not addable.
PartialState add_edge(const PartialState& s, int u, int v);

/// Relabels u as n - 1 - u.
PartialState complement(const PartialState& s);

/// Key of the state itself, without folding complements.
CanonicalKey encode(const PartialState& s);

/// Smaller of encode(s) and encode(complement(s)); ties are Direct.
CanonicalForm canonicalize(const PartialState& s);

// Allocation-free variants used on the search hot path. `out` must hold
// s.size() bytes.
void encode_codes(const PartialState& s, std::span<std::uint8_t> out);
Orientation canonical_codes(const PartialState& s, std::span<std::uint8_t> out,
                            bool* self_complementary = nullptr);
PartialState decode_codes(std::span<const std::uint8_t> codes);

std::string to_string(const PartialState& s);

}  // namespace graceful

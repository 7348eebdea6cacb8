#include "graceful/class_map.hpp"

#include <algorithm>
#include <cstring>
#include <functional>
#include <stdexcept>
#include <string_view>

namespace graceful {

namespace {

constexpr std::size_t kInitialSlots = 16;

inline std::size_t probe_start(std::uint64_t hash, std::size_t mask) {
    return static_cast<std::size_t>(hash) & mask;
}

}  // namespace

ClassMap::ClassMap(int label_count, int level)
    : n_(label_count), level_(level), shards_(kShards) {
    if (label_count < 1 || label_count > kMaxLabels || level < 0 || level > label_count - 1) {
        throw std::invalid_argument("class map shape out of range");
    }
}

ClassMap ClassMap::root(int n) {
    ClassMap m(n, n - 1);
    m.add(encode(PartialState::root(n)), {Count(1), Count(0)});
    return m;
}

std::size_t ClassMap::size() const {
    std::size_t total = 0;
    for (const auto& s : shards_) total += s.pairs.size();
    return total;
}

Count ClassMap::node_sum() const {
    Count total;
    for (const auto& s : shards_) {
        for (const auto& p : s.pairs) total += p.total();
    }
    return total;
}

std::uint64_t ClassMap::hash_codes(std::span<const std::uint8_t> codes) {
    const std::string_view view(reinterpret_cast<const char*>(codes.data()), codes.size());
    std::uint64_t h = std::hash<std::string_view>{}(view);
    // std::hash may be weak in the high bits used for shard selection.
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    return h;
}

void ClassMap::add(std::span<const std::uint8_t> codes, const MultiplicityPair& pair) {
    const auto h = hash_codes(codes);
    add_to_shard(shard_of(h), h, codes, pair);
}

void ClassMap::add_to_shard(std::size_t shard_index, std::uint64_t hash,
                            std::span<const std::uint8_t> codes, const MultiplicityPair& pair) {
    Shard& shard = shards_[shard_index];
    const size_t n = size_t(n_);
    if (shard.slots.empty() || (shard.pairs.size() + 1) * 4 > shard.slots.size() * 3) {
        grow(shard);
    }
    const std::size_t mask = shard.slots.size() - 1;
    for (std::size_t pos = probe_start(hash, mask);; pos = (pos + 1) & mask) {
        const std::uint32_t slot = shard.slots[pos];
        if (slot == 0) {
            shard.keys.insert(shard.keys.end(), codes.begin(), codes.end());
            shard.pairs.push_back(pair);
            shard.slots[pos] = static_cast<std::uint32_t>(shard.pairs.size());
            return;
        }
        const std::size_t idx = slot - 1;
        if (std::memcmp(shard.keys.data() + idx * n, codes.data(), n) == 0) {
            shard.pairs[idx] += pair;
            return;
        }
    }
}

void ClassMap::grow(Shard& shard) {
    const std::size_t capacity = shard.slots.empty() ? kInitialSlots : shard.slots.size() * 2;
    if (capacity > (std::size_t{1} << 32)) {
        throw std::length_error("class map shard exceeds 2^32 slots");
    }
    shard.slots.assign(capacity, 0);
    const std::size_t mask = capacity - 1;
    const size_t n = size_t(n_);
    for (std::size_t i = 0; i < shard.pairs.size(); ++i) {
        const std::span<const std::uint8_t> key(shard.keys.data() + i * n, n);
        std::size_t pos = probe_start(hash_codes(key), mask);
        while (shard.slots[pos] != 0) pos = (pos + 1) & mask;
        shard.slots[pos] = static_cast<std::uint32_t>(i + 1);
    }
}

const MultiplicityPair* ClassMap::find(const CanonicalKey& key) const {
    if (key.size() != n_) return nullptr;
    const auto codes = key.codes();
    const auto h = hash_codes(codes);
    const Shard& shard = shards_[shard_of(h)];
    if (shard.slots.empty()) return nullptr;
    const std::size_t mask = shard.slots.size() - 1;
    const size_t n = size_t(n_);
    for (std::size_t pos = probe_start(h, mask);; pos = (pos + 1) & mask) {
        const std::uint32_t slot = shard.slots[pos];
        if (slot == 0) return nullptr;
        if (std::memcmp(shard.keys.data() + (slot - 1) * n, codes.data(), n) == 0) {
            return &shard.pairs[slot - 1];
        }
    }
}

void ClassMap::release_shard(std::size_t shard) {
    shards_[shard] = Shard{};
}

std::vector<std::pair<CanonicalKey, MultiplicityPair>> ClassMap::sorted_entries() const {
    std::vector<std::pair<CanonicalKey, MultiplicityPair>> out;
    out.reserve(size());
    for_each([&](std::span<const std::uint8_t> codes, const MultiplicityPair& p) {
        out.emplace_back(CanonicalKey(std::vector<std::uint8_t>(codes.begin(), codes.end())), p);
    });
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

bool operator==(const ClassMap& a, const ClassMap& b) {
    if (a.n_ != b.n_ || a.level_ != b.level_ || a.size() != b.size()) return false;
    bool equal = true;
    a.for_each([&](std::span<const std::uint8_t> codes, const MultiplicityPair& p) {
        if (!equal) return;
        const auto* other =
            b.find(CanonicalKey(std::vector<std::uint8_t>(codes.begin(), codes.end())));
        equal = other != nullptr && *other == p;
    });
    return equal;
}

}  // namespace graceful

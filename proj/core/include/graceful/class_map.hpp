#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "graceful/count.hpp"
#include "graceful/state.hpp"

namespace graceful {

/// Number of search-tree nodes one stored class stands for, split by whether
/// the node equals the representative (direct) or its complement (reflected).
struct MultiplicityPair {
    Count direct;
    Count reflected;

    Count total() const { return direct + reflected; }
    bool is_zero() const { return direct.is_zero() && reflected.is_zero(); }

    MultiplicityPair& operator+=(const MultiplicityPair& o) {
        direct += o.direct;
        reflected += o.reflected;
        return *this;
    }
    friend bool operator==(const MultiplicityPair&, const MultiplicityPair&) = default;
};

/// All equivalence classes alive at one level of the search, keyed by the
/// canonical codes of their representatives.
///
/// Entries live in kShards independent open-addressing tables selected by the
/// key hash. Distinct shards may be mutated from different threads at the same
/// time; a single shard needs external locking.
class ClassMap {
public:
    static constexpr std::size_t kShards = 64;

    ClassMap(int label_count, int level);

    /// The single root class for n labels.
    static ClassMap root(int n);

    int label_count() const { return n_; }
    int level() const { return level_; }
    std::size_t size() const;
    bool empty() const { return size() == 0; }
    Count node_sum() const;

    /// Adds `pair` to the entry for `codes`, creating it if needed. `codes`
    /// must be the canonical codes of a state at this map's level.
    void add(std::span<const std::uint8_t> codes, const MultiplicityPair& pair);
    void add(const CanonicalKey& key, const MultiplicityPair& pair) { add(key.codes(), pair); }

    const MultiplicityPair* find(const CanonicalKey& key) const;

    /// Shard-level access for concurrent producers.
    static std::uint64_t hash_codes(std::span<const std::uint8_t> codes);
    static std::size_t shard_of(std::uint64_t hash) { return hash >> 58; }
    void add_to_shard(std::size_t shard, std::uint64_t hash, std::span<const std::uint8_t> codes,
                      const MultiplicityPair& pair);

    std::size_t shard_size(std::size_t shard) const { return shards_[shard].pairs.size(); }
    std::span<const std::uint8_t> shard_key(std::size_t shard, std::size_t i) const {
        return {shards_[shard].keys.data() + i * size_t(n_), size_t(n_)};
    }
    const MultiplicityPair& shard_pair(std::size_t shard, std::size_t i) const {
        return shards_[shard].pairs[i];
    }
    /// Frees one shard's storage; used while a map is consumed level by level.
    void release_shard(std::size_t shard);

    template <class Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t s = 0; s < kShards; ++s) {
            for (std::size_t i = 0; i < shards_[s].pairs.size(); ++i) {
                fn(shard_key(s, i), shards_[s].pairs[i]);
            }
        }
    }

    /// Entries ordered by key.
    std::vector<std::pair<CanonicalKey, MultiplicityPair>> sorted_entries() const;

    /// Same label count, level and entries.
    friend bool operator==(const ClassMap& a, const ClassMap& b);

private:
    struct Shard {
        std::vector<std::uint8_t> keys;  // size() * n code bytes
        std::vector<MultiplicityPair> pairs;
        std::vector<std::uint32_t> slots;  // index + 1, 0 = empty
    };

    void grow(Shard& shard);

    int n_;
    int level_;
    std::vector<Shard> shards_;
};

}  // namespace graceful

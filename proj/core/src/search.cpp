#include "graceful/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <mutex>
#include <numeric>
#include <thread>

namespace graceful {

namespace {

using Clock = std::chrono::steady_clock;

// Counts for the one-label path [0].
Count single_label_count(const Constraint& c) {
    switch (c.kind()) {
        case Constraint::Kind::None: return 1;
        case Constraint::Kind::OneEndpoint: return c.first() == 0 ? 1 : 0;
        case Constraint::Kind::TwoEndpoints: return c.first() == 0 && c.second() == 0 ? 1 : 0;
    }
    return 0;
}

// Readings of a complete path with ends e0 and e1 that satisfy `c`.
Count terminal_readings(int e0, int e1, const Constraint& c) {
    switch (c.kind()) {
        case Constraint::Kind::None: return 2;
        case Constraint::Kind::OneEndpoint: return c.first() == e0 || c.first() == e1 ? 1 : 0;
        case Constraint::Kind::TwoEndpoints: {
            const int a = c.first();
            const int b = c.second();
            return a != b && std::min(a, b) == std::min(e0, e1) &&
                           std::max(a, b) == std::max(e0, e1)
                       ? 1
                       : 0;
        }
    }
    return 0;
}

std::pair<int, int> terminal_ends(const PartialState& s) {
    int e0 = -1;
    int e1 = -1;
    for (int u = 0; u < s.size(); ++u) {
        if (s.free_slots(u) == 1) (e0 < 0 ? e0 : e1) = u;
    }
    return {e0, e1};
}

void dfs_visit(const PartialState& s, const Constraint& c, Count& total) {
    if (s.is_terminal()) {
        const auto [e0, e1] = terminal_ends(s);
        total += terminal_readings(e0, e1, c);
        return;
    }
    const int k = s.next_edge_label();
    for (int u = 0; u + k < s.size(); ++u) {
        if (can_add_edge(s, u, u + k)) {
            dfs_visit(add_edge(s, u, u + k), c, total);
        }
    }
}

// Expansion of every parent entry in one shard of `parent` into `out`.
class LevelExpander {
public:
    LevelExpander(const ClassMap& parent, const Constraint& c, const SearchOptions& opts)
        : parent_(parent),
          constraint_(c),
          mirrored_(c.mirrored(parent.label_count())),
          prune_(opts.prune),
          n_(parent.label_count()),
          k_(parent.level()) {}

    // Calls sink(codes, hash, pair) for every surviving child.
    template <class Sink>
    void expand_shard(std::size_t shard, Sink&& sink) const {
        std::array<std::uint8_t, kMaxLabels> buffer{};
        const std::span<std::uint8_t> codes(buffer.data(), size_t(n_));
        for (std::size_t i = 0; i < parent_.shard_size(shard); ++i) {
            const PartialState rep = decode_codes(parent_.shard_key(shard, i));
            const MultiplicityPair& pair = parent_.shard_pair(shard, i);
            for (int u = 0; u + k_ < n_; ++u) {
                const int v = u + k_;
                if (!can_add_edge(rep, u, v)) continue;
                const PartialState child = add_edge(rep, u, v);
                // Nodes counted by `direct` are `child` itself; nodes counted
                // by `reflected` are its complement.
                Count as_child = pair.direct;
                Count as_mirror = pair.reflected;
                if (prune_) {
                    if (!admits(child, constraint_)) as_child = 0;
                    if (!admits(child, mirrored_)) as_mirror = 0;
                }
                if (as_child.is_zero() && as_mirror.is_zero()) continue;
                bool self_complementary = false;
                const Orientation o = canonical_codes(child, codes, &self_complementary);
                MultiplicityPair out;
                if (self_complementary) {
                    out.direct = as_child + as_mirror;
                } else if (o == Orientation::Direct) {
                    out = {as_child, as_mirror};
                } else {
                    out = {as_mirror, as_child};
                }
                sink(codes, ClassMap::hash_codes(codes), out);
            }
        }
    }

private:
    const ClassMap& parent_;
    Constraint constraint_;
    Constraint mirrored_;
    bool prune_;
    int n_;
    int k_;
};

void enforce_budget(const ClassMap& m, const SearchOptions& opts) {
    if (opts.max_classes != 0 && m.size() > opts.max_classes) {
        throw ComputationRefused("level " + std::to_string(m.level()) + " exceeds the budget of " +
                                 std::to_string(opts.max_classes) + " classes");
    }
}

ClassMap expand_sequential(ClassMap* parent_owned, const ClassMap& parent, const Constraint& c,
                           const SearchOptions& opts) {
    ClassMap out(parent.label_count(), parent.level() - 1);
    const LevelExpander expander(parent, c, opts);
    std::size_t inserted = 0;
    for (std::size_t s = 0; s < ClassMap::kShards; ++s) {
        expander.expand_shard(s, [&](std::span<const std::uint8_t> codes, std::uint64_t h,
                                     const MultiplicityPair& p) {
            out.add_to_shard(ClassMap::shard_of(h), h, codes, p);
            if ((++inserted & 0xFFFF) == 0) enforce_budget(out, opts);
        });
        if (parent_owned != nullptr) parent_owned->release_shard(s);
    }
    enforce_budget(out, opts);
    return out;
}

ClassMap expand_parallel(ClassMap* parent_owned, const ClassMap& parent, const Constraint& c,
                         const SearchOptions& opts) {
    constexpr std::size_t kFlushAt = 512;
    ClassMap out(parent.label_count(), parent.level() - 1);
    const LevelExpander expander(parent, c, opts);
    std::array<std::mutex, ClassMap::kShards> locks;
    std::atomic<std::size_t> next_shard{0};
    std::mutex error_lock;
    std::exception_ptr error;
    const size_t n = size_t(parent.label_count());

    struct Buffer {
        std::vector<std::uint8_t> keys;
        std::vector<std::uint64_t> hashes;
        std::vector<MultiplicityPair> pairs;
    };

    auto worker = [&] {
        std::vector<Buffer> buffers(ClassMap::kShards);
        auto flush = [&](std::size_t target) {
            Buffer& b = buffers[target];
            {
                std::lock_guard guard(locks[target]);
                for (std::size_t i = 0; i < b.pairs.size(); ++i) {
                    out.add_to_shard(target, b.hashes[i], {b.keys.data() + i * n, n}, b.pairs[i]);
                }
            }
            b.keys.clear();
            b.hashes.clear();
            b.pairs.clear();
        };
        try {
            for (std::size_t s = next_shard++; s < ClassMap::kShards; s = next_shard++) {
                expander.expand_shard(s, [&](std::span<const std::uint8_t> codes,
                                             std::uint64_t h, const MultiplicityPair& p) {
                    const std::size_t target = ClassMap::shard_of(h);
                    Buffer& b = buffers[target];
                    b.keys.insert(b.keys.end(), codes.begin(), codes.end());
                    b.hashes.push_back(h);
                    b.pairs.push_back(p);
                    if (b.pairs.size() >= kFlushAt) flush(target);
                });
                if (parent_owned != nullptr) parent_owned->release_shard(s);
            }
            for (std::size_t t = 0; t < ClassMap::kShards; ++t) flush(t);
        } catch (...) {
            std::lock_guard guard(error_lock);
            if (!error) error = std::current_exception();
            next_shard = ClassMap::kShards;
        }
    };

    std::vector<std::thread> pool;
    for (unsigned t = 0; t < opts.threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    enforce_budget(out, opts);
    return out;
}

ClassMap expand_impl(ClassMap* parent_owned, const ClassMap& parent, const Constraint& c,
                     const SearchOptions& opts) {
    if (parent.level() < 1) {
        throw std::logic_error("cannot expand a terminal level");
    }
    c.validate(parent.label_count());
    if (opts.threads <= 1) {
        return expand_sequential(parent_owned, parent, c, opts);
    }
    return expand_parallel(parent_owned, parent, c, opts);
}

}  // namespace

Count brute_force_count(int n, const Constraint& c) {
    if (n < 1) {
        throw std::invalid_argument("label count must be positive");
    }
    if (n > kBruteForceMaxN) {
        throw ComputationRefused("brute force is limited to n <= " +
                                 std::to_string(kBruteForceMaxN));
    }
    c.validate(n);
    std::vector<int> seq(static_cast<size_t>(n));
    std::iota(seq.begin(), seq.end(), 0);
    Count total;
    do {
        if (is_graceful(seq) && c.admits_sequence(seq)) total += 1;
    } while (std::next_permutation(seq.begin(), seq.end()));
    return total;
}

Count BruteForceTally::operator[](const Constraint& c) const {
    c.validate(n);
    switch (c.kind()) {
        case Constraint::Kind::None: return none;
        case Constraint::Kind::OneEndpoint: return one_endpoint[size_t(c.first())];
        case Constraint::Kind::TwoEndpoints:
            return two_endpoints[size_t(c.first()) * size_t(n) + size_t(c.second())];
    }
    return 0;
}

BruteForceTally brute_force_tally(int n) {
    if (n < 1) {
        throw std::invalid_argument("label count must be positive");
    }
    if (n > kBruteForceMaxN) {
        throw ComputationRefused("brute force is limited to n <= " +
                                 std::to_string(kBruteForceMaxN));
    }
    BruteForceTally tally;
    tally.n = n;
    tally.one_endpoint.assign(size_t(n), 0);
    tally.two_endpoints.assign(size_t(n) * size_t(n), 0);
    std::vector<int> seq(static_cast<size_t>(n));
    std::iota(seq.begin(), seq.end(), 0);
    do {
        if (!is_graceful(seq)) continue;
        tally.none += 1;
        tally.one_endpoint[size_t(seq.front())] += 1;
        tally.two_endpoints[size_t(seq.front()) * size_t(n) + size_t(seq.back())] += 1;
    } while (std::next_permutation(seq.begin(), seq.end()));
    return tally;
}

Count dfs_count(int n, const Constraint& c) {
    const PartialState root = PartialState::root(n);
    c.validate(n);
    if (n == 1) return single_label_count(c);
    Count total;
    dfs_visit(root, c, total);
    return total;
}

bool admits(const PartialState& s, const Constraint& c) {
    switch (c.kind()) {
        case Constraint::Kind::None: return true;
        case Constraint::Kind::OneEndpoint: return s.free_slots(c.first()) >= 1;
        case Constraint::Kind::TwoEndpoints: {
            const int a = c.first();
            const int b = c.second();
            if (a == b) return s.size() == 1;
            if (s.free_slots(a) == 0 || s.free_slots(b) == 0) return false;
            // a and b already end the same partial path, which can never grow
            // into the full path without using one of them.
            return !(s.free_slots(a) == 1 && s.partner(a) == b && !s.is_terminal());
        }
    }
    return true;
}

ClassMap expand_level(const ClassMap& m, const Constraint& c, const SearchOptions& opts) {
    return expand_impl(nullptr, m, c, opts);
}

ClassMap expand_level(ClassMap&& m, const Constraint& c, const SearchOptions& opts) {
    return expand_impl(&m, m, c, opts);
}

Count finalize(const ClassMap& m, const Constraint& c) {
    if (m.level() != 0) {
        throw std::logic_error("finalize requires a terminal map, got level " +
                               std::to_string(m.level()));
    }
    const int n = m.label_count();
    c.validate(n);
    if (n == 1) return single_label_count(c) * m.node_sum();
    const Constraint mirrored = c.mirrored(n);
    Count total;
    m.for_each([&](std::span<const std::uint8_t> codes, const MultiplicityPair& p) {
        const auto [e0, e1] = terminal_ends(decode_codes(codes));
        if (c.kind() == Constraint::Kind::None) {
            total += p.total();
            return;
        }
        // Reflected nodes are complements of the representative; reading
        // them under `c` is reading the representative under `mirrored`.
        if (!terminal_readings(e0, e1, c).is_zero()) total += p.direct;
        if (!terminal_readings(e0, e1, mirrored).is_zero()) total += p.reflected;
    });
    if (c.kind() == Constraint::Kind::None) {
        // Each undirected path reads two ways.
        total *= 2;
    }
    return total;
}

CountResult resume_count(ClassMap start, const Constraint& c, const SearchOptions& opts) {
    const auto t0 = Clock::now();
    const int n = start.label_count();
    c.validate(n);
    CountResult result;
    result.n = n;
    result.constraint = c;
    result.levels.push_back({start.level(), start.size(), start.node_sum(), {}});
    ClassMap current = std::move(start);
    while (current.level() > 0) {
        const auto level_start = Clock::now();
        current = expand_level(std::move(current), c, opts);
        LevelStats stats{current.level(), current.size(), current.node_sum(),
                         Clock::now() - level_start};
        result.levels.push_back(stats);
        if (opts.on_level) opts.on_level(current, stats);
    }
    result.count = finalize(current, c);
    result.elapsed = Clock::now() - t0;
    return result;
}

CountResult count(int n, const Constraint& c, const SearchOptions& opts) {
    ClassMap root = ClassMap::root(n);
    return resume_count(std::move(root), c, opts);
}

namespace {

class Enumerator {
public:
    Enumerator(int n, const Constraint& c, std::size_t limit)
        : n_(n), constraint_(c), limit_(limit) {}

    Enumeration run() {
        if (n_ == 1) {
            const std::vector<int> single{0};
            if (constraint_.admits_sequence(single)) emit(single);
        } else {
            visit(PartialState::root(n_));
        }
        return std::move(result_);
    }

private:
    bool done() const { return result_.truncated; }

    void emit(const std::vector<int>& seq) {
        if (result_.permutations.size() >= limit_) {
            result_.truncated = true;
            return;
        }
        result_.permutations.emplace_back(seq);
    }

    void visit(const PartialState& s) {
        if (done()) return;
        if (s.is_terminal()) {
            emit_readings(s);
            return;
        }
        const int k = s.next_edge_label();
        for (int u = 0; u + k < n_ && !done(); ++u) {
            if (!can_add_edge(s, u, u + k)) continue;
            const PartialState child = add_edge(s, u, u + k);
            if (!admits(child, constraint_)) continue;
            edges_.emplace_back(u, u + k);
            visit(child);
            edges_.pop_back();
        }
    }

    void emit_readings(const PartialState& s) {
        std::vector<std::array<int, 2>> adjacent(size_t(n_), {-1, -1});
        for (auto [u, v] : edges_) {
            auto& au = adjacent[size_t(u)];
            (au[0] < 0 ? au[0] : au[1]) = v;
            auto& av = adjacent[size_t(v)];
            (av[0] < 0 ? av[0] : av[1]) = u;
        }
        const auto [e0, e1] = terminal_ends(s);
        std::vector<int> seq;
        seq.reserve(size_t(n_));
        for (int prev = -1, cur = e0; cur >= 0;) {
            seq.push_back(cur);
            const auto& nb = adjacent[size_t(cur)];
            const int next = nb[0] != prev ? nb[0] : nb[1];
            prev = cur;
            cur = next;
        }
        if (constraint_.admits_sequence(seq)) emit(seq);
        std::reverse(seq.begin(), seq.end());
        if (constraint_.admits_sequence(seq)) emit(seq);
    }

    int n_;
    Constraint constraint_;
    std::size_t limit_;
    std::vector<LabelPair> edges_;
    Enumeration result_;
};

}  // namespace

Enumeration enumerate(int n, const Constraint& c, std::size_t limit) {
    (void)PartialState::root(n);
    c.validate(n);
    return Enumerator(n, c, limit).run();
}

}  // namespace graceful

#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "graceful/class_map.hpp"
#include "graceful/constraint.hpp"
#include "graceful/count.hpp"
#include "graceful/permutation.hpp"
#include "graceful/state.hpp"

namespace graceful {

/// Largest n the brute-force oracle accepts (n! permutations).
inline constexpr int kBruteForceMaxN = 11;

/// Thrown when a computation is refused: oracle guards and class budgets.
class ComputationRefused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LevelStats {
    int level = 0;
    std::size_t class_count = 0;
    Count node_sum;
    std::chrono::duration<double> wall_time{0};
};

struct SearchOptions {
    unsigned threads = 1;
    /// Drop orientations that can no longer satisfy the endpoint constraint.
    bool prune = true;
    /// Refuse (ComputationRefused) once a level holds more classes; 0 = no cap.
    std::size_t max_classes = 0;
    /// Called after every level barrier with the fresh map.
    std::function<void(const ClassMap&, const LevelStats&)> on_level;
};

struct CountResult {
    int n = 0;
    Constraint constraint;
    Count count;
    std::vector<LevelStats> levels;
    std::chrono::duration<double> elapsed{0};
};

struct Enumeration {
    std::vector<GracefulPermutation> permutations;
    bool truncated = false;
};

/// Brute force over all n! orderings. Refuses n > kBruteForceMaxN.
Count brute_force_count(int n, const Constraint& c);

/// Brute-force counts for every constraint at once, from a single pass over
/// the n! orderings. Indexing: one_endpoint[a], two_endpoints[a * n + b].
struct BruteForceTally {
    int n = 0;
    Count none;
    std::vector<Count> one_endpoint;
    std::vector<Count> two_endpoints;

    Count operator[](const Constraint& c) const;
};
BruteForceTally brute_force_tally(int n);

/// Plain recursive search over the unfolded tree.
Count dfs_count(int n, const Constraint& c);

/// Whether the node `s` can still end as a permutation satisfying `c`.
bool admits(const PartialState& s, const Constraint& c);

/// One level of the folded breadth-first search.
ClassMap expand_level(const ClassMap& m, const Constraint& c, const SearchOptions& opts = {});
/// Same, releasing the parent's storage while it is consumed.
ClassMap expand_level(ClassMap&& m, const Constraint& c, const SearchOptions& opts = {});

/// Number of permutations represented by a terminal (level 0) map.
Count finalize(const ClassMap& m, const Constraint& c);

/// Folded BFS from the root down to level 0.
CountResult count(int n, const Constraint& c, const SearchOptions& opts = {});

/// Continues a folded BFS from an intermediate map (e.g. a loaded checkpoint).
CountResult resume_count(ClassMap start, const Constraint& c, const SearchOptions& opts = {});

/// All permutations satisfying `c`, in depth-first order, at most `limit`.
Enumeration enumerate(int n, const Constraint& c, std::size_t limit = SIZE_MAX);

}  // namespace graceful

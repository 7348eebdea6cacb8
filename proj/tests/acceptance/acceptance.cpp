// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "graceful/bounds.hpp"
#include "graceful/report.hpp"
#include "graceful/search.hpp"

using namespace graceful;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned thresholds.
constexpr double kLimitG7Seconds = 1.0;
constexpr double kLimitG20Seconds = 5.0;
constexpr double kLimitG26Seconds = 30.0;
constexpr double kLimitOracleSeconds = 300.0;
constexpr std::size_t kMaxClassesG40 = 300000;
const Count kG40Low = Count::parse("100000000000000000");
const Count kG40High = Count::parse("300000000000000000");
const Count kG64 = Count::parse("1172380428523169632220649");
constexpr double kRatioLow = 3.0;
constexpr double kRatioHigh = 4.5;
constexpr unsigned kManyWorkers = 4;

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<Constraint> all_constraints(int n) {
    std::vector<Constraint> out{Constraint::none()};
    for (int a = 0; a < n; ++a) out.push_back(Constraint::one_endpoint(a));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) out.push_back(Constraint::two_endpoints(a, b));
    }
    return out;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Timed {
    Count value;
    double seconds = 0.0;
};

Timed timed_count(int n, const Constraint& c) {
    SearchOptions opts;
    opts.threads = workers();
    const auto t0 = Clock::now();
    const Count v = count(n, c, opts).count;
    return {v, seconds_since(t0)};
}

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f s", s);
    return buf;
}

Outcome exact_and_fast(int n, const Constraint& c, Count expected, double limit) {
    const auto r = timed_count(n, c);
    std::ostringstream os;
    os << "G(" << n << (c.kind() == Constraint::Kind::None ? "" : ";" + c.to_string())
       << ") = " << r.value << " (expected " << expected << "), " << fmt_seconds(r.seconds)
       << " (limit " << limit << " s)";
    return {r.value == expected && r.seconds < limit, os.str()};
}

Outcome criterion_1() { return exact_and_fast(7, Constraint::none(), 32, kLimitG7Seconds); }

Outcome criterion_2() {
    return exact_and_fast(20, Constraint::two_endpoints(5, 15), 4382, kLimitG20Seconds);
}

Outcome criterion_3() {
    return exact_and_fast(26, Constraint::two_endpoints(6, 19), 636408, kLimitG26Seconds);
}

Outcome criterion_4() {
    const auto dir = fs::temp_directory_path() / "graceful-acceptance-64";
    fs::remove_all(dir);
    SearchOptions opts;
    opts.threads = workers();
    const auto t0 = Clock::now();
    const auto c = Constraint::two_endpoints(16, 48);
    const auto r = count_with_checkpoints(64, c, dir, false, opts);
    const double secs = seconds_since(t0);
    const bool saved = fs::exists(checkpoint_file(dir, 64, c));
    fs::remove_all(dir);
    const bool certified = certify_bound(r.count, 64, DecimalThreshold::parse("2.37"));
    std::ostringstream os;
    os << "G(64;16,48) = " << r.count << ", gamma = " << truncated_root(r.count, 64)
       << ", certify 2.37: " << (certified ? "true" : "false")
       << ", checkpointed: " << (saved ? "yes" : "no") << ", " << fmt_seconds(secs);
    return {r.count == kG64 && certified && saved, os.str()};
}

struct G40Run {
    Count value;
    std::size_t peak = 0;
    int peak_level = 0;
    double seconds = 0.0;
};

G40Run run_g40() {
    SearchOptions opts;
    opts.threads = workers();
    const auto t0 = Clock::now();
    const auto r = count(40, Constraint::none(), opts);
    G40Run out{r.count, 0, 0, seconds_since(t0)};
    for (const auto& l : r.levels) {
        if (l.class_count > out.peak) {
            out.peak = l.class_count;
            out.peak_level = l.level;
        }
    }
    return out;
}

Outcome criterion_5(const G40Run& g40) {
    const bool in_range = kG40Low <= g40.value && g40.value < kG40High;
    const bool small_levels = g40.peak < kMaxClassesG40;
    std::ostringstream os;
    os << "G(40) = " << g40.value << " (in [1e17, 3e17): " << (in_range ? "yes" : "no")
       << "), peak classes " << g40.peak << " at level " << g40.peak_level << " (limit "
       << kMaxClassesG40 << "), " << fmt_seconds(g40.seconds);
    return {in_range && small_levels, os.str()};
}

Outcome criterion_6() {
    const auto t0 = Clock::now();
    std::size_t checked = 0;
    std::size_t mismatches = 0;
    std::string first_mismatch;
    for (int n = 1; n <= 10; ++n) {
        const auto tally = brute_force_tally(n);
        for (const auto& c : all_constraints(n)) {
            const Count bfs = count(n, c).count;
            const Count dfs = dfs_count(n, c);
            const Count brute = brute_force_count(n, c);
            ++checked;
            if (!(bfs == dfs && dfs == brute && brute == tally[c])) {
                if (mismatches++ == 0) {
                    first_mismatch = "n=" + std::to_string(n) + " c=" + c.to_string();
                }
            }
        }
    }
    const double secs = seconds_since(t0);
    const bool small_values = count(3, Constraint::none()).count == Count(4) &&
                              count(4, Constraint::none()).count == Count(4);
    std::ostringstream os;
    os << checked << " (n, constraint) cases, " << mismatches << " mismatches";
    if (mismatches > 0) os << " (first " << first_mismatch << ")";
    os << ", G(3) = G(4) = 4: " << (small_values ? "yes" : "no") << ", " << fmt_seconds(secs)
       << " (limit " << kLimitOracleSeconds << " s)";
    return {mismatches == 0 && small_values && secs < kLimitOracleSeconds, os.str()};
}

Outcome criterion_7() {
    std::vector<std::string> failures;

    SearchOptions unpruned;
    unpruned.prune = false;
    for (int n = 1; n <= 12; ++n) {
        for (const auto& c : all_constraints(n)) {
            if (!(count(n, c).count == count(n, c, unpruned).count)) {
                failures.push_back("pruning n=" + std::to_string(n) + " c=" + c.to_string());
            }
        }
    }

    for (int n = 2; n <= 10; ++n) {
        const Count total = count(n, Constraint::none()).count;
        Count sum_one;
        for (int a = 0; a < n; ++a) {
            const Count one = count(n, Constraint::one_endpoint(a)).count;
            sum_one += one;
            if (!(one == count(n, Constraint::one_endpoint(n - 1 - a)).count)) {
                failures.push_back("complement n=" + std::to_string(n));
            }
            Count sum_two;
            for (int b = 0; b < n; ++b) {
                const Count two = count(n, Constraint::two_endpoints(a, b)).count;
                sum_two += two;
                if (!(two == count(n, Constraint::two_endpoints(b, a)).count) ||
                    !(two == count(n, Constraint::two_endpoints(n - 1 - a, n - 1 - b)).count)) {
                    failures.push_back("pair symmetry n=" + std::to_string(n));
                }
            }
            if (!(sum_two == one)) failures.push_back("aggregation n=" + std::to_string(n));
        }
        if (!(sum_one == total)) failures.push_back("aggregation n=" + std::to_string(n));
    }

    for (int m = 1; m <= 5; ++m) {
        for (int j = 0; j < m; ++j) {
            for (const auto& p : enumerate(2 * m, Constraint::two_endpoints(j, j + m)).permutations) {
                if (!is_bipartite_graceful(p, m)) failures.push_back("bipartite " + p.to_string());
            }
        }
    }

    for (int m = 1; m <= 3; ++m) {
        for (int j = 0; j < m; ++j) {
            const auto blocks = enumerate(2 * m, Constraint::two_endpoints(j, j + m));
            // No (r; j)-permutation exists for r <= j.
            for (int r = j + 1; r <= 5; ++r) {
                const auto seeds = enumerate(r, Constraint::one_endpoint(j));
                std::set<GracefulPermutation> seen;
                for (const auto& p : blocks.permutations) {
                    for (const auto& q : seeds.permutations) {
                        try {
                            const auto g = glue(p, q, m, j, r);
                            if (g.front() != j || g.size() != r + 2 * m) {
                                failures.push_back("glue shape " + g.to_string());
                            }
                            seen.insert(g);
                        } catch (const std::exception& e) {
                            failures.push_back(std::string("glue: ") + e.what());
                        }
                    }
                }
                if (seen.size() != blocks.permutations.size() * seeds.permutations.size()) {
                    failures.push_back("glue not injective m=" + std::to_string(m));
                }
            }
        }
    }

    std::size_t inequalities = 0;
    for (int m = 1; 2 * m < 12; ++m) {
        for (int j = 0; j <= m; ++j) {
            for (int r = 1; r + 2 * m <= 12; ++r) {
                ++inequalities;
                if (!verify_inequality(r, m, j).holds) {
                    failures.push_back("inequality r=" + std::to_string(r) +
                                       " m=" + std::to_string(m) + " j=" + std::to_string(j));
                }
            }
        }
    }

    std::ostringstream os;
    os << "pruning, symmetry, bipartite, glue and " << inequalities << " inequality checks: "
       << failures.size() << " failures";
    if (!failures.empty()) os << " (first: " << failures.front() << ")";
    return {failures.empty(), os.str()};
}

Outcome criterion_8() {
    std::vector<std::string> failures;
    SearchOptions many;
    many.threads = kManyWorkers;
    const std::vector<std::pair<int, Constraint>> cases{{20, Constraint::two_endpoints(5, 15)},
                                                        {26, Constraint::two_endpoints(6, 19)},
                                                        {28, Constraint::none()},
                                                        {24, Constraint::one_endpoint(7)}};
    for (const auto& [n, c] : cases) {
        std::map<int, std::vector<std::uint8_t>> single_levels;
        SearchOptions one;
        one.on_level = [&](const ClassMap& m, const LevelStats&) {
            single_levels[m.level()] = serialize_checkpoint(m, c);
        };
        const Count a = count(n, c, one).count;
        bool levels_equal = true;
        many.on_level = [&](const ClassMap& m, const LevelStats&) {
            levels_equal = levels_equal && serialize_checkpoint(m, c) == single_levels[m.level()];
        };
        const Count b = count(n, c, many).count;
        if (!(a == b) || !levels_equal) {
            failures.push_back("threads n=" + std::to_string(n) + " c=" + c.to_string());
        }
    }

    const auto c = Constraint::two_endpoints(5, 15);
    const Count uninterrupted = count(20, c).count;
    std::map<int, std::vector<std::uint8_t>> snapshots;
    SearchOptions snap;
    snap.on_level = [&](const ClassMap& m, const LevelStats&) {
        snapshots[m.level()] = serialize_checkpoint(m, c);
    };
    (void)count(20, c, snap);
    const auto dir = fs::temp_directory_path() / "graceful-acceptance-resume";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto file = checkpoint_file(dir, 20, c);
    for (const auto& [level, bytes] : snapshots) {
        {
            std::ofstream out(file, std::ios::binary);
            out.write(reinterpret_cast<const char*>(bytes.data()),
                      static_cast<std::streamsize>(bytes.size()));
        }
        const Count resumed = count_with_checkpoints(20, c, dir, true).count;
        if (!(resumed == uninterrupted)) {
            failures.push_back("resume from level " + std::to_string(level));
        }
    }
    fs::remove_all(dir);

    std::ostringstream os;
    os << cases.size() << " runs at 1 vs " << kManyWorkers << " workers, resume of G(20;5,15) from "
       << snapshots.size() << " levels: " << failures.size() << " failures";
    if (!failures.empty()) os << " (first: " << failures.front() << ")";
    return {failures.empty(), os.str()};
}

Outcome criterion_9(const G40Run& g40) {
    SearchOptions opts;
    opts.threads = workers();
    auto rows = emit_table(30, 39, opts);
    rows.push_back({40, g40.value});
    const auto ratios = ratios_from_table(rows);
    std::size_t inside = 0;
    std::ostringstream list;
    for (const auto& r : ratios) {
        const double v = std::stod(r.ratio);
        if (v >= kRatioLow && v <= kRatioHigh) ++inside;
        list << ' ' << r.n << ':' << r.ratio;
    }
    std::ostringstream os;
    os << "report only, " << inside << " of " << ratios.size() << " ratios G(n+1)/G(n) in ["
       << kRatioLow << ", " << kRatioHigh << "];" << list.str();
    return {true, os.str()};
}

}  // namespace

int main() {
    int failed = 0;
    auto report = [&](int id, const std::function<Outcome()>& fn) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << o.detail
                  << std::endl;
        if (!o.pass) ++failed;
    };

    report(1, criterion_1);
    report(2, criterion_2);
    report(3, criterion_3);
    report(4, criterion_4);
    G40Run g40;
    report(5, [&] {
        g40 = run_g40();
        return criterion_5(g40);
    });
    report(6, criterion_6);
    report(7, criterion_7);
    report(8, criterion_8);
    report(9, [&] { return criterion_9(g40); });

    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " failed")
              << std::endl;
    return failed == 0 ? 0 : 1;
}

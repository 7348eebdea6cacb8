#include "cli.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "graceful/bounds.hpp"
#include "graceful/report.hpp"
#include "graceful/search.hpp"

namespace graceful::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

unsigned default_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Options shared by the counting subcommands.
struct CountFlags {
    int n = 0;
    int endpoint = -1;
    std::string endpoints;
    unsigned threads = default_threads();
    std::string format = "plain";
    bool stats = false;
    std::string checkpoint_dir;
    bool resume = false;
    bool no_prune = false;
    std::size_t memory_budget_mb = 2048;

    CLI::Option* endpoint_opt = nullptr;
    CLI::Option* endpoints_opt = nullptr;
};

void add_threads(CLI::App* cmd, CountFlags& f) {
    cmd->add_option("--threads", f.threads, "Worker threads")
        ->envname("GRACEFUL_THREADS")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

void add_budget(CLI::App* cmd, CountFlags& f) {
    cmd->add_option("--memory-budget-mb", f.memory_budget_mb,
                    "Refuse once the class maps of one level would exceed this many MiB "
                    "(0 = unlimited)")
        ->capture_default_str();
}

void add_endpoint_flags(CLI::App* cmd, CountFlags& f) {
    f.endpoint_opt = cmd->add_option("--endpoint", f.endpoint, "Required first label A");
    f.endpoints_opt =
        cmd->add_option("--endpoints", f.endpoints, "Required first and last labels A,B");
    f.endpoint_opt->excludes(f.endpoints_opt);
}

Constraint constraint_from(const CountFlags& f, int n) {
    Constraint c;
    std::string flag;
    if (f.endpoint_opt != nullptr && f.endpoint_opt->count() > 0) {
        flag = "--endpoint";
        if (f.endpoint < 0) throw UsageError("--endpoint: label must be non-negative");
        c = Constraint::one_endpoint(f.endpoint);
    } else if (f.endpoints_opt != nullptr && f.endpoints_opt->count() > 0) {
        flag = "--endpoints";
        if (f.endpoints.find(',') == std::string::npos) {
            throw UsageError("--endpoints: expected A,B but got '" + f.endpoints + "'");
        }
        try {
            c = Constraint::parse(f.endpoints);
        } catch (const std::invalid_argument& e) {
            throw UsageError("--endpoints: " + std::string(e.what()));
        }
    }
    try {
        c.validate(n);
    } catch (const std::invalid_argument& e) {
        throw UsageError(flag + ": " + e.what());
    }
    return c;
}

void check_n(int n, const char* flag = "--n") {
    if (n < 1 || n > kMaxLabels) {
        throw UsageError(std::string(flag) + ": must be in 1.." + std::to_string(kMaxLabels));
    }
}

SearchOptions search_options(const CountFlags& f, int n) {
    SearchOptions opts;
    opts.threads = f.threads;
    opts.prune = !f.no_prune;
    if (f.memory_budget_mb != 0) {
        // Parent and child maps are alive together at every level barrier.
        const std::size_t per_class = 2 * (static_cast<std::size_t>(n) + sizeof(MultiplicityPair) + 8);
        opts.max_classes = f.memory_budget_mb * (std::size_t{1} << 20) / per_class;
    }
    return opts;
}

int run_count(const CountFlags& f, std::ostream& out, std::ostream& err) {
    check_n(f.n);
    const Constraint c = constraint_from(f, f.n);
    const Format format = parse_format(f.format);
    const SearchOptions opts = search_options(f, f.n);
    if (f.resume && f.checkpoint_dir.empty()) {
        throw UsageError("--resume: requires --checkpoint-dir");
    }
    const CountResult result = f.checkpoint_dir.empty()
                                   ? count(f.n, c, opts)
                                   : count_with_checkpoints(f.n, c, f.checkpoint_dir, f.resume, opts);
    out << format_result(result, format, f.stats);
    if (f.stats && format != Format::Plain) err << format_levels(result);
    return kExitOk;
}

int run_stats(const CountFlags& f, std::ostream& out) {
    check_n(f.n);
    const Constraint c = constraint_from(f, f.n);
    const CountResult result = count(f.n, c, search_options(f, f.n));
    out << format_levels(result);
    std::size_t peak = 0;
    for (const auto& l : result.levels) peak = std::max(peak, l.class_count);
    out << "peak classes " << peak << "\ncount " << result.count << '\n';
    return kExitOk;
}

int run_table(int from, int to, const CountFlags& f, bool ratios, std::ostream& out,
              std::ostream& err) {
    if (from < 1) throw UsageError("--from: must be at least 1");
    if (to < from || (ratios && to < from + 1)) {
        throw UsageError(std::string("--to: must be at least ") +
                         std::to_string(ratios ? from + 1 : from));
    }
    check_n(to, "--to");
    const Format format = parse_format(f.format);
    std::vector<TableRow> rows;
    try {
        for (int n = from; n <= to; ++n) {
            rows.push_back({n, count(n, Constraint::none(), search_options(f, n)).count});
        }
    } catch (const ComputationRefused& e) {
        if (!rows.empty()) {
            out << (ratios ? format_ratios(ratios_from_table(rows)) : format_table(rows, format));
        }
        err << "refused at n=" << rows.size() + size_t(from) << ": " << e.what() << '\n';
        return kExitRefused;
    }
    out << (ratios ? format_ratios(ratios_from_table(rows)) : format_table(rows, format));
    return kExitOk;
}

int run_enumerate(const CountFlags& f, std::size_t limit, std::ostream& out, std::ostream& err) {
    check_n(f.n);
    const Constraint c = constraint_from(f, f.n);
    const Enumeration e = enumerate(f.n, c, limit);
    for (const auto& p : e.permutations) out << p.to_string() << '\n';
    if (e.truncated) err << "output truncated at --limit " << limit << '\n';
    return kExitOk;
}

int run_bound(int m, int j, const std::string& threshold_text, const CountFlags& f,
              std::ostream& out) {
    if (m < 1 || 2 * m > kMaxLabels) throw UsageError("--m: out of range");
    if (j < 0 || j >= m) throw UsageError("--j: must satisfy 0 <= j < m");
    std::optional<DecimalThreshold> threshold;
    if (!threshold_text.empty()) {
        try {
            threshold = DecimalThreshold::parse(threshold_text);
        } catch (const std::invalid_argument& e) {
            throw UsageError("--threshold: " + std::string(e.what()));
        }
    }
    const BoundResult b = gamma(m, j, threshold, search_options(f, 2 * m));
    out << "G(" << 2 * m << ';' << j << ',' << j + m << ") = " << b.count << '\n';
    out << "gamma = " << b.gamma_text << (b.zero_count ? " (zero count)" : "") << '\n';
    if (b.certified) {
        out << "certified: " << (*b.certified ? "true" : "false") << " (threshold "
            << b.threshold->to_string() << ")\n";
    }
    return kExitOk;
}

int run_witness(int m, int j, int r, int iterations, std::ostream& out) {
    if (m < 1) throw UsageError("--m: must be positive");
    if (j < 0 || j >= m) throw UsageError("--j: must satisfy 0 <= j < m");
    if (r < 1) throw UsageError("--r: must be positive");
    if (iterations < 0) throw UsageError("--iterations: must be non-negative");
    const long long length = r + 2LL * m * iterations;
    if (length > kMaxLabels) throw UsageError("--iterations: witness would exceed 254 labels");
    const GracefulPermutation w = iterated_witness(m, j, r, iterations);
    if (!is_graceful(w.labels()) || w.front() != j) {
        throw std::logic_error("witness failed validation");
    }
    out << w.to_string() << '\n';
    out << "length " << w.size() << ", starts at " << w.front() << ", graceful: true\n";
    return kExitOk;
}

int run_verify(int max_n, std::ostream& out, std::ostream& err) {
    if (max_n < 1) throw UsageError("--max-n: must be positive");
    if (max_n > kBruteForceMaxN) {
        err << "refused: brute-force oracle is limited to n <= " << kBruteForceMaxN << '\n';
        return kExitRefused;
    }
    bool agree = true;
    for (int n = 1; n <= max_n; ++n) {
        const BruteForceTally tally = brute_force_tally(n);
        std::vector<Constraint> all{Constraint::none()};
        for (int a = 0; a < n; ++a) all.push_back(Constraint::one_endpoint(a));
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) all.push_back(Constraint::two_endpoints(a, b));
        }
        std::size_t mismatches = 0;
        for (const auto& c : all) {
            const Count brute = tally[c];
            const Count dfs = dfs_count(n, c);
            const Count bfs = count(n, c).count;
            if (!(brute == dfs && dfs == bfs)) {
                ++mismatches;
                err << "mismatch n=" << n << " constraint " << c.to_string() << ": brute "
                    << brute << " dfs " << dfs << " bfs " << bfs << '\n';
            }
        }
        out << "n=" << n << ": " << all.size() << " constraints, G(n)=" << tally.none
            << (mismatches == 0 ? ", agree" : ", MISMATCH") << '\n';
        agree = agree && mismatches == 0;
    }
    out << (agree ? "all oracles agree" : "oracles disagree") << '\n';
    return agree ? kExitOk : kExitRefused;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact enumeration and counting of graceful permutations", "graceful"};
    app.require_subcommand(1);

    CountFlags count_flags;
    auto* count_cmd = app.add_subcommand("count", "Count graceful n-permutations");
    count_cmd->add_option("--n", count_flags.n, "Number of labels")->required();
    add_endpoint_flags(count_cmd, count_flags);
    add_threads(count_cmd, count_flags);
    count_cmd->add_option("--format", count_flags.format, "plain, csv or json")
        ->check(CLI::IsMember({"plain", "csv", "json"}));
    count_cmd->add_flag("--stats", count_flags.stats, "Print per-level statistics");
    count_cmd->add_option("--checkpoint-dir", count_flags.checkpoint_dir,
                          "Write a checkpoint after every level");
    count_cmd->add_flag("--resume", count_flags.resume, "Continue from the checkpoint in the dir");
    count_cmd->add_flag("--no-prune", count_flags.no_prune, "Disable constraint pruning");
    add_budget(count_cmd, count_flags);

    CountFlags table_flags;
    int table_from = 1;
    int table_to = 1;
    auto* table_cmd = app.add_subcommand("table", "G(n) for a range of n");
    table_cmd->add_option("--from", table_from)->required();
    table_cmd->add_option("--to", table_to)->required();
    table_cmd->add_option("--format", table_flags.format, "plain, csv or json")
        ->check(CLI::IsMember({"plain", "csv", "json"}));
    add_threads(table_cmd, table_flags);
    add_budget(table_cmd, table_flags);

    CountFlags ratio_flags;
    int ratio_from = 1;
    int ratio_to = 2;
    auto* ratios_cmd = app.add_subcommand("ratios", "G(n+1)/G(n) for a range of n");
    ratios_cmd->add_option("--from", ratio_from)->required();
    ratios_cmd->add_option("--to", ratio_to)->required();
    add_threads(ratios_cmd, ratio_flags);
    add_budget(ratios_cmd, ratio_flags);

    CountFlags enum_flags;
    std::size_t limit = 1000;
    auto* enum_cmd = app.add_subcommand("enumerate", "List graceful n-permutations");
    enum_cmd->add_option("--n", enum_flags.n)->required();
    add_endpoint_flags(enum_cmd, enum_flags);
    enum_cmd->add_option("--limit", limit, "Stop after this many permutations")
        ->capture_default_str();

    CountFlags bound_flags;
    int bound_m = 0;
    int bound_j = 0;
    std::string threshold;
    auto* bound_cmd = app.add_subcommand("bound", "Growth base from G(2m; j, j+m)");
    bound_cmd->add_option("--m", bound_m)->required();
    bound_cmd->add_option("--j", bound_j)->required();
    bound_cmd->add_option("--threshold", threshold, "Decimal base to certify, e.g. 2.37");
    add_threads(bound_cmd, bound_flags);
    add_budget(bound_cmd, bound_flags);

    int wit_m = 0;
    int wit_j = 0;
    int wit_r = 0;
    int iterations = 1;
    auto* witness_cmd = app.add_subcommand("witness", "Build a long permutation by gluing");
    witness_cmd->add_option("--m", wit_m)->required();
    witness_cmd->add_option("--j", wit_j)->required();
    witness_cmd->add_option("--r", wit_r)->required();
    witness_cmd->add_option("--iterations", iterations)->capture_default_str();

    int max_n = 0;
    auto* verify_cmd = app.add_subcommand("verify", "Cross-check all counting oracles");
    verify_cmd->add_option("--max-n", max_n)->required();

    CountFlags stats_flags;
    auto* stats_cmd = app.add_subcommand("stats", "Per-level class counts");
    stats_cmd->add_option("--n", stats_flags.n)->required();
    add_endpoint_flags(stats_cmd, stats_flags);
    add_threads(stats_cmd, stats_flags);
    add_budget(stats_cmd, stats_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*count_cmd) return run_count(count_flags, out, err);
        if (*table_cmd) return run_table(table_from, table_to, table_flags, false, out, err);
        if (*ratios_cmd) return run_table(ratio_from, ratio_to, ratio_flags, true, out, err);
        if (*enum_cmd) return run_enumerate(enum_flags, limit, out, err);
        if (*bound_cmd) return run_bound(bound_m, bound_j, threshold, bound_flags, out);
        if (*witness_cmd) return run_witness(wit_m, wit_j, wit_r, iterations, out);
        if (*verify_cmd) return run_verify(max_n, out, err);
        if (*stats_cmd) return run_stats(stats_flags, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "refused: " << e.what() << '\n';
        return kExitRefused;
    }
    return kExitUsage;
}

}  // namespace graceful::cli

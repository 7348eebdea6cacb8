#include <catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "graceful");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = graceful::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("count subcommand", "[cli]") {
    auto r = run({"count", "--n", "20", "--endpoints", "5,15"});
    CHECK(r.code == graceful::cli::kExitOk);
    CHECK(r.out == "4382\n");

    r = run({"count", "--n", "7", "--endpoint", "3", "--threads", "2"});
    CHECK(r.out == "8\n");

    r = run({"count", "--n", "10", "--format", "csv"});
    CHECK(r.out == "n,count\n10,296\n");

    r = run({"count", "--n", "10", "--format", "json"});
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["count"] == "296");

    r = run({"count", "--n", "9", "--stats"});
    CHECK(r.out.rfind("120\nlevel classes nodes seconds\n", 0) == 0);

    r = run({"count", "--n", "12", "--no-prune", "--endpoints", "2,9"});
    CHECK(r.code == 0);
}

TEST_CASE("usage errors exit with 2", "[cli]") {
    CHECK(run({"count", "--n", "20", "--endpoints", "5x15"}).code == graceful::cli::kExitUsage);
    CHECK(run({"count", "--n", "20", "--endpoints", "5,25"}).code == graceful::cli::kExitUsage);
    CHECK(run({"count", "--n", "20", "--endpoint", "3", "--endpoints", "5,15"}).code ==
          graceful::cli::kExitUsage);
    CHECK(run({"count", "--n", "0"}).code == graceful::cli::kExitUsage);
    CHECK(run({"count"}).code == graceful::cli::kExitUsage);
    CHECK(run({"count", "--n", "5", "--threads", "0"}).code == graceful::cli::kExitUsage);
    CHECK(run({"count", "--n", "5", "--format", "xml"}).code == graceful::cli::kExitUsage);
    CHECK(run({"count", "--n", "5", "--resume"}).code == graceful::cli::kExitUsage);
    CHECK(run({}).code == graceful::cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == graceful::cli::kExitUsage);
    const auto r = run({"count", "--n", "20", "--endpoints", "5x15"});
    CHECK(r.err.find("--endpoints") != std::string::npos);
    CHECK(run({"--help"}).code == graceful::cli::kExitOk);
}

TEST_CASE("refusals exit with 1", "[cli]") {
    auto r = run({"verify", "--max-n", "12"});
    CHECK(r.code == graceful::cli::kExitRefused);
    CHECK(r.err.find("refused") != std::string::npos);

    r = run({"count", "--n", "40", "--memory-budget-mb", "1"});
    CHECK(r.code == graceful::cli::kExitRefused);
    CHECK(r.err.rfind("refused: ", 0) == 0);
}

TEST_CASE("table and ratios", "[cli]") {
    auto r = run({"table", "--from", "1", "--to", "5"});
    CHECK(r.out == "1 1\n2 2\n3 4\n4 4\n5 8\n");
    r = run({"table", "--from", "3", "--to", "4", "--format", "csv"});
    CHECK(r.out == "n,count\n3,4\n4,4\n");
    r = run({"ratios", "--from", "3", "--to", "5"});
    CHECK(r.out == "3 1.000\n4 2.000\n");
    CHECK(run({"ratios", "--from", "3", "--to", "3"}).code != 0);
}

TEST_CASE("enumerate, bound, witness, verify, stats", "[cli]") {
    auto r = run({"enumerate", "--n", "4"});
    CHECK(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);

    r = run({"enumerate", "--n", "10", "--limit", "3"});
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);
    CHECK(r.err.find("truncated") != std::string::npos);

    r = run({"bound", "--m", "10", "--j", "5", "--threshold", "1.52"});
    CHECK(r.code == 0);
    CHECK(r.out.find("G(20;5,15) = 4382") != std::string::npos);
    CHECK(r.out.find("gamma = 1.5208") != std::string::npos);
    CHECK(r.out.find("certified: true") != std::string::npos);

    r = run({"bound", "--m", "10", "--j", "5", "--threshold", "1.521"});
    CHECK(r.out.find("certified: false") != std::string::npos);

    r = run({"witness", "--m", "2", "--j", "1", "--r", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("length 7, starts at 1, graceful: true") != std::string::npos);

    r = run({"verify", "--max-n", "7"});
    CHECK(r.code == 0);
    CHECK(r.out.find("all oracles agree") != std::string::npos);

    r = run({"stats", "--n", "9"});
    CHECK(r.code == 0);
    CHECK(r.out.find("count 120") != std::string::npos);
    CHECK(r.out.find("peak classes") != std::string::npos);
}

TEST_CASE("checkpoint flags", "[cli]") {
    const auto dir = std::filesystem::temp_directory_path() / "graceful-cli-ckpt";
    std::filesystem::remove_all(dir);
    auto r = run({"count", "--n", "20", "--endpoints", "5,15", "--checkpoint-dir", dir.string()});
    CHECK(r.out == "4382\n");
    CHECK(std::filesystem::exists(dir / "graceful-n20-e5-15.ckpt"));
    r = run({"count", "--n", "20", "--endpoints", "5,15", "--checkpoint-dir", dir.string(),
             "--resume"});
    CHECK(r.out == "4382\n");
    std::filesystem::remove_all(dir);
}

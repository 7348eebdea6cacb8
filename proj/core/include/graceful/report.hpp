#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "graceful/class_map.hpp"
#include "graceful/constraint.hpp"
#include "graceful/count.hpp"
#include "graceful/search.hpp"

namespace graceful {

enum class Format { Plain, Csv, Json };

/// Parses "plain", "csv" or "json". Throws std::invalid_argument.
Format parse_format(std::string_view text);

struct TableRow {
    int n = 0;
    Count count;
};

struct RatioRow {
    int n = 0;
    /// G(n+1)/G(n) rounded half-up to three decimals.
    std::string ratio;
};

/// G(n) for n = from..to.
std::vector<TableRow> emit_table(int from, int to, const SearchOptions& opts = {});
std::string format_table(const std::vector<TableRow>& rows, Format format);

/// Ratios for n = from..to-1 (needs G up to `to`).
std::vector<RatioRow> emit_ratios(int from, int to, const SearchOptions& opts = {});
std::vector<RatioRow> ratios_from_table(const std::vector<TableRow>& rows);
std::string format_ratios(const std::vector<RatioRow>& rows);

/// `numerator / denominator` rounded half-up to `digits` decimals.
std::string decimal_ratio(Count numerator, Count denominator, int digits = 3);

std::string format_result(const CountResult& result, Format format, bool with_stats = false);
std::string format_levels(const CountResult& result);

// ---------------------------------------------------------------------------
// Checkpoints
//
// Layout (little-endian): "GRACEFL1", u16 version, u16 n, u8 constraint tag,
// u8 label a, u8 label b, u16 level, u64 record count, then per record the
// 2n key bytes, 16 bytes direct, 16 bytes reflected. Records are sorted by
// key. Unused constraint labels are written as 0xFF.
// ---------------------------------------------------------------------------

inline constexpr std::uint16_t kCheckpointVersion = 1;

class CheckpointError : public std::runtime_error {
public:
    enum class Kind { Io, BadMagic, BadVersion, Truncated, InvalidRecord, Mismatch };

    CheckpointError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct Checkpoint {
    Constraint constraint;
    ClassMap map;
};

std::vector<std::uint8_t> serialize_checkpoint(const ClassMap& m, const Constraint& c);
Checkpoint parse_checkpoint(std::span<const std::uint8_t> bytes);

/// Writes atomically (temporary file then rename).
void save_checkpoint(const ClassMap& m, const Constraint& c, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);
/// Loads and rejects files written for a different n or constraint.
ClassMap load_checkpoint(const std::filesystem::path& path, int n, const Constraint& c);

/// File used for (n, c) inside a checkpoint directory.
std::filesystem::path checkpoint_file(const std::filesystem::path& dir, int n, const Constraint& c);

/// Folded count that saves a checkpoint after every level into `dir` and,
/// when `resume` is set and a checkpoint exists, continues from it.
CountResult count_with_checkpoints(int n, const Constraint& c, const std::filesystem::path& dir,
                                   bool resume, SearchOptions opts = {});

}  // namespace graceful

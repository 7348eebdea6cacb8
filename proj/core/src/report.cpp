#include "graceful/report.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace graceful {

namespace {

using BigInt = boost::multiprecision::cpp_int;

constexpr char kMagic[8] = {'G', 'R', 'A', 'C', 'E', 'F', 'L', '1'};
constexpr std::size_t kHeaderSize = 8 + 2 + 2 + 3 + 2 + 8;
constexpr std::uint8_t kNoLabel = 0xFF;

BigInt to_big(Count c) {
    BigInt v = c.high64();
    v <<= 64;
    v += c.low64();
    return v;
}

template <class T>
void put_le(std::vector<std::uint8_t>& out, T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
    }
}

template <class T>
T get_le(const std::uint8_t* in) {
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        value |= static_cast<T>(static_cast<T>(in[i]) << (8 * i));
    }
    return value;
}

std::uint8_t label_byte(int label) {
    return label < 0 ? kNoLabel : static_cast<std::uint8_t>(label);
}

}  // namespace

Format parse_format(std::string_view text) {
    if (text == "plain") return Format::Plain;
    if (text == "csv") return Format::Csv;
    if (text == "json") return Format::Json;
    throw std::invalid_argument("unknown format '" + std::string(text) + "'");
}

std::vector<TableRow> emit_table(int from, int to, const SearchOptions& opts) {
    if (from < 1 || to < from) {
        throw std::invalid_argument("table range must satisfy 1 <= from <= to");
    }
    std::vector<TableRow> rows;
    for (int n = from; n <= to; ++n) {
        rows.push_back({n, count(n, Constraint::none(), opts).count});
    }
    return rows;
}

std::string format_table(const std::vector<TableRow>& rows, Format format) {
    std::ostringstream os;
    switch (format) {
        case Format::Plain:
            for (const auto& r : rows) os << r.n << ' ' << r.count << '\n';
            break;
        case Format::Csv:
            os << "n,count\n";
            for (const auto& r : rows) os << r.n << ',' << r.count << '\n';
            break;
        case Format::Json: {
            auto doc = nlohmann::json::array();
            for (const auto& r : rows) doc.push_back({{"n", r.n}, {"count", r.count.to_string()}});
            os << doc.dump() << '\n';
            break;
        }
    }
    return os.str();
}

std::string decimal_ratio(Count numerator, Count denominator, int digits) {
    if (denominator.is_zero()) throw std::domain_error("ratio with zero denominator");
    const BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(digits));
    const BigInt num = to_big(numerator) * scale * 2 + to_big(denominator);
    const BigInt scaled = num / (to_big(denominator) * 2);
    std::string text = scaled.str();
    if (digits == 0) return text;
    if (static_cast<int>(text.size()) <= digits) {
        text.insert(0, static_cast<size_t>(digits) - text.size() + 1, '0');
    }
    text.insert(text.size() - static_cast<size_t>(digits), ".");
    return text;
}

std::vector<RatioRow> ratios_from_table(const std::vector<TableRow>& rows) {
    std::vector<RatioRow> out;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        out.push_back({rows[i].n, decimal_ratio(rows[i + 1].count, rows[i].count)});
    }
    return out;
}

std::vector<RatioRow> emit_ratios(int from, int to, const SearchOptions& opts) {
    if (to < from + 1) {
        throw std::invalid_argument("ratio range must satisfy to >= from + 1");
    }
    return ratios_from_table(emit_table(from, to, opts));
}

std::string format_ratios(const std::vector<RatioRow>& rows) {
    std::ostringstream os;
    for (const auto& r : rows) os << r.n << ' ' << r.ratio << '\n';
    return os.str();
}

std::string format_levels(const CountResult& result) {
    std::ostringstream os;
    os << "level classes nodes seconds\n";
    for (const auto& l : result.levels) {
        os << l.level << ' ' << l.class_count << ' ' << l.node_sum << ' ' << std::fixed
           << std::setprecision(6) << l.wall_time.count() << '\n';
    }
    return os.str();
}

std::string format_result(const CountResult& result, Format format, bool with_stats) {
    std::ostringstream os;
    switch (format) {
        case Format::Plain:
            os << result.count << '\n';
            if (with_stats) os << format_levels(result);
            break;
        case Format::Csv:
            os << "n,count\n" << result.n << ',' << result.count << '\n';
            break;
        case Format::Json: {
            auto levels = nlohmann::json::array();
            for (const auto& l : result.levels) {
                levels.push_back({{"level", l.level},
                                  {"classes", l.class_count},
                                  {"nodes", l.node_sum.to_string()}});
            }
            const nlohmann::json doc = {
                {"n", result.n},
                {"constraint", result.constraint.to_string()},
                {"count", result.count.to_string()},
                {"elapsed_ms",
                 std::chrono::duration_cast<std::chrono::milliseconds>(result.elapsed).count()},
                {"levels", levels}};
            os << doc.dump() << '\n';
            break;
        }
    }
    return os.str();
}

std::vector<std::uint8_t> serialize_checkpoint(const ClassMap& m, const Constraint& c) {
    const int n = m.label_count();
    const auto entries = m.sorted_entries();
    std::vector<std::uint8_t> out;
    out.reserve(kHeaderSize + entries.size() * (2 * size_t(n) + 32));
    for (char ch : kMagic) out.push_back(static_cast<std::uint8_t>(ch));
    put_le<std::uint16_t>(out, kCheckpointVersion);
    put_le<std::uint16_t>(out, static_cast<std::uint16_t>(n));
    out.push_back(static_cast<std::uint8_t>(c.kind()));
    out.push_back(c.kind() == Constraint::Kind::None ? kNoLabel : label_byte(c.first()));
    out.push_back(c.kind() == Constraint::Kind::TwoEndpoints ? label_byte(c.second()) : kNoLabel);
    put_le<std::uint16_t>(out, static_cast<std::uint16_t>(m.level()));
    put_le<std::uint64_t>(out, entries.size());
    unsigned char buf[16];
    for (const auto& [key, pair] : entries) {
        const auto bytes = key.bytes();
        out.insert(out.end(), bytes.begin(), bytes.end());
        pair.direct.store_le(buf);
        out.insert(out.end(), buf, buf + 16);
        pair.reflected.store_le(buf);
        out.insert(out.end(), buf, buf + 16);
    }
    return out;
}

Checkpoint parse_checkpoint(std::span<const std::uint8_t> bytes) {
    using Kind = CheckpointError::Kind;
    if (bytes.size() < sizeof(kMagic) || std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
        throw CheckpointError(Kind::BadMagic, "not a checkpoint file (bad magic)");
    }
    if (bytes.size() < kHeaderSize) {
        throw CheckpointError(Kind::Truncated, "checkpoint header is truncated");
    }
    const std::uint8_t* p = bytes.data() + sizeof(kMagic);
    const auto version = get_le<std::uint16_t>(p);
    if (version != kCheckpointVersion) {
        throw CheckpointError(Kind::BadVersion,
                              "unsupported checkpoint version " + std::to_string(version));
    }
    const int n = get_le<std::uint16_t>(p + 2);
    const std::uint8_t tag = p[4];
    const std::uint8_t a = p[5];
    const std::uint8_t b = p[6];
    const int level = get_le<std::uint16_t>(p + 7);
    const auto records = get_le<std::uint64_t>(p + 9);

    Constraint constraint;
    switch (tag) {
        case 0: constraint = Constraint::none(); break;
        case 1: constraint = Constraint::one_endpoint(a); break;
        case 2: constraint = Constraint::two_endpoints(a, b); break;
        default: throw CheckpointError(Kind::InvalidRecord, "unknown constraint tag");
    }
    if (n < 1 || n > kMaxLabels || level > n - 1) {
        throw CheckpointError(Kind::InvalidRecord, "header label count or level out of range");
    }
    try {
        constraint.validate(n);
    } catch (const std::invalid_argument& e) {
        throw CheckpointError(Kind::InvalidRecord, e.what());
    }

    const std::size_t record_size = 2 * size_t(n) + 32;
    const std::size_t body = bytes.size() - kHeaderSize;
    if (records > body / record_size) {
        throw CheckpointError(Kind::Truncated, "checkpoint holds fewer records than announced");
    }
    if (body != records * record_size) {
        throw CheckpointError(Kind::InvalidRecord, "trailing bytes after the last record");
    }

    ClassMap map(n, level);
    const std::uint8_t* rec = bytes.data() + kHeaderSize;
    CanonicalKey previous;
    for (std::uint64_t i = 0; i < records; ++i, rec += record_size) {
        auto fail = [i](const std::string& why) {
            throw CheckpointError(Kind::InvalidRecord,
                                  "record " + std::to_string(i) + ": " + why);
        };
        CanonicalKey key;
        try {
            key = CanonicalKey::from_bytes({rec, 2 * size_t(n)});
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
        if (key.decode().next_edge_label() != level) fail("key belongs to another level");
        if (!key.is_canonical()) fail("key is not canonical");
        if (i > 0 && !(previous < key)) fail("records are not strictly sorted");
        MultiplicityPair pair{Count::load_le(rec + 2 * n), Count::load_le(rec + 2 * n + 16)};
        if (pair.is_zero()) fail("empty multiplicity");
        if (key.is_self_complementary() && !pair.reflected.is_zero()) {
            fail("self-complementary class with reflected multiplicity");
        }
        map.add(key, pair);
        previous = std::move(key);
    }
    return {constraint, std::move(map)};
}

void save_checkpoint(const ClassMap& m, const Constraint& c, const std::filesystem::path& path) {
    const auto bytes = serialize_checkpoint(m, c);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw CheckpointError(CheckpointError::Kind::Io,
                                  "cannot open " + tmp.string() + " for writing");
        }
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
        if (!out) {
            throw CheckpointError(CheckpointError::Kind::Io, "write failed on " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw CheckpointError(CheckpointError::Kind::Io,
                              "cannot move checkpoint into " + path.string() + ": " + ec.message());
    }
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CheckpointError(CheckpointError::Kind::Io, "cannot open " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    try {
        return parse_checkpoint(bytes);
    } catch (const CheckpointError& e) {
        throw CheckpointError(e.kind(), path.string() + ": " + e.what());
    }
}

ClassMap load_checkpoint(const std::filesystem::path& path, int n, const Constraint& c) {
    Checkpoint cp = load_checkpoint(path);
    if (cp.map.label_count() != n || !(cp.constraint == c)) {
        throw CheckpointError(CheckpointError::Kind::Mismatch,
                              path.string() + " was written for n=" +
                                  std::to_string(cp.map.label_count()) + " constraint " +
                                  cp.constraint.to_string() + ", requested n=" +
                                  std::to_string(n) + " constraint " + c.to_string());
    }
    return std::move(cp.map);
}

std::filesystem::path checkpoint_file(const std::filesystem::path& dir, int n,
                                      const Constraint& c) {
    std::string name = "graceful-n" + std::to_string(n);
    if (c.kind() != Constraint::Kind::None) {
        std::string suffix = c.to_string();
        std::replace(suffix.begin(), suffix.end(), ',', '-');
        name += "-e" + suffix;
    }
    return dir / (name + ".ckpt");
}

CountResult count_with_checkpoints(int n, const Constraint& c, const std::filesystem::path& dir,
                                   bool resume, SearchOptions opts) {
    c.validate(n);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw CheckpointError(CheckpointError::Kind::Io,
                              "cannot create " + dir.string() + ": " + ec.message());
    }
    const auto file = checkpoint_file(dir, n, c);
    ClassMap start = resume && std::filesystem::exists(file) ? load_checkpoint(file, n, c)
                                                             : ClassMap::root(n);
    auto user_hook = std::move(opts.on_level);
    opts.on_level = [&](const ClassMap& m, const LevelStats& stats) {
        save_checkpoint(m, c, file);
        if (user_hook) user_hook(m, stats);
    };
    return resume_count(std::move(start), c, opts);
}

}  // namespace graceful

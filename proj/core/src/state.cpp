#include "graceful/state.hpp"

#include <sstream>
#include <stdexcept>

namespace graceful {

namespace {

constexpr std::uint8_t kInteriorCode = 0;
constexpr std::uint8_t kUnusedCode = 255;

inline std::uint8_t code_of(std::uint8_t free, std::uint8_t partner) {
    switch (free) {
        case 0: return kInteriorCode;
        case 1: return static_cast<std::uint8_t>(partner + 1);
        default: return kUnusedCode;
    }
}

// Code of label u in the complemented state, read off the original.
inline std::uint8_t mirrored_code(const PartialState& s, int u) {
    const int n = s.size();
    const int w = n - 1 - u;
    const auto f = static_cast<std::uint8_t>(s.free_slots(w));
    if (f != 1) {
        return f == 0 ? kInteriorCode : kUnusedCode;
    }
    return static_cast<std::uint8_t>(n - 1 - s.partner(w) + 1);
}

}  // namespace

PartialState PartialState::root(int n) {
    if (n < 1 || n > kMaxLabels) {
        throw std::invalid_argument("label count must be in 1.." + std::to_string(kMaxLabels) +
                                    ", got " + std::to_string(n));
    }
    PartialState s;
    s.n_ = static_cast<std::uint16_t>(n);
    s.next_ = static_cast<std::uint16_t>(n - 1);
    for (int u = 0; u < n; ++u) {
        s.free_[static_cast<size_t>(u)] = 2;
        s.forb_[static_cast<size_t>(u)] = static_cast<std::uint8_t>(u);
    }
    return s;
}

std::vector<int> PartialState::endpoints() const {
    std::vector<int> out;
    for (int u = 0; u < n_; ++u) {
        if (free_slots(u) == 1) {
            out.push_back(u);
        }
    }
    return out;
}

void PartialState::check_invariants() const {
    auto fail = [](const std::string& what) { throw std::logic_error("invalid state: " + what); };
    if (n_ < 1 || n_ > kMaxLabels) fail("label count out of range");
    if (next_ > n_ - 1) fail("next edge label out of range");
    int used_slots = 0;
    int interior = 0;
    int ends = 0;
    for (int u = 0; u < n_; ++u) {
        const int f = free_slots(u);
        if (f > 2) fail("free count above 2 at label " + std::to_string(u));
        used_slots += 2 - f;
        if (f == 0) ++interior;
        if (f == 2 && partner(u) != u) fail("unused label " + std::to_string(u) + " not self-paired");
        if (f == 1) {
            ++ends;
            const int p = partner(u);
            if (p == u || p >= n_) fail("endpoint " + std::to_string(u) + " has bad partner");
            if (free_slots(p) != 1 || partner(p) != u) {
                fail("partner of " + std::to_string(u) + " is not a mutually paired endpoint");
            }
        }
    }
    if (used_slots != 2 * edges_placed()) fail("slot sum does not match placed edges");
    if (interior > 0 && ends == 0) fail("edges placed without path endpoints");
    if (is_terminal() && n_ >= 2 && ends != 2) fail("terminal state is not a single path");
}

bool operator==(const PartialState& a, const PartialState& b) {
    if (a.n_ != b.n_ || a.next_ != b.next_) return false;
    for (int u = 0; u < a.n_; ++u) {
        const auto f = a.free_[size_t(u)];
        if (f != b.free_[size_t(u)]) return false;
        if (f == 1 && a.forb_[size_t(u)] != b.forb_[size_t(u)]) return false;
    }
    return true;
}

std::vector<LabelPair> candidate_pairs(int n, int k) {
    std::vector<LabelPair> out;
    for (int i = 0; i + k <= n - 1; ++i) {
        out.emplace_back(i, i + k);
    }
    return out;
}

bool can_add_edge(const PartialState& s, int u, int v) {
    return s.free_slots(u) >= 1 && s.free_slots(v) >= 1 && s.partner(u) != v;
}

PartialState add_edge(const PartialState& s, int u, int v) {
    const int n = s.size();
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) {
        throw std::invalid_argument("edge endpoints out of range");
    }
    const int diff = u > v ? u - v : v - u;
    if (s.is_terminal() || diff != s.next_edge_label()) {
        throw std::invalid_argument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                    ") does not carry the next edge label " +
                                    std::to_string(s.next_edge_label()));
    }
    if (!can_add_edge(s, u, v)) {
        throw std::invalid_argument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                    ") would exceed a degree or close a cycle");
    }
    PartialState t = s;
    // (forb[forb[u]], forb[forb[v]]) := (forb[v], forb[u]), right-hand sides
    // read before either write.
    const std::uint8_t fu = s.forb_[size_t(u)];
    const std::uint8_t fv = s.forb_[size_t(v)];
    t.forb_[fu] = fv;
    t.forb_[fv] = fu;
    --t.free_[size_t(u)];
    --t.free_[size_t(v)];
    --t.next_;
    return t;
}

PartialState complement(const PartialState& s) {
    PartialState t = s;
    const int n = s.size();
    for (int u = 0; u < n; ++u) {
        const int w = n - 1 - u;
        const auto f = s.free_[size_t(w)];
        t.free_[size_t(u)] = f;
        t.forb_[size_t(u)] = f == 1 ? static_cast<std::uint8_t>(n - 1 - s.forb_[size_t(w)])
                                    : static_cast<std::uint8_t>(u);
    }
    return t;
}

void encode_codes(const PartialState& s, std::span<std::uint8_t> out) {
    for (int u = 0; u < s.size(); ++u) {
        out[size_t(u)] = code_of(static_cast<std::uint8_t>(s.free_slots(u)),
                                 static_cast<std::uint8_t>(s.partner(u)));
    }
}

Orientation canonical_codes(const PartialState& s, std::span<std::uint8_t> out,
                            bool* self_complementary) {
    const int n = s.size();
    int u = 0;
    std::uint8_t direct = 0;
    std::uint8_t mirrored = 0;
    for (; u < n; ++u) {
        direct = code_of(static_cast<std::uint8_t>(s.free_slots(u)),
                         static_cast<std::uint8_t>(s.partner(u)));
        mirrored = mirrored_code(s, u);
        if (direct != mirrored) break;
        out[size_t(u)] = direct;
    }
    if (self_complementary != nullptr) *self_complementary = u == n;
    if (u == n || direct < mirrored) {
        for (; u < n; ++u) {
            out[size_t(u)] = code_of(static_cast<std::uint8_t>(s.free_slots(u)),
                                     static_cast<std::uint8_t>(s.partner(u)));
        }
        return Orientation::Direct;
    }
    for (; u < n; ++u) {
        out[size_t(u)] = mirrored_code(s, u);
    }
    return Orientation::Reflected;
}

PartialState decode_codes(std::span<const std::uint8_t> codes) {
    const int n = static_cast<int>(codes.size());
    if (n < 1 || n > kMaxLabels) {
        throw std::invalid_argument("key length out of range");
    }
    PartialState s;
    s.n_ = static_cast<std::uint16_t>(n);
    int used_slots = 0;
    for (int u = 0; u < n; ++u) {
        const auto c = codes[size_t(u)];
        if (c == kInteriorCode) {
            s.free_[size_t(u)] = 0;
            s.forb_[size_t(u)] = static_cast<std::uint8_t>(u);
        } else if (c == kUnusedCode) {
            s.free_[size_t(u)] = 2;
            s.forb_[size_t(u)] = static_cast<std::uint8_t>(u);
        } else {
            const int p = c - 1;
            if (p >= n) throw std::invalid_argument("partner label out of range");
            s.free_[size_t(u)] = 1;
            s.forb_[size_t(u)] = static_cast<std::uint8_t>(p);
        }
        used_slots += 2 - s.free_[size_t(u)];
    }
    if (used_slots % 2 != 0 || used_slots / 2 > n - 1) {
        throw std::invalid_argument("slot usage does not correspond to whole edges");
    }
    s.next_ = static_cast<std::uint16_t>(n - 1 - used_slots / 2);
    try {
        s.check_invariants();
    } catch (const std::logic_error& e) {
        throw std::invalid_argument(e.what());
    }
    return s;
}

CanonicalKey CanonicalKey::from_bytes(std::span<const std::uint8_t> bytes) {
    if (bytes.size() % 2 != 0 || bytes.empty()) {
        throw std::invalid_argument("key byte length must be a positive even number");
    }
    const size_t n = bytes.size() / 2;
    std::vector<std::uint8_t> codes(n);
    for (size_t u = 0; u < n; ++u) {
        const auto f = bytes[2 * u];
        const auto p = bytes[2 * u + 1];
        if (f > 2) throw std::invalid_argument("free byte above 2");
        if ((f == 1) == (p == kNoPartner)) {
            throw std::invalid_argument("partner byte inconsistent with free byte at label " +
                                        std::to_string(u));
        }
        codes[u] = code_of(f, p);
    }
    CanonicalKey key(std::move(codes));
    (void)key.decode();
    return key;
}

std::vector<std::uint8_t> CanonicalKey::bytes() const {
    std::vector<std::uint8_t> out;
    out.reserve(2 * codes_.size());
    for (auto c : codes_) {
        if (c == kInteriorCode) {
            out.push_back(0);
            out.push_back(kNoPartner);
        } else if (c == kUnusedCode) {
            out.push_back(2);
            out.push_back(kNoPartner);
        } else {
            out.push_back(1);
            out.push_back(static_cast<std::uint8_t>(c - 1));
        }
    }
    return out;
}

PartialState CanonicalKey::decode() const { return decode_codes(codes_); }

bool CanonicalKey::is_canonical() const {
    const PartialState s = decode();
    std::vector<std::uint8_t> canon(codes_.size());
    canonical_codes(s, canon);
    return canon == codes_;
}

bool CanonicalKey::is_self_complementary() const {
    const PartialState s = decode();
    for (int u = 0; u < s.size(); ++u) {
        if (mirrored_code(s, u) != codes_[size_t(u)]) return false;
    }
    return true;
}

CanonicalKey encode(const PartialState& s) {
    std::vector<std::uint8_t> codes(size_t(s.size()));
    encode_codes(s, codes);
    return CanonicalKey(std::move(codes));
}

CanonicalForm canonicalize(const PartialState& s) {
    std::vector<std::uint8_t> codes(size_t(s.size()));
    const Orientation o = canonical_codes(s, codes);
    return {CanonicalKey(std::move(codes)), o};
}

std::string to_string(const PartialState& s) {
    std::ostringstream os;
    os << "n=" << s.size() << " next=" << s.next_edge_label() << " free=[";
    for (int u = 0; u < s.size(); ++u) os << (u ? "," : "") << s.free_slots(u);
    os << "] ends={";
    bool first = true;
    for (int u : s.endpoints()) {
        if (u < s.partner(u)) {
            os << (first ? "" : ",") << u << "-" << s.partner(u);
            first = false;
        }
    }
    os << "}";
    return os.str();
}

}  // namespace graceful

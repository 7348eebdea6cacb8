#include "graceful/constraint.hpp"

#include <charconv>
#include <stdexcept>

namespace graceful {

namespace {

int parse_label(std::string_view text) {
    int value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end || value < 0) {
        throw std::invalid_argument("malformed endpoint label '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

Constraint Constraint::parse(std::string_view text) {
    if (text == "none" || text.empty()) {
        return none();
    }
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) {
        return one_endpoint(parse_label(text));
    }
    return two_endpoints(parse_label(text.substr(0, comma)), parse_label(text.substr(comma + 1)));
}

void Constraint::validate(int n) const {
    auto check = [n](int label) {
        if (label < 0 || label >= n) {
            throw std::invalid_argument("endpoint label " + std::to_string(label) +
                                        " outside 0.." + std::to_string(n - 1));
        }
    };
    if (kind_ != Kind::None) check(a_);
    if (kind_ == Kind::TwoEndpoints) check(b_);
}

Constraint Constraint::mirrored(int n) const {
    switch (kind_) {
        case Kind::None: return none();
        case Kind::OneEndpoint: return one_endpoint(n - 1 - a_);
        case Kind::TwoEndpoints: return two_endpoints(n - 1 - a_, n - 1 - b_);
    }
    return none();
}

bool Constraint::admits_sequence(std::span<const int> seq) const {
    switch (kind_) {
        case Kind::None: return true;
        case Kind::OneEndpoint: return !seq.empty() && seq.front() == a_;
        case Kind::TwoEndpoints:
            return !seq.empty() && seq.front() == a_ && seq.back() == b_;
    }
    return false;
}

std::string Constraint::to_string() const {
    switch (kind_) {
        case Kind::None: return "none";
        case Kind::OneEndpoint: return std::to_string(a_);
        case Kind::TwoEndpoints: return std::to_string(a_) + "," + std::to_string(b_);
    }
    return "none";
}

}  // namespace graceful

#include "imark/game.hpp"

#include <algorithm>
#include <sstream>

#include "imark/error.hpp"

namespace imark {

namespace {

std::vector<std::uint64_t> normalize(std::vector<std::int64_t> raw) {
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    return {raw.begin(), raw.end()};
}

void join(std::ostringstream& os, const std::vector<std::uint64_t>& xs) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) os << ',';
        os << xs[i];
    }
}

// S == {1, ..., t-1}; returns t, or 0 if S is not of that shape.
std::uint64_t contiguous_prefix_t(const std::vector<std::uint64_t>& sub) {
    for (std::size_t i = 0; i < sub.size(); ++i)
        if (sub[i] != i + 1) return 0;
    return sub.size() + 1;
}

}  // namespace

GameSpec GameSpec::validate(std::vector<std::int64_t> subtract, std::vector<std::int64_t> divide) {
    if (subtract.empty()) throw Error(Errc::EmptySet, "subtraction set is empty");
    if (divide.empty()) throw Error(Errc::EmptySet, "division set is empty");
    for (auto s : subtract)
        if (s < 1) throw Error(Errc::InvalidSubtraction, "subtraction " + std::to_string(s) + " must be >= 1");
    for (auto d : divide)
        if (d < 2) throw Error(Errc::InvalidDivisor, "divisor " + std::to_string(d) + " must be >= 2");
    GameSpec spec;
    spec.sub_ = normalize(std::move(subtract));
    spec.div_ = normalize(std::move(divide));
    return spec;
}

std::string GameSpec::to_string() const {
    std::ostringstream os;
    os << "S={";
    join(os, sub_);
    os << "};D={";
    join(os, div_);
    os << '}';
    return os.str();
}

std::vector<Position> options(const GameSpec& spec, Position n) {
    std::vector<Position> out;
    out.reserve(spec.subtractions().size() + spec.divisors().size());
    for (auto s : spec.subtractions())
        if (s <= n) out.push_back(n - s);
    if (n > 0)
        for (auto d : spec.divisors())
            if (n % d == 0) out.push_back(n / d);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

FamilyTag classify_family(const GameSpec& spec) {
    const auto& sub = spec.subtractions();
    const auto& div = spec.divisors();
    if (div.size() != 1) return family::General{};
    const std::uint64_t d = div.front();

    if (const auto t = contiguous_prefix_t(sub); t >= 2) {
        if (d % t == 1) return family::Theorem1{t, d};
        return family::PeriodicOutcome{t, d};
    }
    if (sub.size() == 1 && sub.front() == 2) {
        if (d % 4 == 3) return family::Theorem2{d};
        if (d % 4 == 1) return family::Theorem3{d};
    }
    return family::General{};
}

bool has_closed_form_sg(const FamilyTag& tag) {
    return std::holds_alternative<family::Theorem1>(tag) || std::holds_alternative<family::Theorem2>(tag) ||
           std::holds_alternative<family::Theorem3>(tag);
}

std::string to_string(const FamilyTag& tag) {
    struct Visitor {
        std::string operator()(const family::Theorem1& f) const {
            return "Theorem1(t=" + std::to_string(f.t) + ",d=" + std::to_string(f.d) + ")";
        }
        std::string operator()(const family::Theorem2& f) const { return "Theorem2(k=" + std::to_string(f.k) + ")"; }
        std::string operator()(const family::Theorem3& f) const { return "Theorem3(k=" + std::to_string(f.k) + ")"; }
        std::string operator()(const family::PeriodicOutcome& f) const {
            return "PeriodicOutcome(t=" + std::to_string(f.t) + ",d=" + std::to_string(f.d) + ")";
        }
        std::string operator()(const family::General&) const { return "General"; }
    };
    return std::visit(Visitor{}, tag);
}

}  // namespace imark

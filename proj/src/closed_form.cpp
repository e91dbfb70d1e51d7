#include "imark/closed_form.hpp"

#include <array>
#include <limits>

#include "imark/error.hpp"

namespace imark {

namespace {

using u128 = unsigned __int128;

constexpr std::array<SgValue, 4> kPattern0011{0, 0, 1, 1};
constexpr std::array<SgValue, 4> kPattern1001{1, 0, 0, 1};

void require_theorem1(std::uint64_t t, std::uint64_t d) {
    if (t < 2 || d < 2 || d % t != 1)
        throw Error(Errc::PreconditionViolated,
                    "need t,d >= 2 and d = 1 (mod t), got t=" + std::to_string(t) + " d=" + std::to_string(d));
}

void require_odd_k(std::uint64_t k, std::uint64_t residue) {
    if (k < 2 || k % 4 != residue)
        throw Error(Errc::PreconditionViolated,
                    "need k = " + std::to_string(residue) + " (mod 4), got k=" + std::to_string(k));
}

void require_in_range(Position n) {
    if (n > kMaxPosition) throw Error(Errc::Overflow, "position " + std::to_string(n) + " exceeds 2^62");
}

// mul * (x + add), or nullopt once it passes kMaxPosition.
std::optional<Position> step(Position x, std::uint64_t add, std::uint64_t mul) {
    const u128 v = (u128{x} + add) * mul;
    if (v > kMaxPosition) return std::nullopt;
    return static_cast<Position>(v);
}

std::optional<Position> capped(u128 v) {
    if (v > kMaxPosition) return std::nullopt;
    return static_cast<Position>(v);
}

// d^e, or nullopt if it exceeds `cap`.
std::optional<u128> checked_pow(std::uint64_t d, unsigned e, u128 cap) {
    u128 p = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (p > cap / d) return std::nullopt;
        p *= d;
    }
    return p;
}

constexpr u128 kInt63Max = std::numeric_limits<std::int64_t>::max();

// Calls visit(th) for each threshold of the family in ascending order until
// it returns false or the next value would pass kMaxPosition.
template <typename Visit>
void walk_theorem1(std::uint64_t t, std::uint64_t d, Visit&& visit) {
    auto a = capped(u128{d});
    auto b = capped(u128{t} * d);
    for (unsigned m = 0; a; ++m) {
        if (!visit(Threshold{Mark::Alpha, m, *a})) return;
        if (!b || !visit(Threshold{Mark::Beta, m, *b})) return;
        a = step(*a, 1, d);
        b = step(*b, 1, d);
    }
}

template <typename Visit>
void walk_theorem2(std::uint64_t k, Visit&& visit) {
    auto b = capped(u128{2} * k);
    if (!b || !visit(Threshold{Mark::B, 0, *b})) return;
    auto c = capped(u128{4} * k);
    for (unsigned m = 0; c; ++m) {
        if (!visit(Threshold{Mark::C, m, *c})) return;
        c = step(*c, 2, k);
    }
}

// a_0 < b < c_0 < a_1 < c_1 < a_2 < ...
template <typename Visit>
void walk_theorem3(std::uint64_t k, Visit&& visit) {
    auto a = capped(u128{k});
    if (!a || !visit(Threshold{Mark::A, 0, *a})) return;
    auto b = capped(u128{2} * k);
    if (!b || !visit(Threshold{Mark::B, 0, *b})) return;
    auto c = capped(u128{4} * k);
    if (!c || !visit(Threshold{Mark::C, 0, *c})) return;
    for (unsigned m = 1;; ++m) {
        a = step(*a, 2, k);
        if (!a || !visit(Threshold{Mark::A, m, *a})) return;
        c = step(*c, 2, k);
        if (!c || !visit(Threshold{Mark::C, m, *c})) return;
    }
}

Location region(Region r, unsigned index, Position start) { return {r, index, start, std::nullopt}; }

// Region following each threshold, per family.
Location after_theorem1(const Threshold& th) {
    return th.mark == Mark::Alpha ? region(Region::B, th.index, th.value + 1)
                                  : region(Region::A, th.index + 1, th.value + 1);
}

Location after_theorem2(const Threshold& th) {
    return region(Region::I, th.mark == Mark::B ? 1 : th.index + 2, th.value + 1);
}

Location after_theorem3(const Threshold& th) {
    switch (th.mark) {
        case Mark::A: return th.index == 0 ? region(Region::Y, 0, th.value + 1) : region(Region::C, th.index, th.value + 1);
        case Mark::B: return region(Region::Z, 0, th.value + 1);
        default: return region(Region::A, th.index + 1, th.value + 1);
    }
}

template <typename Walk, typename After>
Location locate(Position n, Location initial, Walk&& walk, After&& after) {
    require_in_range(n);
    Location loc = initial;
    walk([&](const Threshold& th) {
        if (th.value > n) return false;
        loc = th.value == n ? Location{Region::AtThreshold, th.index, n, th} : after(th);
        return true;
    });
    return loc;
}

}  // namespace

std::string label(const Threshold& th) {
    switch (th.mark) {
        case Mark::Alpha: return "alpha_" + std::to_string(th.index);
        case Mark::Beta: return "beta_" + std::to_string(th.index);
        case Mark::A: return "a_" + std::to_string(th.index);
        case Mark::B: return "b";
        case Mark::C: return "c_" + std::to_string(th.index);
    }
    return "?";
}

std::string to_string(const Location& loc) {
    switch (loc.region) {
        case Region::A: return "A_" + std::to_string(loc.index);
        case Region::B: return "B_" + std::to_string(loc.index);
        case Region::I: return "I_" + std::to_string(loc.index);
        case Region::X: return "X";
        case Region::Y: return "Y";
        case Region::Z: return "Z";
        case Region::C: return "C_" + std::to_string(loc.index);
        case Region::AtThreshold: return label(*loc.threshold);
    }
    return "?";
}

Position alpha(unsigned m, std::uint64_t t, std::uint64_t d) {
    require_theorem1(t, d);
    // (d^{m+2} - d) / (d - 1) <= 2^63 - 1  implies  d^{m+2} <= (2^63 - 1)(d - 1) + d.
    const u128 cap = kInt63Max * (d - 1) + d;
    const auto p = checked_pow(d, m + 2, cap);
    if (!p) throw Error(Errc::Overflow, "alpha_" + std::to_string(m) + " exceeds 63 bits");
    const u128 v = (*p - d) / (d - 1);
    if (v > kInt63Max) throw Error(Errc::Overflow, "alpha_" + std::to_string(m) + " exceeds 63 bits");
    return static_cast<Position>(v);
}

Position beta(unsigned m, std::uint64_t t, std::uint64_t d) {
    require_theorem1(t, d);
    const auto p = checked_pow(d, m + 1, kInt63Max);
    if (!p) throw Error(Errc::Overflow, "beta_" + std::to_string(m) + " exceeds 63 bits");
    const u128 v = u128{t} * *p + (*p - d) / (d - 1);
    if (v > kInt63Max) throw Error(Errc::Overflow, "beta_" + std::to_string(m) + " exceeds 63 bits");
    return static_cast<Position>(v);
}

Location locate_theorem1(Position n, std::uint64_t t, std::uint64_t d) {
    require_theorem1(t, d);
    return locate(n, region(Region::A, 0, 0), [&](auto&& v) { walk_theorem1(t, d, v); }, after_theorem1);
}

Location locate_theorem2(Position n, std::uint64_t k) {
    require_odd_k(k, 3);
    return locate(n, region(Region::I, 0, 0), [&](auto&& v) { walk_theorem2(k, v); }, after_theorem2);
}

Location locate_theorem3(Position n, std::uint64_t k) {
    require_odd_k(k, 1);
    return locate(n, region(Region::X, 0, 0), [&](auto&& v) { walk_theorem3(k, v); }, after_theorem3);
}

SgValue sg_theorem1(Position n, std::uint64_t t, std::uint64_t d) {
    const auto loc = locate_theorem1(n, t, d);
    const auto offset = loc.offset(n);
    switch (loc.region) {
        case Region::AtThreshold:
            // With t = 2 the division option of alpha_m (m >= 1) opens B_{m-1}
            // at SG 0 rather than 1, so alpha_m continues the 0,1 alternation.
            if (t == 2 && loc.threshold->mark == Mark::Alpha && loc.threshold->index > 0) return 1;
            return static_cast<SgValue>(t);
        case Region::A: return static_cast<SgValue>(offset % t);
        default: {
            // B_m: (1, 2, ..., t-2, 0, t-1) repeated.
            const auto r = offset % t;
            if (r + 2 < t) return static_cast<SgValue>(r + 1);
            if (r + 2 == t) return 0;
            return static_cast<SgValue>(t - 1);
        }
    }
}

SgValue sg_theorem2(Position n, std::uint64_t k) {
    const auto loc = locate_theorem2(n, k);
    if (loc.region == Region::AtThreshold) return 2;
    const auto& pattern = loc.index % 2 == 0 ? kPattern0011 : kPattern1001;
    return pattern[loc.offset(n) % 4];
}

SgValue sg_theorem3(Position n, std::uint64_t k) {
    const auto loc = locate_theorem3(n, k);
    if (loc.region == Region::AtThreshold) return 2;
    const bool plain = loc.region == Region::X || loc.region == Region::Z;
    const auto& pattern = plain ? kPattern0011 : kPattern1001;
    return pattern[loc.offset(n) % 4];
}

Outcome outcome_periodic(Position n, std::uint64_t t, std::uint64_t d) {
    if (t < 2 || d < 2 || d % t == 1)
        throw Error(Errc::PreconditionViolated,
                    "need t,d >= 2 and d != 1 (mod t), got t=" + std::to_string(t) + " d=" + std::to_string(d));
    const auto q = n / t;
    const auto r = n % t;
    if (r == 0 && q < d) return Outcome::P;
    if (r == 1 && q >= d) return Outcome::P;
    return Outcome::N;
}

std::optional<SgValue> closed_form_sg(const FamilyTag& tag, Position n) {
    if (const auto* f = std::get_if<family::Theorem1>(&tag)) return sg_theorem1(n, f->t, f->d);
    if (const auto* f = std::get_if<family::Theorem2>(&tag)) return sg_theorem2(n, f->k);
    if (const auto* f = std::get_if<family::Theorem3>(&tag)) return sg_theorem3(n, f->k);
    return std::nullopt;
}

std::optional<Outcome> closed_form_outcome(const FamilyTag& tag, Position n) {
    if (const auto* f = std::get_if<family::PeriodicOutcome>(&tag)) return outcome_periodic(n, f->t, f->d);
    if (const auto v = closed_form_sg(tag, n)) return *v == 0 ? Outcome::P : Outcome::N;
    return std::nullopt;
}

std::vector<Threshold> thresholds(const FamilyTag& tag, Position limit) {
    std::vector<Threshold> out;
    auto collect = [&](const Threshold& th) {
        if (th.value > limit) return false;
        out.push_back(th);
        return true;
    };
    if (const auto* f = std::get_if<family::Theorem1>(&tag)) walk_theorem1(f->t, f->d, collect);
    if (const auto* f = std::get_if<family::Theorem2>(&tag)) walk_theorem2(f->k, collect);
    if (const auto* f = std::get_if<family::Theorem3>(&tag)) walk_theorem3(f->k, collect);
    return out;
}

}  // namespace imark

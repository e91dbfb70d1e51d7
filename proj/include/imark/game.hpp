#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

namespace imark {

/// Pile size in tokens.
using Position = std::uint64_t;

/// Largest pile size any operation accepts (2^62). Keeps every intermediate
/// threshold representable in a signed 64-bit integer.
inline constexpr Position kMaxPosition = Position{1} << 62;

/// Rule set of i-Mark(S, D): subtract any s in S, or divide by any d in D
/// that divides the pile exactly. Both sets are sorted and deduplicated.
class GameSpec {
public:
    /// Throws Error{EmptySet | InvalidSubtraction | InvalidDivisor}.
    static GameSpec validate(std::vector<std::int64_t> subtract, std::vector<std::int64_t> divide);
    static GameSpec validate(std::initializer_list<std::int64_t> subtract,
                             std::initializer_list<std::int64_t> divide) {
        return validate(std::vector<std::int64_t>(subtract), std::vector<std::int64_t>(divide));
    }

    const std::vector<std::uint64_t>& subtractions() const noexcept { return sub_; }
    const std::vector<std::uint64_t>& divisors() const noexcept { return div_; }

    /// "S={1,2};D={3}"
    std::string to_string() const;

    friend bool operator==(const GameSpec&, const GameSpec&) = default;

private:
    GameSpec() = default;
    std::vector<std::uint64_t> sub_;
    std::vector<std::uint64_t> div_;
};

/// Legal options of pile n, ascending and deduplicated. Division from 0 is
/// not a move; subtraction never goes below 0.
std::vector<Position> options(const GameSpec& spec, Position n);

namespace family {
struct Theorem1 {
    std::uint64_t t, d;
    friend bool operator==(const Theorem1&, const Theorem1&) = default;
};
struct Theorem2 {
    std::uint64_t k;
    friend bool operator==(const Theorem2&, const Theorem2&) = default;
};
struct Theorem3 {
    std::uint64_t k;
    friend bool operator==(const Theorem3&, const Theorem3&) = default;
};
struct PeriodicOutcome {
    std::uint64_t t, d;
    friend bool operator==(const PeriodicOutcome&, const PeriodicOutcome&) = default;
};
struct General {
    friend bool operator==(const General&, const General&) = default;
};
}  // namespace family

/// Solved family a spec belongs to.
///  - Theorem1(t,d):        S = [1, t-1], D = {d}, d = 1 (mod t)
///  - Theorem2(k):          S = {2}, D = {k}, k = 3 (mod 4)
///  - Theorem3(k):          S = {2}, D = {k}, k = 1 (mod 4), k > 1
///  - PeriodicOutcome(t,d): S = [1, t-1], D = {d}, d != 1 (mod t)
using FamilyTag = std::variant<family::Theorem1, family::Theorem2, family::Theorem3,
                               family::PeriodicOutcome, family::General>;

FamilyTag classify_family(const GameSpec& spec);

/// True for the families with a closed-form SG evaluator (Theorem1..3).
bool has_closed_form_sg(const FamilyTag& tag);

std::string to_string(const FamilyTag& tag);

}  // namespace imark

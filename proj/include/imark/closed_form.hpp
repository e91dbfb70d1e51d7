#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "imark/game.hpp"
#include "imark/sg_table.hpp"

namespace imark {

// Threshold positions: alpha_m, beta_m for the [1,t-1]/{d} family with
// d = 1 (mod t); b, c_m (and a_m when k = 1 (mod 4)) for {2}/{k}, k odd.
// Every threshold has SG value equal to the family's top value (t or 2).
enum class Mark { Alpha, Beta, A, B, C };

struct Threshold {
    Mark mark;
    unsigned index;  // m; always 0 for Mark::B
    Position value;

    friend bool operator==(const Threshold&, const Threshold&) = default;
};

/// "alpha_0", "beta_3", "a_1", "b", "c_2".
std::string label(const Threshold& th);

/// alpha_m = d + d^2 + ... + d^{m+1}. Throws PreconditionViolated unless
/// t, d >= 2 and d = 1 (mod t); Overflow when the result exceeds 2^63 - 1.
Position alpha(unsigned m, std::uint64_t t, std::uint64_t d);

/// beta_m = t*d^{m+1} + d + ... + d^m. Same errors as alpha().
Position beta(unsigned m, std::uint64_t t, std::uint64_t d);

/// Maximal runs of non-threshold positions between consecutive thresholds.
///   [1,t-1]/{d}: A_m before alpha_m, B_m between alpha_m and beta_m.
///   {2}/{k}, k = 3 (mod 4): I_0 before b, I_1 after b, I_{m+2} after c_m.
///   {2}/{k}, k = 1 (mod 4): X, Y, Z around a_0 and b, then A_m after
///   c_{m-1}, C_m after a_m.
enum class Region { A, B, I, X, Y, Z, C, AtThreshold };

struct Location {
    Region region;
    unsigned index;  // m for A, B, I, C; unused otherwise
    Position start;  // first position of the region, or the threshold itself
    std::optional<Threshold> threshold;

    Position offset(Position n) const noexcept { return n - start; }
};

/// "B_3" or "beta_3".
std::string to_string(const Location& loc);

Location locate_theorem1(Position n, std::uint64_t t, std::uint64_t d);
Location locate_theorem2(Position n, std::uint64_t k);
Location locate_theorem3(Position n, std::uint64_t k);

/// O(log_d n) evaluators. Each throws PreconditionViolated when its family
/// conditions fail and Overflow when n > kMaxPosition.
///
/// sg_theorem1 returns t at every alpha_m and beta_m except alpha_m with
/// m >= 1 when t = 2, where the value is 1.
SgValue sg_theorem1(Position n, std::uint64_t t, std::uint64_t d);
SgValue sg_theorem2(Position n, std::uint64_t k);
SgValue sg_theorem3(Position n, std::uint64_t k);

/// P iff n = qt with 0 <= q < d, or n = qt + 1 with q >= d.
/// Requires t, d >= 2 and d != 1 (mod t).
Outcome outcome_periodic(Position n, std::uint64_t t, std::uint64_t d);

/// Closed-form SG value when the family has one.
std::optional<SgValue> closed_form_sg(const FamilyTag& tag, Position n);

/// Closed-form outcome for any family with a formula (Theorem1..3 via the SG
/// value, PeriodicOutcome directly).
std::optional<Outcome> closed_form_outcome(const FamilyTag& tag, Position n);

/// All thresholds <= limit, ascending. Empty for families without thresholds.
/// Generation stops at kMaxPosition.
std::vector<Threshold> thresholds(const FamilyTag& tag, Position limit);

}  // namespace imark

#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "imark/evaluator.hpp"
#include "imark/sg_table.hpp"

namespace imark {

/// Occurrence statistics for one SG value. A gap is the difference between
/// consecutive occurrence positions, so max_gap <= c means every window
/// [n+1, n+c] after the first occurrence contains the value.
struct GapEntry {
    SgValue value = 0;
    std::optional<Position> first;
    std::uint64_t count = 0;
    Position max_gap = 0;      // 0 when the value occurs at most once
    Position max_gap_end = 0;  // later endpoint of the first maximal gap

    bool occurs() const noexcept { return count > 0; }
};

struct GapReport {
    GameSpec spec;
    Position limit;
    std::vector<GapEntry> per_value;  // values that occur, ascending
};

/// Single streaming pass for one value. A value that never occurs yields an
/// entry with count == 0 rather than an error.
GapEntry gap_scan(const SgTable& table, SgValue value);

/// Single streaming pass collecting every value 0..sg_bound.
GapReport gap_report(const SgTable& table);

nlohmann::ordered_json to_json(const GapReport& report);

/// i-Mark({1},{2,3}): the rule set the window theorems are stated for.
GameSpec mark_1_23();

/// "Some position in [n - window, n - 1] has SG value `value`" for all
/// applicable n in [min_n, limit].
struct WindowCheck {
    SgValue value;
    Position window;
    Position min_n;
    std::optional<Position> counterexample;
    Position tightest = 0;  // smallest window that would have passed

    bool passed() const noexcept { return !counterexample.has_value(); }
};

struct GapTheoremResult {
    std::array<WindowCheck, 3> checks;  // values 0, 1, 2 with windows 4, 10, 49

    bool passed() const noexcept {
        return checks[0].passed() && checks[1].passed() && checks[2].passed();
    }
};

/// Throws SpecMismatch unless the table is for i-Mark({1},{2,3}).
GapTheoremResult verify_gap_theorems(const SgTable& table);

struct LemmaResult {
    std::optional<Position> counterexample;
    std::uint64_t applicable = 0;  // m = 5 (mod 6), m >= 7, no SG 2 in [m-7, m]
    std::uint64_t vacuous = 0;     // m = 5 (mod 6), m >= 7, some SG 2 in the window

    bool passed() const noexcept { return !counterexample.has_value(); }
};

/// For m = 5 (mod 6), m >= 7: if no position in [m-7, m] has SG value 2 then
/// SG(m) = 0. Throws SpecMismatch unless the table is for i-Mark({1},{2,3}).
LemmaResult verify_lemma_5mod6(const SgTable& table);

struct AllowedPosition {
    std::string label;  // "sd", "a_i", "b^j_i"
    Position value;
};

/// Positions i-Mark({s},{d}) may have SG value 2 at, conjecturally:
///   sd;  a_0 = 2ds, a_{i+1} = d(a_i + s);
///   b^j_0 = jd, b^j_{i+1} = d(b^j_i + s)  for 1 <= j <= s-1.
/// Sorted by value, limited to `limit`.
std::vector<AllowedPosition> conjecture_allowed(std::uint64_t s, std::uint64_t d, Position limit);

struct RunDiagnostic {
    Position longest_run_0 = 0;
    Position longest_run_1 = 0;
    std::uint64_t interior_runs = 0;  // maximal 0/1 runs not touching an SG-2 position or the scan edge
    std::uint64_t interior_runs_multiple_of_s = 0;
};

struct ConjectureReport {
    std::uint64_t s, d;
    Position limit;
    std::vector<AllowedPosition> allowed;
    std::vector<Position> sg2_positions;
    std::vector<Position> violations;
    RunDiagnostic runs;  // informational only

    bool holds() const noexcept { return violations.empty(); }
};

/// Throws PreconditionViolated unless S = {s}, D = {d} with gcd(s, d) = 1.
ConjectureReport check_conjecture(const SgTable& table);

nlohmann::ordered_json to_json(const ConjectureReport& report);

/// First position where the table disagrees with the family's closed form
/// (SG values, or outcomes for the periodic-outcome family). Throws
/// SpecMismatch when the spec has no closed form.
std::optional<Position> equivalence_check(const SgTable& table);

std::optional<Position> equivalence_check(const GameSpec& spec, Position limit, const BuildOptions& opts = {});

enum class Format { Csv, JsonLines };

/// Writes (n, SG(n)) rows for from..to. CSV starts with the header "n,sg";
/// JSON-lines emits one {"n":..,"sg":..} object per line. Throws OutOfRange
/// when to > table.limit() on a nonempty range.
void export_sequence(const SgTable& table, Position from, Position to, Format format, std::ostream& out);

/// Same rows from any value source, e.g. a closed form far beyond any table.
void export_sequence(const SgEvaluator& values, Position from, Position to, Format format, std::ostream& out);

}  // namespace imark

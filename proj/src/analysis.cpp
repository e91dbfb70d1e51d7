#include "imark/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "imark/closed_form.hpp"
#include "imark/error.hpp"

namespace imark {

namespace {

void require_mark_1_23(const SgTable& table) {
    if (!(table.spec() == mark_1_23()))
        throw Error(Errc::SpecMismatch, "window theorems apply to S={1};D={2,3}, got " + table.spec().to_string());
}

struct GapTracker {
    GapEntry entry;
    Position last = 0;

    void see(Position n) {
        if (entry.count == 0) {
            entry.first = n;
        } else if (n - last > entry.max_gap) {
            entry.max_gap = n - last;
            entry.max_gap_end = n;
        }
        last = n;
        ++entry.count;
    }
};

// Appends d(x + s) iterates of `x0` that stay <= limit.
void push_sequence(std::vector<AllowedPosition>& out, const std::string& name, Position x0, std::uint64_t s,
                   std::uint64_t d, Position limit) {
    unsigned __int128 x = x0;
    for (unsigned i = 0; x <= limit; ++i) {
        out.push_back({name + "_" + std::to_string(i), static_cast<Position>(x)});
        x = (x + s) * d;
    }
}

}  // namespace

GapEntry gap_scan(const SgTable& table, SgValue value) {
    GapTracker tracker;
    tracker.entry.value = value;
    for (Position n = 0; n <= table.limit(); ++n)
        if (table[n] == value) tracker.see(n);
    return tracker.entry;
}

GapReport gap_report(const SgTable& table) {
    const auto values = sg_bound(table.spec()) + 1;
    std::vector<GapTracker> trackers(values);
    for (SgValue v = 0; v < values; ++v) trackers[v].entry.value = v;
    for (Position n = 0; n <= table.limit(); ++n) trackers[table[n]].see(n);

    GapReport report{table.spec(), table.limit(), {}};
    for (const auto& t : trackers)
        if (t.entry.occurs()) report.per_value.push_back(t.entry);
    return report;
}

nlohmann::ordered_json to_json(const GapReport& report) {
    nlohmann::ordered_json j;
    j["spec"]["S"] = report.spec.subtractions();
    j["spec"]["D"] = report.spec.divisors();
    j["N"] = report.limit;
    j["per_value"] = nlohmann::ordered_json::array();
    for (const auto& e : report.per_value) {
        nlohmann::ordered_json row;
        row["value"] = e.value;
        row["first"] = *e.first;
        row["count"] = e.count;
        row["max_gap"] = e.max_gap;
        row["max_gap_end"] = e.max_gap_end;
        j["per_value"].push_back(std::move(row));
    }
    return j;
}

GameSpec mark_1_23() { return GameSpec::validate({1}, {2, 3}); }

GapTheoremResult verify_gap_theorems(const SgTable& table) {
    require_mark_1_23(table);
    GapTheoremResult result{{WindowCheck{0, 4, 1, std::nullopt}, WindowCheck{1, 10, 2, std::nullopt},
                             WindowCheck{2, 49, 4, std::nullopt}}};
    std::array<std::optional<Position>, 3> last{};
    for (Position n = 0; n <= table.limit(); ++n) {
        for (std::size_t v = 0; v < 3; ++v) {
            auto& check = result.checks[v];
            if (n < check.min_n) continue;
            // Positions before the first occurrence are unbounded distance away.
            const Position distance = last[v] ? n - *last[v] : n + 1;
            check.tightest = std::max(check.tightest, distance);
            if (distance > check.window && !check.counterexample) check.counterexample = n;
        }
        const auto value = table[n];
        if (value < 3) last[value] = n;
    }
    return result;
}

LemmaResult verify_lemma_5mod6(const SgTable& table) {
    require_mark_1_23(table);
    LemmaResult result;
    for (Position m = 11; m <= table.limit(); m += 6) {
        bool two_in_window = false;
        for (Position i = 0; i <= 7 && !two_in_window; ++i) two_in_window = table[m - i] == 2;
        if (two_in_window) {
            ++result.vacuous;
            continue;
        }
        ++result.applicable;
        if (table[m] != 0 && !result.counterexample) result.counterexample = m;
    }
    return result;
}

std::vector<AllowedPosition> conjecture_allowed(std::uint64_t s, std::uint64_t d, Position limit) {
    std::vector<AllowedPosition> out;
    const unsigned __int128 sd = static_cast<unsigned __int128>(s) * d;
    if (sd <= limit) out.push_back({"sd", static_cast<Position>(sd)});
    if (2 * sd <= limit) push_sequence(out, "a", static_cast<Position>(2 * sd), s, d, limit);
    for (std::uint64_t j = 1; j < s; ++j) {
        const unsigned __int128 b0 = static_cast<unsigned __int128>(j) * d;
        if (b0 <= limit) push_sequence(out, "b^" + std::to_string(j), static_cast<Position>(b0), s, d, limit);
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.value < y.value; });
    return out;
}

ConjectureReport check_conjecture(const SgTable& table) {
    const auto& spec = table.spec();
    if (spec.subtractions().size() != 1 || spec.divisors().size() != 1)
        throw Error(Errc::PreconditionViolated, "conjecture needs S={s}, D={d}, got " + spec.to_string());
    const auto s = spec.subtractions().front();
    const auto d = spec.divisors().front();
    if (std::gcd(s, d) != 1)
        throw Error(Errc::PreconditionViolated, "conjecture needs gcd(s,d)=1, got s=" + std::to_string(s) +
                                                    " d=" + std::to_string(d));

    ConjectureReport report{s, d, table.limit(), conjecture_allowed(s, d, table.limit()), {}, {}, {}};
    std::vector<Position> allowed;
    for (const auto& a : report.allowed) allowed.push_back(a.value);

    // Runs of equal 0/1 values; a run is interior when bounded on both sides
    // by the other of 0/1.
    SgValue run_value = 2;
    Position run_length = 0;
    bool run_open_left = true;  // preceded by an SG-2 position or the scan start
    auto close_run = [&](bool bounded_right) {
        if (run_length == 0) return;
        auto& longest = run_value == 0 ? report.runs.longest_run_0 : report.runs.longest_run_1;
        longest = std::max(longest, run_length);
        if (!run_open_left && bounded_right) {
            ++report.runs.interior_runs;
            if (run_length % s == 0) ++report.runs.interior_runs_multiple_of_s;
        }
    };

    for (Position n = 0; n <= table.limit(); ++n) {
        const auto v = table[n];
        if (v == 2) {
            report.sg2_positions.push_back(n);
            if (!std::binary_search(allowed.begin(), allowed.end(), n)) report.violations.push_back(n);
        }
        if (v > 1) {
            close_run(false);
            run_length = 0;
            run_open_left = true;
            continue;
        }
        if (run_length > 0 && v == run_value) {
            ++run_length;
            continue;
        }
        const bool after_run = run_length > 0;
        close_run(true);
        run_open_left = !after_run;
        run_value = v;
        run_length = 1;
    }
    close_run(false);
    return report;
}

nlohmann::ordered_json to_json(const ConjectureReport& report) {
    nlohmann::ordered_json j;
    j["s"] = report.s;
    j["d"] = report.d;
    j["N"] = report.limit;
    j["holds"] = report.holds();
    j["allowed"] = nlohmann::ordered_json::array();
    for (const auto& a : report.allowed) j["allowed"].push_back({{"label", a.label}, {"value", a.value}});
    j["sg2_positions"] = report.sg2_positions;
    j["violations"] = report.violations;
    j["runs"]["longest_run_0"] = report.runs.longest_run_0;
    j["runs"]["longest_run_1"] = report.runs.longest_run_1;
    j["runs"]["interior_runs"] = report.runs.interior_runs;
    j["runs"]["interior_runs_multiple_of_s"] = report.runs.interior_runs_multiple_of_s;
    return j;
}

std::optional<Position> equivalence_check(const SgTable& table) {
    const auto tag = classify_family(table.spec());
    if (has_closed_form_sg(tag)) {
        for (Position n = 0; n <= table.limit(); ++n)
            if (*closed_form_sg(tag, n) != table[n]) return n;
        return std::nullopt;
    }
    if (std::holds_alternative<family::PeriodicOutcome>(tag)) {
        for (Position n = 0; n <= table.limit(); ++n) {
            const auto oracle = table[n] == 0 ? Outcome::P : Outcome::N;
            if (*closed_form_outcome(tag, n) != oracle) return n;
        }
        return std::nullopt;
    }
    throw Error(Errc::SpecMismatch, table.spec().to_string() + " has no closed form");
}

std::optional<Position> equivalence_check(const GameSpec& spec, Position limit, const BuildOptions& opts) {
    if (std::holds_alternative<family::General>(classify_family(spec)))
        throw Error(Errc::SpecMismatch, spec.to_string() + " has no closed form");
    return equivalence_check(SgTable::build(spec, limit, opts));
}

namespace {

template <typename Lookup>
void write_rows(Position from, Position to, Format format, std::ostream& out, Lookup&& lookup) {
    if (format == Format::Csv) out << "n,sg\n";
    if (from > to) return;
    for (Position n = from;; ++n) {
        const auto v = lookup(n);
        if (format == Format::Csv)
            out << n << ',' << v << '\n';
        else
            out << "{\"n\":" << n << ",\"sg\":" << v << "}\n";
        if (n == to) break;
    }
}

}  // namespace

void export_sequence(const SgTable& table, Position from, Position to, Format format, std::ostream& out) {
    if (from <= to && to > table.limit())
        throw Error(Errc::OutOfRange, "export to " + std::to_string(to) + " beyond table limit " +
                                          std::to_string(table.limit()));
    write_rows(from, to, format, out, [&](Position n) { return table[n]; });
}

void export_sequence(const SgEvaluator& values, Position from, Position to, Format format, std::ostream& out) {
    write_rows(from, to, format, out, [&](Position n) { return values.sg(n); });
}

}  // namespace imark

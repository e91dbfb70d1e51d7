#include "cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "imark/analysis.hpp"
#include "imark/closed_form.hpp"
#include "imark/error.hpp"
#include "imark/sums.hpp"
#include "imark/table_io.hpp"

namespace imark::cli {

namespace {

struct Config {
    std::vector<std::int64_t> sub;
    std::vector<std::int64_t> div;
    Position n = 0;
    Position from = 0;
    Position to = 0;
    std::string format = "csv";
    std::string cache;
    std::string out_path;
    std::uint64_t mem_limit = BuildOptions{}.mem_limit_bytes;
    bool force_oracle = false;
    std::vector<std::string> games;
    std::optional<SgValue> value;
    bool equivalence = false;
    bool gap_theorems = false;
    bool lemma = false;
    bool all = false;
    unsigned jobs = 1;
    bool human_first = false;
};

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::ResourceLimit:
        case Errc::Overflow:
        case Errc::CorruptFile:
        case Errc::Io: return kResource;
        default: return kUsage;
    }
}

void add_spec_options(CLI::App* cmd, Config& cfg, bool required = true) {
    auto* s = cmd->add_option("--sub", cfg.sub, "subtraction set, comma separated")->delimiter(',');
    auto* d = cmd->add_option("--div", cfg.div, "division set, comma separated")->delimiter(',');
    if (required) {
        s->required();
        d->required();
    }
}

void add_table_options(CLI::App* cmd, Config& cfg) {
    cmd->add_option("--cache", cfg.cache, "table cache file (default: $IMARK_CACHE_DIR/<spec>.imrk)");
    cmd->add_option("--mem-limit", cfg.mem_limit, "table memory budget in bytes");
}

GameSpec spec_of(const Config& cfg) { return GameSpec::validate(cfg.sub, cfg.div); }

std::string cache_file_name(const GameSpec& spec) {
    std::string name = "imark_S";
    for (std::size_t i = 0; i < spec.subtractions().size(); ++i)
        name += (i ? "-" : "") + std::to_string(spec.subtractions()[i]);
    name += "_D";
    for (std::size_t i = 0; i < spec.divisors().size(); ++i)
        name += (i ? "-" : "") + std::to_string(spec.divisors()[i]);
    return name + ".imrk";
}

std::optional<std::filesystem::path> cache_path(const Config& cfg, const GameSpec& spec) {
    if (!cfg.cache.empty()) return std::filesystem::path(cfg.cache);
    if (const char* dir = std::getenv("IMARK_CACHE_DIR"); dir && *dir)
        return std::filesystem::path(dir) / cache_file_name(spec);
    return std::nullopt;
}

SgTable acquire_table(const Config& cfg, const GameSpec& spec, Position limit, std::ostream& err) {
    const BuildOptions opts{cfg.mem_limit};
    const auto path = cache_path(cfg, spec);
    if (!path) {
        err << "building table for " << spec.to_string() << " to " << limit << '\n';
        return SgTable::build(spec, limit, opts);
    }
    auto cached = load_or_build(*path, spec, limit, opts);
    static constexpr const char* kActions[] = {"reused", "extended", "built"};
    err << "cache " << path->string() << ": " << kActions[static_cast<int>(cached.action)] << '\n';
    return std::move(cached.table);
}

Format format_of(const Config& cfg) { return cfg.format == "json" ? Format::JsonLines : Format::Csv; }

// "1;2,3;5" -> Component{S={1}, D={2,3}, pile 5}
Component parse_game(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ';');) parts.push_back(part);
    if (parts.size() != 3) throw Error(Errc::PreconditionViolated, "--game expects \"S;D;n\", got \"" + text + "\"");
    auto numbers = [&](const std::string& list) {
        std::vector<std::int64_t> out;
        std::stringstream ls(list);
        for (std::string item; std::getline(ls, item, ',');) {
            std::size_t used = 0;
            long long v = 0;
            try {
                v = std::stoll(item, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != item.size())
                throw Error(Errc::PreconditionViolated, "bad number \"" + item + "\" in --game \"" + text + "\"");
            out.push_back(v);
        }
        return out;
    };
    const auto pile = numbers(parts[2]);
    if (pile.size() != 1 || pile[0] < 0)
        throw Error(Errc::PreconditionViolated, "bad pile in --game \"" + text + "\"");
    return {GameSpec::validate(numbers(parts[0]), numbers(parts[1])), static_cast<Position>(pile[0])};
}

SumPosition sum_of(const Config& cfg) {
    SumPosition sum;
    for (const auto& g : cfg.games) sum.push_back(parse_game(g));
    if (sum.empty()) sum.push_back({spec_of(cfg), cfg.n});
    return sum;
}

std::string describe(const SumPosition& sum, const Move& move, Position from) {
    std::ostringstream os;
    if (sum.size() > 1) os << "component " << move.component << ": ";
    os << from << " -> " << move.target;
    return os.str();
}

int cmd_sg(const Config& cfg, std::ostream& out, std::ostream& err) {
    const auto spec = spec_of(cfg);
    const auto tag = classify_family(spec);
    if (has_closed_form_sg(tag) && !cfg.force_oracle) {
        out << *closed_form_sg(tag, cfg.n) << '\n';
        err << "source: closed-form " << to_string(tag) << '\n';
        return kOk;
    }
    const auto table = acquire_table(cfg, spec, cfg.n, err);
    out << table.at(cfg.n) << '\n';
    err << "source: oracle\n";
    return kOk;
}

int cmd_seq(const Config& cfg, std::ostream& out, std::ostream& err) {
    const auto spec = spec_of(cfg);
    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.out_path.empty()) {
        file.open(cfg.out_path, std::ios::binary | std::ios::trunc);
        if (!file) throw Error(Errc::Io, "cannot open " + cfg.out_path);
        sink = &file;
    }
    if (has_closed_form_sg(classify_family(spec)) && !cfg.force_oracle) {
        if (cfg.from <= cfg.to && cfg.to > kMaxPosition)
            throw Error(Errc::Overflow, "position " + std::to_string(cfg.to) + " exceeds 2^62");
        export_sequence(SgEvaluator::make(spec, 0), cfg.from, cfg.to, format_of(cfg), *sink);
        return kOk;
    }
    const auto table = acquire_table(cfg, spec, cfg.from <= cfg.to ? cfg.to : 0, err);
    export_sequence(table, cfg.from, cfg.to, format_of(cfg), *sink);
    return kOk;
}

int cmd_gaps(const Config& cfg, std::ostream& out, std::ostream& err) {
    const auto spec = spec_of(cfg);
    const auto table = acquire_table(cfg, spec, cfg.n, err);
    if (cfg.value) {
        const auto entry = gap_scan(table, *cfg.value);
        if (!entry.occurs()) {
            err << "SG value " << *cfg.value << " never occurs in 0.." << cfg.n << '\n';
            return kOk;
        }
        GapReport report{spec, table.limit(), {entry}};
        out << to_json(report).dump() << '\n';
        return kOk;
    }
    out << to_json(gap_report(table)).dump() << '\n';
    return kOk;
}

struct Job {
    std::string name;
    std::function<bool(std::ostream&)> run;
};

std::vector<Job> verification_jobs(const Config& cfg) {
    std::vector<Job> jobs;
    const Position limit = cfg.n;
    const BuildOptions opts{cfg.mem_limit};

    auto equivalence = [limit, opts](GameSpec spec) {
        return Job{"equivalence " + spec.to_string(), [spec, limit, opts](std::ostream& log) {
                       const auto mismatch = equivalence_check(spec, limit, opts);
                       log << (mismatch ? "FAIL" : "PASS") << " equivalence " << spec.to_string() << " "
                           << to_string(classify_family(spec)) << " N=" << limit;
                       if (mismatch) log << " first mismatch at n=" << *mismatch;
                       log << '\n';
                       return !mismatch;
                   }};
    };
    auto windows = [limit, opts](bool gaps, bool lemma) {
        return Job{"windows", [limit, opts, gaps, lemma](std::ostream& log) {
                       const auto table = SgTable::build(mark_1_23(), limit, opts);
                       bool ok = true;
                       if (gaps) {
                           const auto result = verify_gap_theorems(table);
                           for (const auto& c : result.checks) {
                               log << (c.passed() ? "PASS" : "FAIL") << " window value=" << c.value
                                   << " width=" << c.window << " N=" << limit << " tightest=" << c.tightest;
                               if (c.counterexample) log << " counterexample n=" << *c.counterexample;
                               log << '\n';
                           }
                           ok = ok && result.passed();
                       }
                       if (lemma) {
                           const auto result = verify_lemma_5mod6(table);
                           log << (result.passed() ? "PASS" : "FAIL") << " lemma-5mod6 N=" << limit
                               << " applicable=" << result.applicable << " vacuous=" << result.vacuous;
                           if (result.counterexample) log << " counterexample m=" << *result.counterexample;
                           log << '\n';
                           ok = ok && result.passed();
                       }
                       return ok;
                   }};
    };

    if (cfg.all) {
        auto prefix = [](std::uint64_t t) {
            std::vector<std::int64_t> s;
            for (std::uint64_t i = 1; i < t; ++i) s.push_back(static_cast<std::int64_t>(i));
            return s;
        };
        for (auto [t, d] : {std::pair{2, 3}, {3, 4}, {3, 7}, {4, 5}, {5, 6}, {5, 11}})
            jobs.push_back(equivalence(GameSpec::validate(prefix(t), {d})));
        for (int k : {3, 7, 11, 15, 5, 9, 13, 17}) jobs.push_back(equivalence(GameSpec::validate({2}, {k})));
        for (auto [t, d] : {std::pair{2, 2}, {3, 2}, {3, 3}, {4, 6}, {5, 7}})
            jobs.push_back(equivalence(GameSpec::validate(prefix(t), {d})));
        jobs.push_back(windows(true, true));
        return jobs;
    }

    const auto spec = spec_of(cfg);
    const bool explicit_choice = cfg.equivalence || cfg.gap_theorems || cfg.lemma;
    const bool is_123 = spec == mark_1_23();
    if (cfg.equivalence || (!explicit_choice && !is_123)) jobs.push_back(equivalence(spec));
    if (cfg.gap_theorems || cfg.lemma || (!explicit_choice && is_123)) {
        if (!is_123) throw Error(Errc::SpecMismatch, "window theorems apply to S={1};D={2,3} only");
        jobs.push_back(windows(cfg.gap_theorems || !explicit_choice, cfg.lemma || !explicit_choice));
    }
    return jobs;
}

// Runs jobs on up to `workers` threads; output is emitted in job order.
int run_jobs(const std::vector<Job>& jobs, unsigned workers, std::ostream& out, std::ostream& err) {
    std::vector<std::string> logs(jobs.size());
    std::vector<int> status(jobs.size(), kOk);
    std::vector<std::string> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < jobs.size();) {
            std::ostringstream log;
            try {
                status[i] = jobs[i].run(log) ? kOk : kMismatch;
            } catch (const Error& e) {
                status[i] = exit_code_for(e.code());
                errors[i] = e.what();
            }
            logs[i] = log.str();
        }
    };
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs.size())));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    int code = kOk;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        out << logs[i];
        if (!errors[i].empty()) err << jobs[i].name << ": " << errors[i] << '\n';
        code = std::max(code, status[i]);
    }
    return code;
}

int cmd_verify(const Config& cfg, std::ostream& out, std::ostream& err) {
    if (!cfg.all && (cfg.sub.empty() || cfg.div.empty()))
        throw Error(Errc::PreconditionViolated, "verify needs --sub/--div or --all");
    return run_jobs(verification_jobs(cfg), cfg.jobs, out, err);
}

int cmd_conjecture(const Config& cfg, std::ostream& out, std::ostream& err) {
    const auto spec = spec_of(cfg);
    const auto table = acquire_table(cfg, spec, cfg.n, err);
    const auto report = check_conjecture(table);
    out << to_json(report).dump() << '\n';
    if (!report.holds()) {
        err << "CONJECTURE VIOLATED for s=" << report.s << " d=" << report.d << ": " << report.violations.size()
            << " positions with SG 2 outside the allowed set, first at n=" << report.violations.front() << '\n';
        return kMismatch;
    }
    return kOk;
}

int cmd_sum(const Config& cfg, std::ostream& out, std::ostream&) {
    if (cfg.games.empty()) throw Error(Errc::PreconditionViolated, "sum needs at least one --game \"S;D;n\"");
    const auto sum = sum_of(cfg);
    const auto evs = evaluators_for(sum, BuildOptions{cfg.mem_limit}, cfg.force_oracle);
    const auto value = evaluate(sum, evs);
    out << "sg=" << value.sg << '\n';
    out << "outcome=" << to_char(value.outcome) << '\n';
    if (const auto move = winning_move(sum, evs))
        out << "move=component " << move->component << ": " << sum[move->component].pile << " -> " << move->target
            << '\n';
    else
        out << "move=none\n";
    return kOk;
}

void print_position(const SumPosition& sum, std::ostream& out) {
    if (sum.size() == 1) {
        out << "pile: " << sum[0].pile << '\n';
        return;
    }
    out << "piles:";
    for (std::size_t i = 0; i < sum.size(); ++i) out << " [" << i << "] " << sum[i].pile;
    out << '\n';
}

std::optional<Move> read_human_move(const SumPosition& sum, const std::string& line) {
    std::istringstream is(line);
    std::vector<long long> nums;
    for (long long v; is >> v;) nums.push_back(v);
    if (!is.eof()) return std::nullopt;
    Move move{0, 0};
    if (sum.size() == 1 && nums.size() == 1) {
        if (nums[0] < 0) return std::nullopt;
        move.target = static_cast<Position>(nums[0]);
    } else if (nums.size() == 2) {
        if (nums[0] < 0 || nums[1] < 0 || static_cast<std::size_t>(nums[0]) >= sum.size()) return std::nullopt;
        move = {static_cast<std::size_t>(nums[0]), static_cast<Position>(nums[1])};
    } else {
        return std::nullopt;
    }
    const auto opts = options(sum[move.component].spec, sum[move.component].pile);
    if (!std::binary_search(opts.begin(), opts.end(), move.target)) return std::nullopt;
    return move;
}

int cmd_play(const Config& cfg, std::istream& in, std::ostream& out, std::ostream&) {
    if (cfg.games.empty() && (cfg.sub.empty() || cfg.div.empty()))
        throw Error(Errc::PreconditionViolated, "play needs --sub/--div/-n or --game");
    auto sum = sum_of(cfg);
    const auto evs = evaluators_for(sum, BuildOptions{cfg.mem_limit}, cfg.force_oracle);
    bool engine_turn = !cfg.human_first;

    for (;;) {
        print_position(sum, out);
        if (!first_legal_move(sum)) {
            out << (engine_turn ? "Engine has no move. You win.\n" : "You have no move. Engine wins.\n");
            return kOk;
        }
        if (engine_turn) {
            auto move = winning_move(sum, evs);
            if (!move) move = first_legal_move(sum);
            out << "engine: " << describe(sum, *move, sum[move->component].pile) << '\n';
            imark::apply(sum, *move);
            engine_turn = false;
            continue;
        }
        for (std::size_t i = 0; i < sum.size(); ++i) {
            out << (sum.size() > 1 ? "options [" + std::to_string(i) + "]:" : "options:");
            for (auto w : options(sum[i].spec, sum[i].pile)) out << ' ' << w;
            out << '\n';
        }
        for (;;) {
            out << (sum.size() > 1 ? "your move (component target)> " : "your move> ") << std::flush;
            std::string line;
            if (!std::getline(in, line)) {
                out << "\ninput closed, game abandoned\n";
                return kOk;
            }
            if (const auto move = read_human_move(sum, line)) {
                imark::apply(sum, *move);
                break;
            }
            out << "not a legal move, try again\n";
        }
        engine_turn = true;
    }
}

void print_cache_info(const SgTable& table, std::ostream& out) {
    out << "spec: " << table.spec().to_string() << '\n'
        << "family: " << to_string(classify_family(table.spec())) << '\n'
        << "N: " << table.limit() << '\n'
        << "bits_per_value: " << table.bits_per_value() << '\n'
        << "payload_bytes: " << table.bytes().size() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Config cfg;
    CLI::App app{"Sprague-Grundy values of i-Mark(S, D) subtraction-division games", "imark"};
    app.require_subcommand(1);

    auto* sg = app.add_subcommand("sg", "SG value of one position");
    add_spec_options(sg, cfg);
    sg->add_option("-n", cfg.n, "pile size")->required();
    sg->add_flag("--force-oracle", cfg.force_oracle, "use the DP table even when a closed form exists");
    add_table_options(sg, cfg);

    auto* seq = app.add_subcommand("seq", "export SG(n) for a range of positions");
    add_spec_options(seq, cfg);
    seq->add_option("--from", cfg.from, "first position");
    seq->add_option("--to", cfg.to, "last position")->required();
    seq->add_option("--format", cfg.format, "csv or json (JSON lines)")->check(CLI::IsMember({"csv", "json"}));
    seq->add_option("--out", cfg.out_path, "write to a file instead of stdout");
    seq->add_flag("--force-oracle", cfg.force_oracle, "use the DP table even when a closed form exists");
    add_table_options(seq, cfg);

    auto* gaps = app.add_subcommand("gaps", "gap statistics per SG value");
    add_spec_options(gaps, cfg);
    gaps->add_option("-n", cfg.n, "scan limit")->required();
    gaps->add_option("--value", cfg.value, "report one SG value only");
    add_table_options(gaps, cfg);

    auto* verify = app.add_subcommand("verify", "check closed forms and window theorems against the oracle");
    add_spec_options(verify, cfg, false);
    verify->add_option("-n", cfg.n, "scan limit")->required();
    verify->add_flag("--equivalence", cfg.equivalence, "closed form vs oracle");
    verify->add_flag("--gap-theorems", cfg.gap_theorems, "value 0/1/2 windows for S={1};D={2,3}");
    verify->add_flag("--lemma", cfg.lemma, "the 5 (mod 6) lemma for S={1};D={2,3}");
    verify->add_flag("--all", cfg.all, "every solved family and the window theorems");
    verify->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
    verify->add_option("--mem-limit", cfg.mem_limit, "table memory budget in bytes");

    auto* conj = app.add_subcommand("conjecture", "SG-2 positions of S={s};D={d} vs the conjectured set");
    add_spec_options(conj, cfg);
    conj->add_option("-n", cfg.n, "scan limit")->required();
    add_table_options(conj, cfg);

    auto* sum = app.add_subcommand("sum", "value and winning move of a sum of games");
    sum->add_option("--game", cfg.games, "component as \"S;D;n\", e.g. \"1;2,3;5\"")->required();
    sum->add_flag("--force-oracle", cfg.force_oracle, "use DP tables even when a closed form exists");
    sum->add_option("--mem-limit", cfg.mem_limit, "table memory budget in bytes");

    auto* play = app.add_subcommand("play", "play against the engine on standard input/output");
    add_spec_options(play, cfg, false);
    play->add_option("-n", cfg.n, "starting pile");
    play->add_option("--game", cfg.games, "component as \"S;D;n\" (repeatable)");
    play->add_flag("--human-first", cfg.human_first, "let the human move first");
    play->add_option("--mem-limit", cfg.mem_limit, "table memory budget in bytes");

    auto* cache = app.add_subcommand("cache", "manage table cache files");
    cache->require_subcommand(1);
    auto* cache_build = cache->add_subcommand("build", "build or extend a cache file");
    add_spec_options(cache_build, cfg);
    cache_build->add_option("-n", cfg.n, "table limit")->required();
    cache_build->add_option("--cache", cfg.cache, "cache file")->required();
    cache_build->add_option("--mem-limit", cfg.mem_limit, "table memory budget in bytes");
    auto* cache_info = cache->add_subcommand("info", "describe a cache file");
    cache_info->add_option("--cache", cfg.cache, "cache file")->required();

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*sg) return cmd_sg(cfg, out, err);
        if (*seq) return cmd_seq(cfg, out, err);
        if (*gaps) return cmd_gaps(cfg, out, err);
        if (*verify) return cmd_verify(cfg, out, err);
        if (*conj) return cmd_conjecture(cfg, out, err);
        if (*sum) return cmd_sum(cfg, out, err);
        if (*play) return cmd_play(cfg, in, out, err);
        if (*cache_build) {
            const auto cached = load_or_build(cfg.cache, spec_of(cfg), cfg.n, BuildOptions{cfg.mem_limit});
            print_cache_info(cached.table, out);
            return kOk;
        }
        if (*cache_info) {
            print_cache_info(load_table(std::filesystem::path(cfg.cache), LoadCheck::Full), out);
            return kOk;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kResource;
    }
    return kUsage;
}

}  // namespace imark::cli

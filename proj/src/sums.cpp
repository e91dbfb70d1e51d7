#include "imark/sums.hpp"

#include <algorithm>
#include <map>

#include "imark/error.hpp"

namespace imark {

namespace {

constexpr std::uint64_t kProductLimit = 1'000'000;

}  // namespace

std::vector<SgEvaluator> evaluators_for(const SumPosition& sum, const BuildOptions& opts, bool force_oracle) {
    std::map<std::string, Position> reach;
    for (const auto& c : sum) {
        auto& r = reach[c.spec.to_string()];
        r = std::max(r, c.pile);
    }
    std::map<std::string, SgEvaluator> shared;
    std::vector<SgEvaluator> out;
    for (const auto& c : sum) {
        const auto key = c.spec.to_string();
        auto it = shared.find(key);
        if (it == shared.end())
            it = shared.emplace(key, SgEvaluator::make(c.spec, reach[key], opts, force_oracle)).first;
        out.push_back(it->second);
    }
    return out;
}

SumValue evaluate(const SumPosition& sum, std::span<const SgEvaluator> evaluators) {
    SgValue x = 0;
    for (std::size_t i = 0; i < sum.size(); ++i) x ^= evaluators[i].sg(sum[i].pile);
    return {x, x == 0 ? Outcome::P : Outcome::N};
}

std::optional<Move> winning_move(const SumPosition& sum, std::span<const SgEvaluator> evaluators) {
    const auto total = evaluate(sum, evaluators).sg;
    if (total == 0) return std::nullopt;
    for (std::size_t i = 0; i < sum.size(); ++i) {
        const auto current = evaluators[i].sg(sum[i].pile);
        const auto wanted = current ^ total;
        if (wanted >= current) continue;
        // mex guarantees an option with every smaller value.
        for (auto w : options(sum[i].spec, sum[i].pile))
            if (evaluators[i].sg(w) == wanted) return Move{i, w};
    }
    return std::nullopt;
}

std::optional<Move> first_legal_move(const SumPosition& sum) {
    for (std::size_t i = 0; i < sum.size(); ++i) {
        const auto opts = options(sum[i].spec, sum[i].pile);
        if (!opts.empty()) return Move{i, opts.front()};
    }
    return std::nullopt;
}

void apply(SumPosition& sum, const Move& move) { sum.at(move.component).pile = move.target; }

SgValue sum_oracle_small(const SumPosition& sum, std::span<const Position> caps) {
    if (sum.empty()) throw Error(Errc::PreconditionViolated, "empty sum");
    if (caps.size() != sum.size()) throw Error(Errc::PreconditionViolated, "one cap per component required");

    // Mixed-radix index, component 0 least significant. Every option lowers
    // one coordinate, hence the index, so an ascending pass suffices.
    std::vector<std::uint64_t> stride(sum.size());
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < sum.size(); ++i) {
        if (sum[i].pile > caps[i]) throw Error(Errc::OutOfRange, "pile exceeds its cap");
        stride[i] = total;
        if (caps[i] + 1 > kProductLimit / total)
            throw Error(Errc::ResourceLimit, "product graph exceeds 10^6 positions");
        total *= caps[i] + 1;
    }

    std::vector<SgValue> value(total);
    std::vector<Position> coord(sum.size(), 0);
    std::vector<SgValue> seen;
    for (std::uint64_t index = 0; index < total; ++index) {
        seen.clear();
        for (std::size_t i = 0; i < sum.size(); ++i)
            for (auto w : options(sum[i].spec, coord[i])) seen.push_back(value[index - (coord[i] - w) * stride[i]]);
        value[index] = mex(seen);

        for (std::size_t i = 0; i < sum.size(); ++i) {
            if (++coord[i] <= caps[i]) break;
            coord[i] = 0;
        }
    }

    std::uint64_t target = 0;
    for (std::size_t i = 0; i < sum.size(); ++i) target += sum[i].pile * stride[i];
    return value[target];
}

}  // namespace imark

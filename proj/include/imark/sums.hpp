#pragma once

#include <optional>
#include <span>
#include <vector>

#include "imark/evaluator.hpp"

namespace imark {

struct Component {
    GameSpec spec;
    Position pile;
};

/// Disjunctive sum: a move changes exactly one component.
using SumPosition = std::vector<Component>;

struct Move {
    std::size_t component;
    Position target;

    friend bool operator==(const Move&, const Move&) = default;
};

inline SgValue sum_sg(std::span<const SgValue> values) {
    SgValue x = 0;
    for (auto v : values) x ^= v;
    return x;
}

/// One evaluator per component, sized to its pile. Components sharing a
/// spec share one oracle table.
std::vector<SgEvaluator> evaluators_for(const SumPosition& sum, const BuildOptions& opts = {},
                                        bool force_oracle = false);

struct SumValue {
    SgValue sg;
    Outcome outcome;
};

/// XOR of component values. `evaluators` is aligned with `sum`.
SumValue evaluate(const SumPosition& sum, std::span<const SgEvaluator> evaluators);

/// A move to an XOR-zero position: lowest component index first, then the
/// smallest target pile. None when the sum is already a P-position.
std::optional<Move> winning_move(const SumPosition& sum, std::span<const SgEvaluator> evaluators);

/// Lowest component with any option, smallest target. None at the terminal.
std::optional<Move> first_legal_move(const SumPosition& sum);

void apply(SumPosition& sum, const Move& move);

/// SG value of `sum` by direct mex over the product game graph, independent
/// of the XOR rule. Each coordinate ranges over [0, caps[i]]; throws
/// ResourceLimit when the product of (caps[i] + 1) exceeds 10^6, and
/// OutOfRange when a pile exceeds its cap.
SgValue sum_oracle_small(const SumPosition& sum, std::span<const Position> caps);

}  // namespace imark

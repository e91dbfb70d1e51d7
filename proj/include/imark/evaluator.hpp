#pragma once

#include <memory>

#include "imark/closed_form.hpp"
#include "imark/sg_table.hpp"

namespace imark {

enum class Source { ClosedForm, Oracle };

inline const char* to_string(Source s) noexcept { return s == Source::ClosedForm ? "closed-form" : "oracle"; }

/// SG values for one game: the closed form when the spec belongs to a solved
/// family, otherwise lookups into a shared oracle table.
class SgEvaluator {
public:
    /// Closed form when available; otherwise builds a table to `limit`.
    static SgEvaluator make(const GameSpec& spec, Position limit, const BuildOptions& opts = {},
                            bool force_oracle = false);

    /// Closed form when available, else lookups into `table`.
    explicit SgEvaluator(std::shared_ptr<const SgTable> table, bool force_oracle = false);

    const GameSpec& spec() const noexcept { return spec_; }
    Source source() const noexcept { return use_closed_form_ ? Source::ClosedForm : Source::Oracle; }

    /// Throws OutOfRange when the oracle table does not reach n.
    SgValue sg(Position n) const;

private:
    SgEvaluator(GameSpec spec, FamilyTag tag) : spec_(std::move(spec)), tag_(tag), use_closed_form_(true) {}

    GameSpec spec_;
    FamilyTag tag_;
    bool use_closed_form_;
    std::shared_ptr<const SgTable> table_;
};

}  // namespace imark

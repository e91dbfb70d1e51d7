#include "imark/evaluator.hpp"

namespace imark {

SgEvaluator SgEvaluator::make(const GameSpec& spec, Position limit, const BuildOptions& opts, bool force_oracle) {
    const auto tag = classify_family(spec);
    if (has_closed_form_sg(tag) && !force_oracle) return SgEvaluator(spec, tag);
    return SgEvaluator(std::make_shared<const SgTable>(SgTable::build(spec, limit, opts)), force_oracle);
}

SgEvaluator::SgEvaluator(std::shared_ptr<const SgTable> table, bool force_oracle)
    : spec_(table->spec()),
      tag_(classify_family(table->spec())),
      use_closed_form_(has_closed_form_sg(tag_) && !force_oracle),
      table_(std::move(table)) {}

SgValue SgEvaluator::sg(Position n) const {
    if (use_closed_form_) return *closed_form_sg(tag_, n);
    return table_->at(n);
}

}  // namespace imark

#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "mcerl/domain.hpp"
#include "mcerl/env.hpp"

namespace mcerl {

// Fuel counter; decremented on every recursive call of the main evaluator.
using Clock = std::uint64_t;

inline constexpr Clock kDefaultClock = 1000;

// Curried main evaluator, already fixed at some clock.
using ElemEvaluator = std::function<ResultType(
    const Environment&, const Expression&, const SideEffectList&)>;

// List evaluation: threads the trace left to right, stops at the first
// exception/timeout. Consumes no fuel itself; f carries the clock.
ResultListType eval_elems(const ElemEvaluator& f, const Environment& env,
                          std::span<const ExprPtr> exps,
                          const SideEffectList& eff);

// The total, clock-decremented interpreter. clock = 0 gives Timeout.
ResultType eval_fbos_expr(Clock clock, const Environment& env,
                          const Expression& exp, const SideEffectList& eff);

// Entry point: empty environment, empty trace.
ResultType eval_program(const Expression& exp, Clock clock = kDefaultClock);

}  // namespace mcerl

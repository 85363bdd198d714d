#pragma once

#include <cstdint>
#include <string>

#include "mcerl/bigstep.hpp"
#include "mcerl/fbs.hpp"
#include "mcerl/generator.hpp"
#include "mcerl/pretty.hpp"

namespace mcerl {

struct EngineOutcomes {
  ResultType fbs;
  SearchOutcome bigstep;
  ResultType pretty;
  PrettyTrace pretty_trace;
};

enum class VerdictKind { Agree, Disagree, AllDiverged };

struct Verdict {
  VerdictKind kind;
  std::string detail;  // field-level diff on Disagree
};

struct DiffReport {
  ExprPtr program;
  EngineOutcomes outcomes;
  Verdict verdict;
};

EngineOutcomes run_engines(const ExprPtr& program, Clock fuel,
                           std::size_t depth);

// Agree: all engines terminal with equal outcomes and identical traces.
// AllDiverged: fbs and pretty Timeout, bigstep DepthExhausted.
Verdict agree(const EngineOutcomes& outcomes);

DiffReport run_diff(const ExprPtr& program, Clock fuel = kDefaultClock,
                    std::size_t depth = kDefaultClock);

// Once some clock yields a Result, every clock up to max_clock must yield
// the identical Result. Vacuously true when no clock in range succeeds.
bool check_monotone(const ExprPtr& e, Clock max_clock);

// e  <=>  let X = fun() -> e in apply X(). The wrapper side gets +3 fuel
// for its extra Let/Fun/App recursions.
bool check_equiv_wrap(const ExprPtr& e, Clock clock = kDefaultClock);

enum class SwapVerdict {
  Holds,        // both sides terminal values, traces transposed
  Conditional,  // an exception was raised; per-branch behaviour consistent
  Vacuous,      // some side diverges at this clock
  Violated,
};

// let A = e1 in let B = e2 in A + B  <=>  the let-swapped form, with the
// e1/e2 trace segments transposed. pre: e1, e2 closed.
SwapVerdict check_equiv_swap(const ExprPtr& e1, const ExprPtr& e2,
                             Clock clock = kDefaultClock);

inline bool swap_law_ok(SwapVerdict v) { return v != SwapVerdict::Violated; }

// Proof search repeated under random rule-attempt orders: classification and
// any found (result, trace) must be identical across orders.
bool check_determinism(const ExprPtr& e, std::size_t orders, std::size_t depth,
                       std::uint64_t seed = 1234567);

}  // namespace mcerl

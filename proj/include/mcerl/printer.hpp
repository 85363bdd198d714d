#pragma once

#include <string>

#include "mcerl/syntax.hpp"

namespace mcerl {

// Deterministic rendering; parse(print(e)) == e for every expression.
std::string print(const Expression& e);
std::string print(const ExprPtr& e);

std::string print_literal(const Literal& l);

}  // namespace mcerl

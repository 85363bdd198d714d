#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcerl/syntax.hpp"

namespace mcerl {

struct GenConfig {
  std::uint64_t seed = 1;
  std::size_t max_size = 30;     // node budget per program
  std::uint64_t max_int = 100;   // magnitude bound for integer literals
  std::vector<std::string> atom_pool = {"a", "b", "ok", "foo"};
  bool allow_effects = true;     // include fwrite/fread call targets
};

// Deterministic in (seed, index); every output is closed and within the
// node budget. Referenced names are always introduced by an enclosing
// binder; call targets come from the builtin table.
ExprPtr generate_one(const GenConfig& cfg, std::uint64_t index);

std::vector<ExprPtr> generate(const GenConfig& cfg, std::size_t n);

}  // namespace mcerl

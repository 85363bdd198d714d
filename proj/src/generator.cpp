#include "mcerl/generator.hpp"

#include <algorithm>
#include <cassert>
#include <random>

namespace mcerl {

namespace {

// Raw engine draws with modulo keep generation identical across platforms;
// std::uniform_int_distribution is not portable.
struct Rng {
  std::mt19937_64 engine;

  std::uint64_t below(std::uint64_t n) { return engine() % n; }
  bool chance(unsigned percent) { return below(100) < percent; }

  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }
};

const std::vector<Var>& var_pool() {
  static const std::vector<Var> pool = {"X", "Y", "Z", "V", "W", "K"};
  return pool;
}

struct Gen {
  const GenConfig& cfg;
  Rng rng;
  std::vector<Var> vars;                  // in scope
  std::vector<FunctionIdentifier> fids;   // in scope

  std::vector<Var> fresh_params(std::size_t count) {
    const auto& pool = var_pool();
    assert(count <= pool.size());
    std::vector<Var> names = pool;
    for (std::size_t i = 0; i + 1 < names.size(); ++i)
      std::swap(names[i], names[i + rng.below(names.size() - i)]);
    names.resize(count);
    return names;
  }

  // Composition of total into parts positive summands.
  std::vector<std::size_t> split(std::size_t total, std::size_t parts) {
    assert(parts >= 1 && total >= parts);
    std::vector<std::size_t> out(parts, 1);
    std::size_t extra = total - parts;
    for (std::size_t i = 0; i < parts && extra > 0; ++i) {
      std::size_t take = rng.below(extra + 1);
      out[i] += take;
      extra -= take;
    }
    out[parts - 1] += extra;
    return out;
  }

  std::string pick_builtin() {
    // Arithmetic plus the effectful pair when allowed; fread is weighted up
    // because integer-valued effectful expressions feed the swap law.
    unsigned roll = static_cast<unsigned>(rng.below(100));
    if (cfg.allow_effects) {
      if (roll < 25) return "+";
      if (roll < 40) return "-";
      if (roll < 55) return "*";
      if (roll < 82) return "fread";
      return "fwrite";
    }
    if (roll < 40) return "+";
    if (roll < 70) return "-";
    return "*";
  }

  ExprPtr leaf() {
    unsigned roll = static_cast<unsigned>(rng.below(100));
    if (roll < 20 && !vars.empty()) return var(rng.pick(vars));
    if (roll < 28 && !fids.empty()) {
      const auto& fid = rng.pick(fids);
      return fun_id(fid.name, fid.arity);
    }
    if (roll < 64) {
      BigInt n(rng.below(cfg.max_int + 1));
      if (rng.chance(30)) n = -n;
      return lit_int(n);
    }
    return lit_atom(rng.pick(cfg.atom_pool));
  }

  ExprPtr gen(std::size_t budget) {
    assert(budget >= 1);
    if (budget == 1 || rng.chance(40)) return leaf();

    // budget >= 2 here; retry until a compound form fits.
    for (;;) {
      switch (rng.below(6)) {
        case 0: {  // fun
          std::size_t arity = rng.below(4);
          auto params = fresh_params(arity);
          auto saved = vars;
          for (const auto& p : params) vars.push_back(p);
          ExprPtr body = gen(budget - 1);
          vars = saved;
          return fun(std::move(params), std::move(body));
        }
        case 1: {  // apply
          std::size_t arity = std::min<std::size_t>(rng.below(4), budget - 2);
          auto budgets = split(budget - 1, arity + 1);
          ExprPtr callee;
          if (rng.chance(40) && budgets[0] >= 2) {
            // A closure of matching arity, so applications regularly enter
            // function bodies instead of always faulting.
            auto params = fresh_params(arity);
            auto saved = vars;
            for (const auto& p : params) vars.push_back(p);
            ExprPtr body = gen(budgets[0] - 1);
            vars = saved;
            callee = fun(std::move(params), std::move(body));
          } else {
            callee = gen(budgets[0]);
          }
          std::vector<ExprPtr> args;
          for (std::size_t i = 0; i < arity; ++i)
            args.push_back(gen(budgets[1 + i]));
          return apply(std::move(callee), std::move(args));
        }
        case 2: {  // call
          std::string fname = pick_builtin();
          std::size_t wanted = (fname == "fread" || fname == "fwrite") ? 1 : 2;
          if (rng.chance(12)) wanted = rng.below(4);  // arity faults
          std::size_t arity = std::min(wanted, budget - 1);
          std::vector<ExprPtr> args;
          if (arity > 0) {
            auto budgets = split(budget - 1, arity);
            for (std::size_t i = 0; i < arity; ++i)
              args.push_back(gen(budgets[i]));
          }
          return call(std::move(fname), std::move(args));
        }
        case 3: {  // let
          if (budget < 3) continue;
          auto budgets = split(budget - 1, 2);
          Var v = rng.pick(var_pool());
          ExprPtr bound = gen(budgets[0]);
          vars.push_back(v);
          ExprPtr body = gen(budgets[1]);
          vars.pop_back();
          return let(std::move(v), std::move(bound), std::move(body));
        }
        case 4: {  // letrec
          if (budget < 3) continue;
          auto budgets = split(budget - 1, 2);
          std::size_t arity = rng.below(3);
          auto params = fresh_params(arity);
          static const std::vector<std::string> fnames = {"f", "g", "h"};
          FunctionIdentifier fid{rng.pick(fnames), arity};
          auto saved_vars = vars;
          fids.push_back(fid);
          ExprPtr fun_body;
          if (rng.chance(30)) {
            // Direct self-application: diverges whenever the continuation
            // reaches it.
            std::vector<ExprPtr> args;
            for (const auto& p : params) args.push_back(var(p));
            fun_body = apply(fun_id(fid.name, fid.arity), std::move(args));
          } else {
            for (const auto& p : params) vars.push_back(p);
            fun_body = gen(budgets[0]);
            vars = saved_vars;
          }
          ExprPtr cont;
          if (rng.chance(35) && budgets[1] >= 2 + arity) {
            // Actually invoke the bound function, so recursive closures get
            // applied (and self-calling bodies diverge).
            std::vector<ExprPtr> args;
            for (std::size_t i = 0; i < arity; ++i) args.push_back(leaf());
            cont = apply(fun_id(fid.name, fid.arity), std::move(args));
          } else {
            cont = gen(budgets[1]);
          }
          fids.pop_back();
          return letrec(fid, std::move(params), std::move(fun_body),
                        std::move(cont));
        }
        default: {  // try
          if (budget < 4) continue;
          auto budgets = split(budget - 1, 3);
          ExprPtr guarded = gen(budgets[0]);
          Var v = rng.pick(var_pool());
          vars.push_back(v);
          ExprPtr on_value = gen(budgets[1]);
          vars.pop_back();
          auto catch_vars = fresh_params(3);
          auto saved = vars;
          for (const auto& c : catch_vars) vars.push_back(c);
          ExprPtr on_exc = gen(budgets[2]);
          vars = saved;
          return try_catch(std::move(guarded), std::move(v),
                           std::move(on_value), std::move(catch_vars),
                           std::move(on_exc));
        }
      }
    }
  }
};

std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 over seed ^ golden-ratio-scaled index
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

ExprPtr generate_one(const GenConfig& cfg, std::uint64_t index) {
  assert(cfg.max_size >= 1);
  assert(!cfg.atom_pool.empty());
  Gen g{cfg, Rng{std::mt19937_64(mix(cfg.seed, index))}, {}, {}};
  return g.gen(cfg.max_size);
}

std::vector<ExprPtr> generate(const GenConfig& cfg, std::size_t n) {
  std::vector<ExprPtr> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(generate_one(cfg, i));
  return out;
}

}  // namespace mcerl

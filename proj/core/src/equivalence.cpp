#include "liesym/equivalence.hpp"

#include <algorithm>
#include <cmath>

#include "liesym/calculus.hpp"
#include "liesym/errors.hpp"

namespace liesym {

Env draw_environment(const std::set<std::string>& symbols, const SampleSpec& spec, std::mt19937_64& rng) {
  Env env = spec.fixed;
  for (const auto& name : symbols) {
    if (env.count(name)) continue;
    Interval iv = spec.fallback;
    if (auto it = spec.intervals.find(name); it != spec.intervals.end()) iv = it->second;
    std::uniform_real_distribution<double> dist(iv.lo, iv.hi);
    env[name] = dist(rng);
  }
  return env;
}

EquivalenceResult equiv_numeric(const Expr& a, const Expr& b, const SampleSpec& spec) {
  std::set<std::string> symbols = free_symbols(a);
  for (const auto& s : free_symbols(b)) symbols.insert(s);
  for (const auto& [name, iv] : spec.intervals) symbols.insert(name);

  std::mt19937_64 rng(spec.seed);
  EquivalenceResult result;
  const std::size_t budget = 10 * std::max<std::size_t>(spec.samples, 1);
  std::size_t attempts = 0;
  while (result.samples < spec.samples && attempts < budget) {
    ++attempts;
    Env env = draw_environment(symbols, spec, rng);
    if (spec.accept && !spec.accept(env)) {
      ++result.rejected;
      continue;
    }
    double va = 0.0;
    double vb = 0.0;
    try {
      va = eval_at(a, env);
      vb = eval_at(b, env);
    } catch (const DomainError&) {
      ++result.rejected;
      continue;
    }
    ++result.samples;
    double scaled = std::fabs(va - vb) / (1.0 + std::max(std::fabs(va), std::fabs(vb)));
    if (!std::isfinite(va) || !std::isfinite(vb)) scaled = std::isnan(va - vb) ? INFINITY : scaled;
    result.max_scaled_difference = std::max(result.max_scaled_difference, scaled);
    if (!(scaled <= spec.tolerance)) {
      result.status = EquivalenceStatus::not_equivalent;
      result.witness = std::move(env);
      return result;
    }
  }
  result.status = result.samples < spec.samples ? EquivalenceStatus::unsampleable
                                                : EquivalenceStatus::equivalent;
  return result;
}

}  // namespace liesym

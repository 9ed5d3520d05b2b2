#pragma once

// Small random generators for the property tests.

#include <cstddef>
#include <random>
#include <vector>

#include "lawvere/theories.hpp"
#include "lawvere/theory.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline std::size_t below(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

/// Raw term over k variables from the signature, depth at most `depth`.
inline lawvere::Term term(Rng& rng, const std::vector<lawvere::OperationSymbol>& sig, std::size_t k,
                          std::size_t depth) {
  std::vector<lawvere::OperationSymbol> constants, others;
  for (const auto& op : sig) (op.arity == 0 ? constants : others).push_back(op);
  const bool leaf = depth == 0 || others.empty() || below(rng, 3) == 0;
  if (leaf) {
    if (k > 0 && (constants.empty() || below(rng, 4) != 0)) return lawvere::Term::var(below(rng, k));
    if (constants.empty()) return lawvere::Term::var(0);
    return lawvere::Term::constant(constants[below(rng, constants.size())]);
  }
  const auto& op = others[below(rng, others.size())];
  std::vector<lawvere::Term> args;
  for (std::size_t i = 0; i < op.arity; ++i) args.push_back(term(rng, sig, k, depth - 1));
  return lawvere::Term::app(op, std::move(args));
}

inline std::vector<lawvere::Term> terms(Rng& rng, const std::vector<lawvere::OperationSymbol>& sig, std::size_t count,
                                        std::size_t k, std::size_t depth) {
  std::vector<lawvere::Term> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(term(rng, sig, k, depth));
  return out;
}

inline lawvere::BaseFunction function(Rng& rng, std::size_t source, std::size_t target) {
  std::vector<std::size_t> table;
  for (std::size_t i = 0; i < source; ++i) table.push_back(below(rng, target));
  return lawvere::BaseFunction(source, target, table);
}

}  // namespace gen

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "lawvere/term.hpp"

namespace lawvere {

struct LayerStack;  // distlaw.hpp

/// A presentation of an algebraic theory: signature plus a canonical-form
/// function. Equality of operations is equality of normal forms.
struct TheorySpec {
  std::string name;
  std::vector<OperationSymbol> signature;
  std::function<Term(const Term&)> normalizer;
  /// Human-readable generating identities; not consulted by any algorithm.
  std::vector<std::string> identities;
  /// Present for composite theories built from distributive laws.
  std::shared_ptr<const LayerStack> layers;

  const OperationSymbol* find(std::string_view id) const;
  bool owns(std::string_view id) const { return find(id) != nullptr; }
  /// True if every operation in t belongs to this signature.
  bool covers(const Term& t) const;
};

/// Checks symbols against the signature and returns the canonical form.
Term normalize(const TheorySpec& theory, const Term& t);

/// Every syntactic term over k variables with at most `size_bound` nodes,
/// grouped by size, in a fixed order.
std::vector<Term> enumerate_raw_terms(const std::vector<OperationSymbol>& signature, std::size_t k,
                                      std::size_t size_bound);

/// All normal forms over k variables with at most `size_bound` nodes, each
/// once, ordered by size and then by generation order.
std::vector<Term> enumerate_terms(const TheorySpec& theory, std::size_t k, std::size_t size_bound);

/// Uniform-ish random term: each node is a leaf with probability 1/3 (always at
/// depth 0). Leaves prefer variables when k > 0.
Term random_term(const TheorySpec& theory, std::size_t k, std::size_t max_depth,
                 std::mt19937_64& rng);

/// Bounds and seed for every sampled checker.
struct Sampler {
  std::size_t samples = 500;
  std::uint64_t seed = 0;
  std::size_t max_depth = 3;
  std::size_t max_width = 4;
  std::size_t max_arity = 4;
  /// Layered samples whose flattened term exceeds this many nodes are redrawn.
  std::size_t max_size = 40;
};

namespace ops {
inline const OperationSymbol mul{"mul", 2, "monoid"};
inline const OperationSymbol one{"one", 0, "monoid"};
inline const OperationSymbol smul{"mul", 2, "semigroup"};
inline const OperationSymbol pt{"pt", 0, "pointed"};
inline const OperationSymbol add{"add", 2, "abelian_group"};
inline const OperationSymbol neg{"neg", 1, "abelian_group"};
inline const OperationSymbol zero{"zero", 0, "abelian_group"};
inline const OperationSymbol cadd{"cadd", 2, "commutative_monoid"};
inline const OperationSymbol czero{"czero", 0, "commutative_monoid"};
}  // namespace ops

namespace builtin {
TheorySpec monoid();
TheorySpec semigroup();
TheorySpec abelian_group();
TheorySpec pointed();
TheorySpec commutative_monoid();
/// No operations: the Lawvere theory F^op itself.
TheorySpec identity();
}  // namespace builtin

// Canonical-shape helpers shared by the normalizers and the built-in laws.

/// Letters of a flattened word; `mul` nodes are traversed, `one` skipped.
/// Throws on any other operation.
std::vector<std::size_t> word_of(const Term& t);
/// Left-nested product; empty words become `unit` (throws if none given).
Term make_word(const std::vector<std::size_t>& letters, const OperationSymbol& mul,
               const std::optional<OperationSymbol>& unit);

/// Coefficient map of an abelian-group term over variables.
std::map<std::size_t, long long> coefficients_of(const Term& t);
/// Canonical abelian-group tree: summands by variable index, |c| copies each
/// (wrapped in neg when c < 0), left-nested; `zero` when empty.
Term make_combination(const std::map<std::size_t, long long>& coefficients);

}  // namespace lawvere

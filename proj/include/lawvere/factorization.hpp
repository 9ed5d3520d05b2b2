#pragma once

#include <optional>
#include <vector>

#include "lawvere/category.hpp"
#include "lawvere/report.hpp"
#include "lawvere/theory.hpp"

namespace lawvere {

/// k -left-> middle -right-> m in a two-layer composite theory B.A: left is a
/// tuple of pure A terms (the inner layer), right a tuple of pure B terms.
struct FactorizationPair {
  std::size_t middle = 0;
  TheoryMorphism left;
  TheoryMorphism right;

  friend bool operator==(const FactorizationPair&, const FactorizationPair&) = default;
};

/// Inner (A) and outer (B) layers of a two-layer composite theory; throws
/// structural_error for anything else.
const TheorySpec& inner_layer(const TheorySpec& composite);
const TheorySpec& outer_layer(const TheorySpec& composite);

/// Builds a pair from explicit parts, normalizing each part in its own layer
/// and checking purity and arities.
FactorizationPair make_factorization(const TheorySpec& composite, const TheoryMorphism& left,
                                     const TheoryMorphism& right);

/// right o left in the composite theory.
TheoryMorphism recompose(const TheorySpec& composite, const FactorizationPair& p);

/// Canonical factorization of a normal morphism: the middle lists the distinct
/// maximal A subterms (variables included) in order of first occurrence, left
/// is that list and right is the B shape over it. Throws structural_error if
/// f is not in normal form.
FactorizationPair factorize(const TheorySpec& composite, const TheoryMorphism& f);

/// factorize(recompose(p)). Duplicate left components are merged, unused ones
/// dropped, and the rest ordered by first use in the normal form of right o left.
FactorizationPair canonicalize(const TheorySpec& composite, const FactorizationPair& p);

/// A morphism of F^op between middles making both triangles commute. For
/// `forward`, the step goes from the earlier pair P to the later pair Q and
/// alpha: [Q.middle] -> [P.middle] satisfies
///   Q.left_t = P.left_alpha(t)  and  P.right = Q.right renamed along alpha.
/// A backward step is the same with P and Q exchanged.
struct ZigzagStep {
  BaseFunction alpha;
  bool forward = true;
};

struct ZigzagWitness {
  std::vector<FactorizationPair> nodes;  // nodes.size() == steps.size() + 1
  std::vector<ZigzagStep> steps;
};

/// Checks one step from p to q.
bool valid_step(const TheorySpec& composite, const FactorizationPair& p, const FactorizationPair& q,
                const ZigzagStep& step);
/// Checks every step of the chain; on failure returns the index of the first
/// bad step.
std::optional<std::size_t> first_invalid_step(const TheorySpec& composite, const ZigzagWitness& w);

/// A single step between p and q in either direction, trying every function
/// between the middles.
std::optional<ZigzagStep> find_single_step(const TheorySpec& composite, const FactorizationPair& p,
                                           const FactorizationPair& q);

/// Chain p -> ... -> canonical <- ... <- q through merged and projected
/// middles; nothing if the canonical forms differ.
std::optional<ZigzagWitness> constructive_witness(const TheorySpec& composite, const FactorizationPair& p,
                                                  const FactorizationPair& q);

/// Breadth-first search for a chain of at most max_steps steps whose middles
/// stay at most max_middle. Moves are projections and permutations,
/// merging equal left components, and adding a left component taken from p
/// or q. Gives up after max_nodes visited pairs.
std::optional<ZigzagWitness> search_witness(const TheorySpec& composite, const FactorizationPair& p,
                                            const FactorizationPair& q, std::size_t max_steps,
                                            std::size_t max_middle, std::size_t max_nodes = 20000);

struct ZigzagDecision {
  bool equivalent = false;
  std::optional<ZigzagWitness> witness;
  /// True when the witness came from the bounded search rather than the
  /// constructive chain.
  bool searched = false;
};

/// p and q are equivalent iff their canonical forms agree. With bound > 0 an
/// equivalent pair also gets a witness: the shortest chain of length <= bound
/// through middles <= max(middles) + bound if the search finds one, else the
/// constructive chain. Throws structural_error on mismatched endpoints.
ZigzagDecision zigzag_equivalent(const TheorySpec& composite, const FactorizationPair& p,
                                 const FactorizationPair& q, std::size_t bound);

/// Every morphism k -> m with k, m <= arity_bound and components of at most
/// size_bound nodes: the canonical factorization exists and recomposes, and
/// the alternatives (one middle coordinate per occurrence, an extra unused
/// coordinate, reversed middle) are equivalent to it with a valid witness.
Report check_fs_over_F(const TheorySpec& composite, std::size_t arity_bound, std::size_t size_bound);

/// Exhaustive check that every morphism of C is r o l for exactly one l in L
/// and r in R (given as membership flags indexed by arrow), followed by the
/// unit and multiplication axioms of the induced rewrite (r, l) |-> (l', r')
/// with l o r = r' o l'.
Report check_strict_fs(const FiniteCategory& c, const std::vector<bool>& in_l, const std::vector<bool>& in_r);

nlohmann::json factorization_to_json(const FactorizationPair& p);
nlohmann::json witness_to_json(const ZigzagWitness& w);

}  // namespace lawvere

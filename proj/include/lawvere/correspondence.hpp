#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lawvere/distlaw.hpp"
#include "lawvere/monad.hpp"
#include "lawvere/report.hpp"

namespace lawvere {

/// The Lawvere theory of a monad fragment on objects 0..bound:
/// hom(n, m) = Set(m, F n), i.e. m-tuples of elements of F[n], composed by
/// substitution (the Kleisli composite), with basic morphisms from F^op.
struct TheoryTable {
  FinitaryMonadFragment monad;
  std::size_t bound = 0;

  /// hom(n, 1) = F[n].
  std::vector<Term> operations(std::size_t n) const;
  std::size_t hom_count(std::size_t n, std::size_t m) const;
  /// Every m-tuple, first component most significant.
  std::vector<TheoryMorphism> hom(std::size_t n, std::size_t m) const;
  /// g o f.
  TheoryMorphism compose(const TheoryMorphism& g, const TheoryMorphism& f) const;
  /// The basic morphism n -> m of a function [m] -> [n].
  TheoryMorphism alpha(const BaseFunction& f) const;
};

/// Throws structural_error if bound exceeds the fragment's arity bound.
TheoryTable phi(const FinitaryMonadFragment& f, std::size_t bound);

/// Unit and associativity laws on every triple of hom(a, b) with a, b <= bound
/// drawn by the sampler, and functoriality of alpha on all functions between
/// objects <= bound.
Report check_theory_table(const TheoryTable& table, const Sampler& sampler);

/// Components alpha_n : F[n] -> G[n] of a transformation between fragments.
using Transformation = std::function<Term(std::size_t n, const Term& t)>;
/// A map of theory tables, acting on morphisms.
using TableMap = std::function<TheoryMorphism(const TheoryMorphism& f)>;

/// The induced map of tables: post-composition with alpha, componentwise.
TableMap phi_map(const Transformation& alpha);

/// Naturality of alpha: alpha o F(f) = G(f) o alpha on F[n] for every
/// f: [n] -> [n'] with n, n' <= bound.
Report check_naturality(const FinitaryMonadFragment& f, const FinitaryMonadFragment& g, const Transformation& alpha,
                        std::size_t bound);

/// Given a map of tables beta: phi(F) -> phi(G), reads alpha_n off hom(n, 1),
/// then checks that alpha is natural, that beta preserves basic morphisms and
/// composition, and that beta agrees with phi_map(alpha) on every morphism
/// n -> m with n, m <= bound.
Report check_fullness(const FinitaryMonadFragment& f, const FinitaryMonadFragment& g, const TableMap& beta,
                      std::size_t bound);

/// The coend of L(n, 1) x X^n over n <= truncation for X = [x], quotiented
/// along every f: [n] -> [n'].
struct MonadValue {
  std::size_t x = 0;
  std::size_t truncation = 0;
  std::size_t generators = 0;
  /// One entry per class: the evaluation t(x_1..x_n) in F[x].
  std::vector<Term> elements;
  /// Evaluation agrees on each class.
  bool well_defined = true;
  /// Recomputing with truncation + 1 changes nothing.
  bool stable = false;
  /// Least truncation from which the class count stays the same up to
  /// truncation + 1.
  std::size_t stable_from = 0;
};

MonadValue monad_from_theory(const TheoryTable& theory, std::size_t x, std::size_t truncation);

/// For |X| = x <= x_bound: monad_from_theory(phi(F), X) is in bijection with
/// F X through evaluation, stable at truncation + 1, and natural in every
/// function between the tested sets. The truncation defaults to x.
Report roundtrip_check(const FinitaryMonadFragment& f, std::size_t x_bound,
                       std::optional<std::size_t> truncation = std::nullopt);

/// The composite monad TS of a law as a fragment: elements of TS[n] are
/// canonical T-over-S layered elements with at most size_bound nodes once
/// flattened, and multiplication runs T S T S -> T T S S (the law) -> T S.
FinitaryMonadFragment composite_fragment(const DistributiveLaw& law, std::size_t size_bound,
                                         std::size_t arity_bound = 4);

/// composite_theory(law) against phi(composite_fragment(law)): equal hom(k, 1)
/// for k <= arity_bound up to size_bound nodes, equal composites on sampled
/// f: k -> m, g: m -> 1, and the product structure of the composite theory.
Report composite_correspondence_check(const DistributiveLaw& law, std::size_t arity_bound, std::size_t size_bound,
                                      const Sampler& sampler);

/// I^* o F_* o I_* at (k, n) for k, n <= bound, computed as a coend over
/// finite sets [u], u <= universe, and compared with Set(k, F n), i.e. with
/// phi(F)(n, k), including stability at universe + 1. Also checks the
/// finitary pasting: the coend over n' <= universe of Set(k, F n') x Set(n', X)
/// is Set(k, F X) for |X| <= bound.
Report istar_composite(const FinitaryMonadFragment& f, std::size_t bound, std::size_t universe);

}  // namespace lawvere

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "lawvere/report.hpp"
#include "lawvere/theories.hpp"

namespace lawvere {

/// A function [source] -> [target] between finite ordinals; a morphism of F,
/// hence a morphism target -> source of F^op.
struct BaseFunction {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::size_t> table;

  BaseFunction() = default;
  BaseFunction(std::size_t source, std::size_t target, std::vector<std::size_t> table);

  static BaseFunction identity(std::size_t n);
  std::size_t operator()(std::size_t i) const { return table.at(i); }
  friend bool operator==(const BaseFunction&, const BaseFunction&) = default;
};

/// g o f.
BaseFunction compose(const BaseFunction& g, const BaseFunction& f);

/// Every function [m] -> [k], in lexicographic table order.
std::vector<BaseFunction> all_functions(std::size_t m, std::size_t k);

/// A morphism k -> m: an m-tuple of normal terms over k variables.
struct TheoryMorphism {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<Term> components;

  friend bool operator==(const TheoryMorphism&, const TheoryMorphism&) = default;
};

/// A Lawvere theory presented by a TheorySpec. `admits` restricts which
/// tuples count as morphisms; it accepts everything for genuine theories and
/// exists so that non-cartesian variants can be fed to the product checks.
struct LawvereTheory {
  TheorySpec base;
  std::function<bool(const TheoryMorphism&)> admits = [](const TheoryMorphism&) { return true; };
};

LawvereTheory lawvere_theory(TheorySpec base);

/// Variant in which no variable may be used twice across a tuple, i.e. the
/// diagonals are missing from the basic morphisms.
LawvereTheory affine_variant(TheorySpec base);

/// Normalizes components and checks they live over `source` variables.
TheoryMorphism make_morphism(const TheorySpec& theory, std::size_t source,
                             std::vector<Term> components);

TheoryMorphism identity_morphism(std::size_t k);

/// g o f, componentwise substitution of f into g followed by normalization.
TheoryMorphism compose(const TheorySpec& theory, const TheoryMorphism& g, const TheoryMorphism& f);

/// alpha: [m] -> [k] gives the basic morphism k -> m picking x_{alpha(i)}.
TheoryMorphism basic_morphism(const BaseFunction& alpha);

/// Tuple concatenation <f, g> : p -> k + m.
TheoryMorphism pairing(const TheoryMorphism& f, const TheoryMorphism& g);

/// Product projections k + m -> k and k + m -> m.
TheoryMorphism first_projection(std::size_t k, std::size_t m);
TheoryMorphism second_projection(std::size_t k, std::size_t m);

/// Random morphism p -> m with components of depth <= max_depth.
TheoryMorphism random_morphism(const TheorySpec& theory, std::size_t p, std::size_t m,
                               std::size_t max_depth, std::mt19937_64& rng);

/// Checks that k + m is the product of k and m: pairing exists, projection
/// equations hold, and surjective pairing holds for sampled h: p -> k+m.
/// A theory without operations (F^op) is checked exhaustively for
/// p <= sampler.max_arity.
Report check_product_structure(const LawvereTheory& theory, std::size_t k, std::size_t m,
                               const Sampler& sampler);

}  // namespace lawvere

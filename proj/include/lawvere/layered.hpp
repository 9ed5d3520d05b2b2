#pragma once

#include <compare>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lawvere/theories.hpp"

namespace lawvere {

/// Theories of a layered element, outermost first.
using Layers = std::vector<const TheorySpec*>;

/// An element of L0 L1 ... L(n-1) X.
///
/// `shape` is a term of layer 0. Below the bottom layer it is a term over the
/// variables of X and `slots` is empty; above it, variable i of `shape` stands
/// for `slots[i]`, an element of L1 ... L(n-1) X.
struct Layered {
  Term shape;
  std::vector<Layered> slots;

  explicit Layered(Term shape_, std::vector<Layered> slots_ = {})
      : shape(std::move(shape_)), slots(std::move(slots_)) {}

  friend bool operator==(const Layered& a, const Layered& b);
  friend std::strong_ordering operator<=>(const Layered& a, const Layered& b);
};

/// Canonical representative: every layer normalized in its theory, slots
/// deduplicated, unused slots dropped, slots sorted (and shapes renumbered)
/// by the term order. Two elements are equal iff their canonical forms are.
Layered canonicalize(const Layers& layers, const Layered& e);

/// Reads a term satisfying the layering certificate for `layers`: along every
/// root-to-leaf path the layer index of the operations never decreases.
/// Throws structural_error on violation or unknown symbols. Result is
/// canonical.
Layered from_term(const Layers& layers, const Term& t);

/// Substitutes all layers together into a single term.
Term flatten(const Layered& e);

/// Inserts a trivial layer (the unit) at index `level` in 0..depth. The caller
/// extends `layers` accordingly.
Layered insert_unit(const Layered& e, std::size_t level, std::size_t depth);

/// Multiplication: merges layers `level` and `level + 1`, which must hold the
/// same theory. Result is canonical for the shortened layer list.
Layered merge_layers(const Layers& layers, const Layered& e, std::size_t level);

/// Rewriter for two adjacent layers. The input is canonical with layers
/// (inner, outer) whose bottom variables are opaque atoms; the output has
/// layers (outer, inner) over the same atoms.
using LayerSwap = std::function<Layered(const Layered&)>;

/// Applies `swap` to layers `level`, `level + 1` everywhere in e, treating
/// deeper layers as atoms. `after` is the layer list after the swap.
Layered swap_layers(const Layers& after, const Layered& e, std::size_t level, const LayerSwap& swap);

/// Applies a function X -> Y to the bottom variables.
Layered rename_bottom(const Layered& e, std::span<const std::size_t> f);

/// Number of distinct bottom variables bound, i.e. one past the largest index.
std::size_t bottom_var_bound(const Layered& e);

/// Random element: each layer's shape has depth <= max_depth over at most
/// max_width slots; bottom terms are over k variables. Canonical.
Layered random_layered(const Layers& layers, std::size_t k, std::size_t max_depth,
                       std::size_t max_width, std::mt19937_64& rng);

/// Human-readable nested form, e.g. "a+b[ab; c]" for shape a+b over slots.
std::string describe(const Layered& e);

/// Layer list with entries i and i+1 exchanged.
Layers swapped(Layers layers, std::size_t i);
/// Layer list with entry i+1 removed (after merging i and i+1).
Layers merged(Layers layers, std::size_t i);

}  // namespace lawvere

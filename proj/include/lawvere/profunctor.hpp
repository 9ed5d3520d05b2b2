#pragma once

#include <optional>
#include <random>
#include <vector>

#include "lawvere/category.hpp"
#include "lawvere/report.hpp"

namespace lawvere {

struct TheorySpec;

/// A profunctor C -/-> D, i.e. a functor D^op x C -> Set with finite values.
/// Elements of F(d, c) are 0..size(d, c)-1. A D-morphism u: d' -> d acts by
/// pull(u, c): F(d, c) -> F(d', c); a C-morphism v: c -> c' acts by
/// push(v, d): F(d, c) -> F(d, c'). Functoriality is checked at construction.
class FiniteProfunctor {
 public:
  using Table = std::vector<std::size_t>;

  /// sizes[d * |C| + c]; pulls[u * |C| + c]; pushes[v * |D| + d].
  FiniteProfunctor(CategoryPtr source, CategoryPtr target, std::vector<std::size_t> sizes, std::vector<Table> pulls,
                   std::vector<Table> pushes);

  const CategoryPtr& source() const { return source_; }
  const CategoryPtr& target() const { return target_; }
  std::size_t size(std::size_t d, std::size_t c) const { return sizes_[d * source_->object_count() + c]; }
  std::size_t pull(std::size_t u, std::size_t c, std::size_t x) const {
    return pulls_[u * source_->object_count() + c].at(x);
  }
  std::size_t push(std::size_t v, std::size_t d, std::size_t x) const {
    return pushes_[v * target_->object_count() + d].at(x);
  }
  std::size_t total() const;
  const std::vector<std::size_t>& sizes() const { return sizes_; }

 private:
  CategoryPtr source_, target_;
  std::vector<std::size_t> sizes_;
  std::vector<Table> pulls_, pushes_;
};

/// Hom profunctor C -/-> C, the identity for composition.
FiniteProfunctor hom_profunctor(const CategoryPtr& c);
/// F_*(d, c) = D(d, F c) for a functor F: C -> D.
FiniteProfunctor representable(const FiniteFunctor& f);

/// (G o F)(e, c) = coend over d of G(e, d) x F(d, c), computed as a
/// union-find quotient. Classes are numbered by their least generator
/// (d, g, f) in lexicographic order.
FiniteProfunctor compose_prof(const FiniteProfunctor& g, const FiniteProfunctor& f);

/// Family of bijections sigma[d * |C| + c]: P(d, c) -> Q(d, c) natural in
/// both variables, or nothing.
using ProfIso = std::vector<std::vector<std::size_t>>;
std::optional<ProfIso> prof_iso(const FiniteProfunctor& p, const FiniteProfunctor& q);
/// Associativity of compose_prof and the two unit laws, up to natural
/// isomorphism, on `triples` random triples F, G, H over categories drawn from
/// `pool` (categories::random_small when empty), and agreement of
/// representable composition with (g o f)_* for random composable functors.
Report check_composition_laws(const std::vector<CategoryPtr>& pool, std::size_t triples, std::uint64_t seed);

/// Checks that sigma is a natural isomorphism P -> Q.
bool is_natural_iso(const FiniteProfunctor& p, const FiniteProfunctor& q, const ProfIso& sigma);

/// Same profunctor with F(d, c) relabelled along perms[d * |C| + c].
FiniteProfunctor relabel(const FiniteProfunctor& p, const ProfIso& perms);

/// A few free generators followed by a quotient by random relations, closed
/// under the actions. Entries stay small (at most `max_entry` elements per
/// generator before quotienting).
FiniteProfunctor random_profunctor(const CategoryPtr& c, const CategoryPtr& d, std::mt19937_64& rng,
                                   std::size_t max_generators = 2);

/// A span X0 <-s- apex -t-> Y0 of finite sets.
struct SpanRep {
  std::size_t apex = 0;
  std::vector<std::size_t> s, t;
};

/// A profunctor C -/-> D stored as a span C0 <- M -> D0 with a left action of
/// D1 and a right action of C1: left[u * apex + x] defined when t(x) =
/// target(u), right[v * apex + x] when s(x) = source(v); npos otherwise.
struct BimoduleRep {
  CategoryPtr right_category;  // C
  CategoryPtr left_category;   // D
  SpanRep span;
  std::vector<std::size_t> left, right;
};

BimoduleRep to_bimodule(const FiniteProfunctor& p);
FiniteProfunctor to_profunctor(const BimoduleRep& b);
/// Unit, associativity and commutation of the two actions, exhaustively.
Report check_bimodule(const BimoduleRep& b);
/// Tensor N (x)_D M of bimodules as a coequalizer of spans.
BimoduleRep tensor(const BimoduleRep& n, const BimoduleRep& m);

/// A monad in Mod(Span) on the category X: an X-X bimodule M with unit
/// eta: X -> M and multiplication M (x) M -> M. Elements of M(a, b) are read
/// as arrows a -> b; mult(x, y) is "y after x".
struct SpanMonad {
  CategoryPtr base;
  std::vector<std::size_t> sizes;                // sizes[a * |X| + b]
  std::vector<std::size_t> unit;                 // per arrow u: a -> b, an element of M(a, b)
  std::vector<std::vector<std::size_t>> mult;    // mult[(a * |X| + b) * |X| + c][x * |M(b,c)| + y]

  std::size_t size(std::size_t a, std::size_t b) const { return sizes[a * base->object_count() + b]; }
  std::size_t multiply(std::size_t a, std::size_t b, std::size_t c, std::size_t x, std::size_t y) const;
};

/// Monad axioms, and the induced actions forming a bimodule.
Report check_span_monad(const SpanMonad& m);
/// The category A with A(a, b) = M(a, b) and the functor X -> A given by the
/// unit. Throws structural_error if the monad axioms fail.
FiniteFunctor monad_to_functor(const SpanMonad& m);
/// The inverse construction for an identity-on-objects functor.
SpanMonad functor_to_monad(const FiniteFunctor& j);
/// Hom tables of a Lawvere theory with finite hom-sets on the given arities,
/// as a monad on F^op restricted to them.
SpanMonad theory_monad(const TheorySpec& theory, const std::vector<std::size_t>& arities, std::size_t size_bound);

}  // namespace lawvere

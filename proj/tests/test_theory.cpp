#include <set>

#include "doctest.h"
#include "generators.hpp"
#include "lawvere/distlaw.hpp"
#include "lawvere/term_text.hpp"

using namespace lawvere;

namespace {

TheoryMorphism random_normal(gen::Rng& rng, const TheorySpec& theory, std::size_t p, std::size_t m) {
  return make_morphism(theory, p, gen::terms(rng, theory.signature, m, p, 2));
}

}  // namespace

TEST_CASE("theory: base functions") {
  auto f = BaseFunction(2, 3, {2, 0});
  auto g = BaseFunction(3, 1, {0, 0, 0});
  CHECK(compose(g, f) == BaseFunction(2, 1, {0, 0}));
  CHECK(all_functions(2, 3).size() == 9);
  CHECK(all_functions(0, 3).size() == 1);
  CHECK(all_functions(2, 0).empty());
  CHECK_THROWS_AS(BaseFunction(2, 2, {0, 2}), structural_error);
}

TEST_CASE("theory: composition is associative and unital") {
  gen::Rng rng(21);
  for (const auto& theory : {builtin::monoid(), builtin::abelian_group(), builtin::ring()}) {
    for (int s = 0; s < 60; ++s) {
      const std::size_t a = 1 + gen::below(rng, 3), b = 1 + gen::below(rng, 3), c = 1 + gen::below(rng, 3),
                        d = 1 + gen::below(rng, 2);
      auto f = random_normal(rng, theory, a, b);
      auto g = random_normal(rng, theory, b, c);
      auto h = random_normal(rng, theory, c, d);
      CHECK(compose(theory, h, compose(theory, g, f)) == compose(theory, compose(theory, h, g), f));
      CHECK(compose(theory, f, identity_morphism(a)) == f);
      CHECK(compose(theory, identity_morphism(b), f) == f);
    }
  }
}

TEST_CASE("theory: basic morphisms are contravariant in functions") {
  const auto monoid = builtin::monoid();
  for (std::size_t n = 0; n <= 3; ++n) {
    for (std::size_t m = 0; m <= 3; ++m) {
      for (std::size_t p = 0; p <= 3; ++p) {
        for (const auto& alpha : all_functions(m, n)) {
          for (const auto& beta : all_functions(p, m)) {
            CHECK(basic_morphism(compose(alpha, beta)) ==
                  compose(monoid, basic_morphism(beta), basic_morphism(alpha)));
          }
        }
      }
    }
  }
}

TEST_CASE("theory: projections and diagonals") {
  auto proj = basic_morphism(BaseFunction(1, 3, {0}));
  CHECK(proj.source == 3);
  CHECK(proj.target == 1);
  CHECK(proj.components == std::vector<Term>{Term::var(0)});
  auto diag = basic_morphism(BaseFunction(3, 1, {0, 0, 0}));
  CHECK(diag.source == 1);
  CHECK(diag.target == 3);
  CHECK(diag.components == std::vector<Term>(3, Term::var(0)));
}

TEST_CASE("theory: composite 3 -> 2 -> 1 in the monoid theory") {
  const auto monoid = builtin::monoid();
  auto f = make_morphism(monoid, 3, {parse_term("abc", monoid, 3), parse_term("ab^2c^2", monoid, 3)});
  auto g = make_morphism(monoid, 2, {parse_term("a^2b", monoid, 2)});
  auto h = compose(monoid, g, f);
  CHECK(h.source == 3);
  CHECK(h.target == 1);
  CHECK(print_term(h.components.at(0)) == "abcabcab^2c^2");
  CHECK_THROWS_AS(compose(monoid, f, f), structural_error);
}

TEST_CASE("theory: hom(k, 1) is the set of normal forms") {
  // Independent count: distinct normal forms among all raw terms.
  for (const auto& theory : {builtin::monoid(), builtin::pointed(), builtin::abelian_group()}) {
    for (std::size_t k = 0; k <= 2; ++k) {
      std::set<Term> normal;
      for (const auto& t : enumerate_raw_terms(theory.signature, k, 5)) {
        Term n = normalize(theory, t);
        if (n.size() <= 5) normal.insert(n);
      }
      auto listed = enumerate_terms(theory, k, 5);
      CHECK(std::set<Term>(listed.begin(), listed.end()) == normal);
    }
  }
}

TEST_CASE("theory: product structure") {
  Sampler s;
  s.samples = 500;
  auto monoid = check_product_structure(lawvere_theory(builtin::monoid_composite()), 2, 1, s);
  CHECK(monoid.ok());
  CHECK(monoid.sample_count >= 500);
  auto fop = check_product_structure(lawvere_theory(builtin::identity()), 1, 2, s);
  CHECK(fop.ok());
  auto affine = check_product_structure(affine_variant(builtin::monoid()), 1, 1, s);
  CHECK_FALSE(affine.ok());
  CHECK_FALSE(affine.failures.empty());
}

TEST_CASE("theory: pairing and projections") {
  const auto ring = builtin::ring();
  auto f = make_morphism(ring, 2, {parse_term("ab", ring, 2)});
  auto g = make_morphism(ring, 2, {parse_term("a+b", ring, 2), parse_term("b", ring, 2)});
  auto fg = pairing(f, g);
  CHECK(fg.target == 3);
  CHECK(compose(ring, first_projection(1, 2), fg) == f);
  CHECK(compose(ring, second_projection(1, 2), fg) == g);
}

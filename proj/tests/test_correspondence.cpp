#include <set>

#include "doctest.h"
#include "lawvere/correspondence.hpp"
#include "lawvere/term_text.hpp"
#include "oracles.hpp"

using namespace lawvere;

namespace {

Term point() { return Term::constant(ops::pt); }

}  // namespace

TEST_CASE("phi: hom-sets are tuples of operations") {
  auto t = phi(fragments::pointed(), 3);
  CHECK(t.operations(2).size() == 3);
  CHECK(t.hom_count(2, 3) == 27);
  CHECK(t.hom(2, 3).size() == 27);
  CHECK(t.hom(1, 0).size() == 1);
  CHECK_THROWS_AS(phi(fragments::pointed(), 5), structural_error);
  CHECK_THROWS_AS(t.operations(4), structural_error);
}

TEST_CASE("phi: the tables are categories with basic morphisms") {
  Sampler s;
  s.samples = 200;
  for (const auto& f : {fragments::identity(), fragments::pointed(), fragments::free_monoid(2)}) {
    auto r = check_theory_table(phi(f, 3), s);
    CHECK_MESSAGE(r.ok(), f.name);
  }
  auto broken = fragments::free_monoid(2);
  broken.bind_fn = [](const Term& t, std::span<const Term>) { return t; };
  CHECK_FALSE(check_theory_table(phi(broken, 2), s).ok());
}

TEST_CASE("phi: free monoid hom(2, 1) up to two letters") {
  auto ops2 = phi(fragments::free_monoid(2), 2).operations(2);
  std::set<Term> listed(ops2.begin(), ops2.end());
  std::set<Term> words;
  for (const auto& w : oracle::words(2, 2)) words.insert(parse_term(w.empty() ? "1" : w, builtin::monoid(), 2));
  CHECK(listed == words);
  CHECK(listed.size() == 7);
}

TEST_CASE("phi: transformations act functorially") {
  const auto id = fragments::identity();
  const auto pt = fragments::pointed();
  Transformation include = [](std::size_t, const Term& t) { return t; };
  Transformation collapse = [](std::size_t, const Term&) { return point(); };
  Transformation both = [&](std::size_t n, const Term& t) { return collapse(n, include(n, t)); };
  CHECK(check_naturality(id, pt, include, 3).ok());
  CHECK(check_naturality(pt, pt, collapse, 3).ok());

  auto table = phi(id, 3);
  auto lhs = phi_map(collapse), mid = phi_map(include), rhs = phi_map(both);
  for (std::size_t n = 0; n <= 3; ++n) {
    for (std::size_t m = 0; m <= 3; ++m) {
      for (const auto& f : table.hom(n, m)) CHECK(lhs(mid(f)) == rhs(f));
    }
  }
}

TEST_CASE("phi: a non-natural family is caught") {
  const auto pt = fragments::pointed();
  Transformation crooked = [](std::size_t, const Term& t) {
    return t.is_var() && t.index() >= 1 ? point() : t;
  };
  auto r = check_naturality(pt, pt, crooked, 2);
  CHECK_FALSE(r.ok());
  CHECK(r.failures.front()["kind"] == "naturality");
}

TEST_CASE("phi: maps of tables come from transformations") {
  const auto id = fragments::identity();
  const auto pt = fragments::pointed();
  Transformation include = [](std::size_t, const Term& t) { return t; };
  CHECK(check_fullness(id, pt, phi_map(include), 3).ok());
  // Natural, but not a monad map: identities go to tuples of points.
  CHECK_FALSE(check_fullness(pt, pt, phi_map([](std::size_t, const Term&) { return point(); }), 3).ok());

  // Reverses tuples: preserves nothing.
  TableMap reverse = [](const TheoryMorphism& f) {
    TheoryMorphism g = f;
    std::reverse(g.components.begin(), g.components.end());
    return g;
  };
  CHECK_FALSE(check_fullness(pt, pt, reverse, 3).ok());
}

TEST_CASE("monad from theory: pointed sets on two elements") {
  auto mv = monad_from_theory(phi(fragments::pointed(), 3), 2, 2);
  CHECK(mv.elements.size() == 3);
  CHECK(mv.well_defined);
  CHECK(mv.stable);
  CHECK(mv.stable_from <= 2);
  std::set<std::string> printed;
  for (const auto& e : mv.elements) printed.insert(print_term(e));
  CHECK(printed == std::set<std::string>{"1", "a", "b"});
}

TEST_CASE("monad from theory: stabilization bound") {
  // The largest operation arity is 2 for monoids and 0 for the others.
  for (std::size_t x = 0; x <= 3; ++x) {
    auto pointed = monad_from_theory(phi(fragments::pointed(), 4), x, 3);
    CHECK(pointed.stable);
    CHECK(pointed.stable_from <= x);
    auto words = monad_from_theory(phi(fragments::free_monoid(2), 4), x, 3);
    CHECK(words.stable);
    CHECK(words.stable_from <= x + 2);
  }
}

TEST_CASE("round trip: built-in fragments") {
  for (const auto& f : {fragments::identity(), fragments::pointed(), fragments::free_monoid(2)}) {
    auto r = roundtrip_check(f, 3);
    CHECK_MESSAGE(r.ok(), f.name);
    for (const auto& [k, v] : r.stability) CHECK(v);
    CHECK(r.details["cells"].size() == 4);
  }
  auto words = roundtrip_check(fragments::free_monoid(2), 3);
  for (const auto& cell : words.details["cells"]) {
    const std::size_t x = cell["x"];
    CHECK(cell["classes"] == oracle::words(x, 2).size());
  }
}

TEST_CASE("round trip: bounded ring polynomials in one variable") {
  auto f = fragments::from_theory(builtin::ring(), 4, 2);
  auto r = roundtrip_check(f, 1, 1);
  CHECK(r.ok());
  auto mv = monad_from_theory(phi(f, 2), 1, 1);
  std::set<oracle::Poly> polys;
  for (const auto& e : mv.elements) polys.insert(oracle::poly(e));
  CHECK(polys.size() == mv.elements.size());
  CHECK(mv.elements.size() == f.elements(1).size());
}

TEST_CASE("composite monads: pointed sets over semigroups") {
  auto frag = composite_fragment(laws::pointed_semigroup(), 7, 2);
  auto elems = frag.elements(2);
  for (std::size_t len = 0; len <= 4; ++len) {
    std::set<Term> bounded;
    for (const auto& t : elems) {
      if (leaf_count(t) <= len) bounded.insert(t);
    }
    CHECK(bounded.size() == oracle::words(2, len).size());
  }
  Sampler s;
  s.samples = 150;
  CHECK(composite_correspondence_check(laws::pointed_semigroup(), 3, 5, s).ok());
}

TEST_CASE("composite monads: the ring against polynomial substitution") {
  const auto law = laws::ring();
  auto frag = composite_fragment(law, 5, 2);
  auto e1 = frag.elements(1), e2 = frag.elements(2);
  std::set<oracle::Poly> polys;
  for (const auto& t : e2) polys.insert(oracle::poly(t));
  CHECK(polys.size() == e2.size());
  for (std::size_t i = 0; i < e2.size(); i += 7) {
    for (std::size_t j = 0; j < e1.size(); j += 3) {
      std::vector<Term> sigma{e1[j], e1[(j + 1) % e1.size()]};
      CHECK(oracle::poly(frag.bind(e2[i], sigma)) ==
            oracle::substitute(oracle::poly(e2[i]), {oracle::poly(sigma[0]), oracle::poly(sigma[1])}));
    }
  }
  Sampler s;
  s.samples = 150;
  auto r = composite_correspondence_check(law, 3, 5, s);
  CHECK(r.ok());
  CHECK(r.details["productStructure"] == true);
}

TEST_CASE("istar: pointed monad") {
  auto r = istar_composite(fragments::pointed(), 3, 3);
  CHECK(r.ok());
  bool seen = false;
  for (const auto& cell : r.details["cells"]) {
    if (cell["k"] == 2 && cell["n"] == 1) {
      CHECK(cell["classes"] == 4);
      seen = true;
    }
  }
  CHECK(seen);
  CHECK(r.stability.at("universe+1"));
  CHECK(istar_composite(fragments::free_monoid(2), 2, 2).ok());
}

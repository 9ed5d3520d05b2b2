#include <set>

#include "doctest.h"
#include "generators.hpp"
#include "lawvere/distlaw.hpp"
#include "lawvere/term_text.hpp"
#include "oracles.hpp"

using namespace lawvere;

namespace {

std::vector<TheorySpec> simple_theories() {
  return {builtin::monoid(), builtin::semigroup(), builtin::abelian_group(), builtin::pointed(),
          builtin::commutative_monoid(), builtin::identity()};
}

}  // namespace

TEST_CASE("terms: construction and accessors") {
  Term x = Term::var(2);
  CHECK(x.is_var());
  CHECK(x.index() == 2);
  CHECK(x.var_bound() == 3);
  Term t = Term::app(ops::mul, {Term::var(0), Term::constant(ops::one)});
  CHECK(t.size() == 3);
  CHECK(t.depth() == 1);
  CHECK(to_prefix(t) == "mul(x0,one)");
  CHECK_THROWS_AS(Term::app(ops::mul, {Term::var(0)}), structural_error);
  CHECK_THROWS_AS(substitute(t, 2, std::vector<Term>{Term::var(0)}), structural_error);
}

TEST_CASE("terms: substitution is associative") {
  gen::Rng rng(11);
  const std::vector<OperationSymbol> sig{ops::mul, ops::one, ops::add, ops::neg};
  for (int s = 0; s < 300; ++s) {
    const std::size_t k = 1 + gen::below(rng, 3), m = 1 + gen::below(rng, 3), p = gen::below(rng, 3);
    Term t = gen::term(rng, sig, k, 3);
    auto sigma = gen::terms(rng, sig, k, m, 2);
    auto tau = gen::terms(rng, sig, m, p, 2);
    if (p == 0) {
      tau.clear();
      for (auto& u : sigma) u = Term::constant(ops::one);
    }
    CHECK(substitute(substitute(t, sigma), tau) == substitute(t, substitute_all(sigma, tau)));
  }
}

TEST_CASE("terms: renaming is substitution by variables") {
  gen::Rng rng(3);
  for (int s = 0; s < 100; ++s) {
    Term t = gen::term(rng, {ops::mul, ops::one}, 3, 3);
    auto f = gen::function(rng, 3, 4);
    std::vector<Term> sigma;
    for (auto v : f.table) sigma.push_back(Term::var(v));
    CHECK(rename(t, f.table) == substitute(t, sigma));
  }
}

TEST_CASE("terms: normalizers are idempotent and congruent") {
  gen::Rng rng(5);
  for (const auto& theory : simple_theories()) {
    for (int s = 0; s < 100; ++s) {
      Term t = gen::term(rng, theory.signature, 3, 3);
      Term n = normalize(theory, t);
      CHECK(normalize(theory, n) == n);
      auto sigma = gen::terms(rng, theory.signature, 3, 2, 2);
      std::vector<Term> sigma_n;
      for (const auto& u : sigma) sigma_n.push_back(normalize(theory, u));
      CHECK(normalize(theory, substitute(t, sigma)) == normalize(theory, substitute(n, sigma_n)));
    }
  }
}

TEST_CASE("terms: monoid normal forms agree with words") {
  gen::Rng rng(8);
  const auto monoid = builtin::monoid();
  for (int s = 0; s < 200; ++s) {
    Term t = gen::term(rng, monoid.signature, 3, 4);
    auto p = oracle::poly(t);
    REQUIRE(p.size() == 1);
    CHECK(word_of(normalize(monoid, t)) == p.begin()->first);
  }
}

TEST_CASE("terms: enumeration is duplicate-free and normal") {
  for (const auto& theory : simple_theories()) {
    for (std::size_t k = 0; k <= 2; ++k) {
      auto list = enumerate_terms(theory, k, 5);
      std::set<Term> seen(list.begin(), list.end());
      CHECK(seen.size() == list.size());
      for (const auto& t : list) {
        CHECK(normalize(theory, t) == t);
        CHECK(t.size() <= 5);
        CHECK(t.var_bound() <= k);
      }
    }
  }
}

TEST_CASE("terms: monoid words of length at most two over two letters") {
  auto list = enumerate_terms(builtin::monoid(), 2, 3);
  std::set<std::string> printed;
  for (const auto& t : list) printed.insert(print_term(t));
  CHECK(printed == std::set<std::string>{"1", "a", "b", "a^2", "ab", "ba", "b^2"});
}

TEST_CASE("terms: the pointed theory has two unary operations") {
  for (std::size_t bound : {1, 3, 6}) {
    auto list = enumerate_terms(builtin::pointed(), 1, bound);
    CHECK(list == std::vector<Term>{Term::var(0), Term::constant(ops::pt)});
  }
}

TEST_CASE("terms: substituting abc and ab^2c^2 into x^2y") {
  const auto monoid = builtin::monoid();
  Term t = parse_term("a^2b", monoid, 2);
  std::vector<Term> sigma{parse_term("abc", monoid, 3), parse_term("ab^2c^2", monoid, 3)};
  Term r = normalize(monoid, substitute(t, 2, sigma));
  CHECK(r == parse_term("abcabcab^2c^2", monoid, 3));
  CHECK(print_term(r) == "abcabcab^2c^2");
}

TEST_CASE("text: print inverts parse on normal forms") {
  for (const auto& theory : simple_theories()) {
    for (const auto& t : enumerate_terms(theory, 3, 5)) {
      CHECK(parse_term(print_term(t), theory, 3) == t);
    }
  }
  for (const auto& t : enumerate_terms(builtin::ring(), 2, 6)) {
    CHECK(parse_term(print_term(t), builtin::ring(), 2) == t);
  }
}

TEST_CASE("text: ring expressions") {
  const auto ring = builtin::ring();
  CHECK(parse_term("a", builtin::monoid(), 1) == Term::var(0));
  Term t = parse_term("ab+c", ring, 3);
  CHECK(print_term(t) == "ab+c");
  CHECK(t.var_bound() == 3);
  CHECK(parse_term("(a+b)(c+d)", ring, 4) == parse_term("ac+bc+ad+bd", ring, 4));
  CHECK(parse_term("a*b", ring, 2) == parse_term("ab", ring, 2));
  CHECK(parse_term("2a-a", ring, 1) == Term::var(0));
  CHECK(parse_term("#3", ring, 4) == Term::var(3));
}

TEST_CASE("text: errors carry a position") {
  const auto ring = builtin::ring();
  try {
    parse_term("a+)", ring, 1);
    FAIL("expected a parse error");
  } catch (const parse_error& e) {
    CHECK(e.position() == 2);
  }
  CHECK_THROWS_AS(parse_term("abc", ring, 2), structural_error);
  CHECK_THROWS_AS(parse_term("", ring, 2), structural_error);
  CHECK_THROWS_AS(parse_term("a+b", builtin::monoid(), 2), structural_error);
}

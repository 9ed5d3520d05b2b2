#include <set>

#include "doctest.h"
#include "generators.hpp"
#include "lawvere/distlaw.hpp"
#include "lawvere/monad.hpp"
#include "lawvere/term_text.hpp"
#include "oracles.hpp"

using namespace lawvere;

namespace {

long long evaluate_int(const Term& t, const std::vector<long long>& at) {
  if (t.is_var()) return at.at(t.index());
  const auto& id = t.op().id;
  auto args = t.args();
  if (id == "mul") return evaluate_int(args[0], at) * evaluate_int(args[1], at);
  if (id == "add") return evaluate_int(args[0], at) + evaluate_int(args[1], at);
  if (id == "neg") return -evaluate_int(args[0], at);
  if (id == "one") return 1;
  if (id == "zero") return 0;
  throw structural_error("no integer reading of " + id);
}

bool same_on_integers(const Term& a, const Term& b, std::size_t k, gen::Rng& rng) {
  std::uniform_int_distribution<long long> value(-5, 5);
  for (int s = 0; s < 50; ++s) {
    std::vector<long long> at(k);
    for (auto& v : at) v = value(rng);
    if (evaluate_int(a, at) != evaluate_int(b, at)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("layered: canonical forms") {
  const auto ring = builtin::ring();
  const auto law = laws::ring();
  const Layers ts = law.output_layers();
  Layered e = from_term(ts, parse_raw_term("ab+ab+c", ring, 3));
  CHECK(e.slots.size() == 2);
  CHECK(canonicalize(ts, e) == e);
  CHECK(flatten(e) == parse_term("ab+ab+c", ring, 3));
  CHECK_THROWS_AS(from_term(ts, parse_raw_term("(a+b)c", ring, 3)), structural_error);
  CHECK(describe(e).find('[') != std::string::npos);
}

TEST_CASE("law: ring expansion of (a+b)(c+d)") {
  const auto law = laws::ring();
  Term out = apply_law(law, parse_raw_term("(a+b)(c+d)", builtin::ring(), 4));
  CHECK(out == parse_term("ac+bc+ad+bd", builtin::ring(), 4));
}

TEST_CASE("law: (a+b)c agrees with ac+bc on integers") {
  gen::Rng rng(4);
  const auto law = laws::ring();
  Term out = apply_law(law, parse_raw_term("(a+b)c", builtin::ring(), 3));
  CHECK(same_on_integers(out, parse_raw_term("ac+bc", builtin::ring(), 3), 3, rng));
  CHECK(oracle::poly(out) == oracle::poly(parse_raw_term("ac+bc", builtin::ring(), 3)));
}

TEST_CASE("law: the ring law is sound for polynomials") {
  gen::Rng rng(9);
  const auto law = laws::ring();
  for (int s = 0; s < 150; ++s) {
    Layered e = random_layered(law.input_layers(), 3, 2, 3, rng);
    Term before = flatten(e);
    Term after = flatten(apply_law(law, e));
    CHECK(oracle::poly(before) == oracle::poly(after));
    CHECK(same_on_integers(before, after, 3, rng));
  }
}

TEST_CASE("law: output is already canonically layered") {
  gen::Rng rng(10);
  for (const auto& law : {laws::ring(), laws::pointed_semigroup(), laws::pointed_abelian()}) {
    for (int s = 0; s < 100; ++s) {
      Layered e = random_layered(law.input_layers(), 3, 2, 3, rng);
      Layered out = apply_law(law, e);
      CHECK(from_term(law.output_layers(), flatten(out)) == out);
      CHECK(canonicalize(law.output_layers(), out) == out);
    }
  }
}

TEST_CASE("law: Beck diagrams for the built-in laws") {
  Sampler s;
  s.samples = 500;
  auto ring = check_law_axioms(laws::ring(), s);
  CHECK(ring.ok());
  for (const auto& d : ring.diagrams) CHECK(d.sample_count == 500);
  for (const auto& law : {laws::semigroup_ring(), laws::pointed_semigroup(), laws::pointed_abelian(),
                          laws::identity(builtin::monoid(), builtin::identity())}) {
    Sampler small;
    small.samples = 150;
    CHECK_MESSAGE(check_law_axioms(law, small).ok(), law.name);
  }
}

TEST_CASE("law: the mutant fails the outer multiplication square") {
  auto r = check_law_axioms(laws::mutant_ring(), Sampler{});
  CHECK_FALSE(r.ok());
  const auto& mult = r.diagram("mult-T");
  REQUIRE_FALSE(mult.ok());
  const auto& w = mult.failures.front();
  CHECK(w.contains("input"));
  CHECK(w.contains("leftValue"));
  CHECK(w.contains("rightValue"));
  CHECK(w["leftValue"] != w["rightValue"]);
  CHECK_THROWS_AS(composite_theory(laws::mutant_ring()), structural_error);
}

TEST_CASE("law: sending the point to zero breaks the outer unit") {
  auto r = check_law_axioms(laws::pointed_abelian_zero(), Sampler{});
  CHECK_FALSE(r.diagram("unit-T").ok());
  CHECK(r.diagram("mult-S").ok());
}

TEST_CASE("law: vacuous check with no samples") {
  Sampler none;
  none.samples = 0;
  auto r = check_law_axioms(laws::ring(), none);
  CHECK(r.ok());
  CHECK(r.summary.sample_count == 0);
}

TEST_CASE("composite: normal forms of the ring are integer polynomials") {
  const auto ring = builtin::ring();
  gen::Rng rng(12);
  for (int s = 0; s < 200; ++s) {
    Term t = gen::term(rng, ring.signature, 3, 3);
    Term n = normalize(ring, t);
    CHECK(oracle::poly(n) == oracle::poly(t));
    CHECK(normalize(ring, n) == n);
  }
  auto list = enumerate_terms(ring, 2, 6);
  std::set<oracle::Poly> polys;
  for (const auto& t : list) polys.insert(oracle::poly(t));
  CHECK(polys.size() == list.size());
}

TEST_CASE("composite: normalizers are idempotent and congruent") {
  gen::Rng rng(13);
  for (const auto& theory : {builtin::ring(), builtin::monoid_composite(), builtin::ring3()}) {
    for (int s = 0; s < 80; ++s) {
      Term t = gen::term(rng, theory.signature, 2, 3);
      Term n = normalize(theory, t);
      CHECK(normalize(theory, n) == n);
      auto sigma = gen::terms(rng, theory.signature, 2, 2, 2);
      std::vector<Term> sigma_n;
      for (const auto& u : sigma) sigma_n.push_back(normalize(theory, u));
      CHECK(normalize(theory, substitute(t, sigma)) == normalize(theory, substitute(n, sigma_n)));
    }
  }
}

TEST_CASE("composite: pointed sets over semigroups give monoids") {
  const auto monoid = builtin::monoid_composite();
  std::set<std::string> printed;
  for (const auto& t : enumerate_terms(monoid, 1, 5)) printed.insert(print_term(t));
  CHECK(printed == std::set<std::string>{"1", "a", "a^2", "a^3"});
  for (std::size_t len = 0; len <= 5; ++len) {
    std::set<Term> bounded;
    for (const auto& t : enumerate_terms(monoid, 2, len == 0 ? 1 : 2 * len - 1)) {
      if (leaf_count(t) <= len) bounded.insert(t);
    }
    std::set<Term> words;
    for (const auto& w : oracle::words(2, len)) words.insert(parse_term(w.empty() ? "1" : w, monoid, 2));
    CHECK(bounded == words);
    CHECK(bounded.size() == (std::size_t{1} << (len + 1)) - 1);
  }
}

TEST_CASE("series: Yang-Baxter") {
  Sampler s;
  s.samples = 300;
  auto ring = check_yang_baxter(laws::ring_series(), s);
  CHECK(ring.ok());
  CHECK(ring.sample_count == 900);
  Sampler fewer;
  fewer.samples = 100;
  CHECK(check_yang_baxter(laws::identity_series(), fewer).ok());
  auto mutant = check_yang_baxter(laws::mutant_ring_series(), s);
  CHECK_FALSE(mutant.ok());
  CHECK(mutant.failures.front().contains("input"));
}

TEST_CASE("series: the three-layer composite is the ring without unit") {
  const auto ring3 = builtin::ring3();
  gen::Rng rng(14);
  for (int s = 0; s < 100; ++s) {
    Term t = gen::term(rng, ring3.signature, 2, 3);
    if (occurs_op(t, "pt")) continue;
    CHECK(oracle::poly(normalize(ring3, t)) == oracle::poly(t));
  }
}

#include "doctest.h"
#include "generators.hpp"
#include "lawvere/distlaw.hpp"
#include "lawvere/factorization.hpp"
#include "lawvere/term_text.hpp"

using namespace lawvere;

namespace {

FactorizationPair pair_of(const TheorySpec& composite, std::size_t k, const std::vector<std::string>& left,
                          const std::string& right) {
  std::vector<Term> l;
  for (const auto& s : left) l.push_back(parse_term(s, inner_layer(composite), k));
  TheoryMorphism lm{k, left.size(), l};
  TheoryMorphism rm{left.size(), 1, {parse_term(right, outer_layer(composite), left.size())}};
  return make_factorization(composite, lm, rm);
}

FactorizationPair random_pair(gen::Rng& rng, const TheorySpec& composite, std::size_t k) {
  const auto& a = inner_layer(composite);
  const auto& b = outer_layer(composite);
  const std::size_t middle = 1 + gen::below(rng, 3);
  TheoryMorphism left{k, middle, gen::terms(rng, a.signature, middle, k, 2)};
  TheoryMorphism right{middle, 1, gen::terms(rng, b.signature, 1, middle, 2)};
  return make_factorization(composite, left, right);
}

// Same morphism, different middle: a spurious component, a duplicated one,
// or a permutation.
FactorizationPair perturb(gen::Rng& rng, const TheorySpec& composite, const FactorizationPair& p) {
  const auto& a = inner_layer(composite);
  const std::size_t n = p.middle;
  std::vector<Term> left = p.left.components;
  std::vector<std::size_t> rename_to(n);
  switch (gen::below(rng, 3)) {
    case 0:
      left.push_back(gen::term(rng, a.signature, p.left.source, 2));
      for (std::size_t i = 0; i < n; ++i) rename_to[i] = i;
      break;
    case 1: {
      std::size_t i = gen::below(rng, n);
      left.push_back(left[i]);
      for (std::size_t j = 0; j < n; ++j) rename_to[j] = j == i ? n : j;
      break;
    }
    default: {
      for (std::size_t i = 0; i < n; ++i) rename_to[i] = n - 1 - i;
      std::vector<Term> reversed(left.rbegin(), left.rend());
      left = reversed;
    }
  }
  TheoryMorphism l{p.left.source, left.size(), left};
  TheoryMorphism r{left.size(), p.right.target, {}};
  for (const auto& t : p.right.components) r.components.push_back(rename(t, rename_to));
  return make_factorization(composite, l, r);
}

}  // namespace

TEST_CASE("factorize: ab+c") {
  const auto ring = builtin::ring();
  auto f = make_morphism(ring, 3, {parse_term("ab+c", ring, 3)});
  auto p = factorize(ring, f);
  CHECK(p.middle == 2);
  CHECK(print_term(p.left.components[0]) == "ab");
  CHECK(print_term(p.left.components[1]) == "c");
  CHECK(print_term(p.right.components[0]) == "a+b");
  CHECK(recompose(ring, p) == f);
  auto j = factorization_to_json(p);
  CHECK(j["middle"] == 2);
  CHECK(j["left"] == nlohmann::json{"ab", "c"});
  CHECK(j["right"] == nlohmann::json{"a+b"});
}

TEST_CASE("factorize: a^2+a^2 collapses to one middle coordinate") {
  const auto ring = builtin::ring();
  auto p = factorize(ring, make_morphism(ring, 1, {parse_term("a^2+a^2", ring, 1)}));
  CHECK(p.middle == 1);
  CHECK(print_term(p.left.components[0]) == "a^2");
  CHECK(p.right.components[0] == parse_term("a+a", outer_layer(ring), 1));
}

TEST_CASE("factorize: non-normal input is refused") {
  const auto ring = builtin::ring();
  TheoryMorphism raw{2, 1, {parse_raw_term("(a+b)a", ring, 2)}};
  CHECK_THROWS_AS(factorize(ring, raw), structural_error);
  CHECK_THROWS_AS(inner_layer(builtin::monoid()), structural_error);
}

TEST_CASE("factorize: a section of composition, already canonical") {
  gen::Rng rng(31);
  for (const auto& composite : {builtin::ring(), builtin::monoid_composite()}) {
    for (int s = 0; s < 150; ++s) {
      const std::size_t k = 1 + gen::below(rng, 3), m = 1 + gen::below(rng, 2);
      auto f = make_morphism(composite, k, gen::terms(rng, composite.signature, m, k, 3));
      auto p = factorize(composite, f);
      CHECK(recompose(composite, p) == f);
      CHECK(canonicalize(composite, p) == p);
      auto q = random_pair(rng, composite, k);
      auto cq = canonicalize(composite, q);
      CHECK(canonicalize(composite, cq) == cq);
      CHECK(recompose(composite, cq) == recompose(composite, q));
    }
  }
}

TEST_CASE("zigzag: ab+c and the spurious abc") {
  const auto ring = builtin::ring();
  auto canonical = pair_of(ring, 3, {"ab", "c"}, "a+b");
  auto spurious = pair_of(ring, 3, {"ab", "c", "abc"}, "a+b");
  auto step = find_single_step(ring, spurious, canonical);
  REQUIRE(step);
  CHECK(step->forward);
  CHECK(step->alpha == BaseFunction(2, 3, {0, 1}));
  CHECK(valid_step(ring, spurious, canonical, *step));
  CHECK_FALSE(canonical == spurious);
  CHECK(recompose(ring, canonical) == recompose(ring, spurious));
  auto d = zigzag_equivalent(ring, canonical, spurious, 2);
  CHECK(d.equivalent);
  REQUIRE(d.witness);
  CHECK(d.witness->steps.size() == 1);
}

TEST_CASE("zigzag: a^2+a^2 needs two steps through middle 2") {
  const auto ring = builtin::ring();
  auto wide = pair_of(ring, 1, {"a^2", "a^2", "a"}, "a+b");
  auto narrow = pair_of(ring, 1, {"a^2"}, "2a");
  CHECK_FALSE(find_single_step(ring, wide, narrow));
  CHECK_FALSE(find_single_step(ring, narrow, wide));
  auto d = zigzag_equivalent(ring, wide, narrow, 3);
  REQUIRE(d.witness);
  const auto& w = *d.witness;
  CHECK(w.steps.size() == 2);
  CHECK(w.nodes[1].middle == 2);
  CHECK(w.steps[0].forward);
  CHECK(w.steps[0].alpha == BaseFunction(2, 3, {0, 1}));
  CHECK_FALSE(w.steps[1].forward);
  CHECK(w.steps[1].alpha == BaseFunction(2, 1, {0, 0}));
  CHECK_FALSE(first_invalid_step(ring, w));
  auto constructive = constructive_witness(ring, wide, narrow);
  REQUIRE(constructive);
  CHECK_FALSE(first_invalid_step(ring, *constructive));
}

TEST_CASE("zigzag: a broken chain is caught") {
  const auto ring = builtin::ring();
  auto a = pair_of(ring, 1, {"a^2", "a^2", "a"}, "a+b");
  auto b = pair_of(ring, 1, {"a^2", "a^2"}, "a+b");
  ZigzagWitness w{{a, b}, {ZigzagStep{BaseFunction(2, 3, {1, 2}), true}}};
  CHECK(first_invalid_step(ring, w) == std::optional<std::size_t>(0));
}

TEST_CASE("zigzag: an equivalence relation matching recomposition") {
  gen::Rng rng(32);
  const auto ring = builtin::ring();
  for (int s = 0; s < 60; ++s) {
    const std::size_t k = 1 + gen::below(rng, 2);
    auto p = random_pair(rng, ring, k);
    auto q = perturb(rng, ring, p);
    auto r = perturb(rng, ring, q);
    CHECK(zigzag_equivalent(ring, p, p, 2).equivalent);
    auto pq = zigzag_equivalent(ring, p, q, 3);
    auto qp = zigzag_equivalent(ring, q, p, 3);
    auto qr = zigzag_equivalent(ring, q, r, 3);
    CHECK(pq.equivalent);
    CHECK(qp.equivalent);
    REQUIRE(pq.witness);
    REQUIRE(qr.witness);
    CHECK_FALSE(first_invalid_step(ring, *pq.witness));
    CHECK_FALSE(first_invalid_step(ring, *qp.witness));
    ZigzagWitness chain = *pq.witness;
    chain.nodes.pop_back();
    chain.nodes.insert(chain.nodes.end(), qr.witness->nodes.begin(), qr.witness->nodes.end());
    chain.steps.insert(chain.steps.end(), qr.witness->steps.begin(), qr.witness->steps.end());
    CHECK_FALSE(first_invalid_step(ring, chain));
    CHECK(zigzag_equivalent(ring, p, r, 3).equivalent);

    auto other = random_pair(rng, ring, k);
    CHECK(zigzag_equivalent(ring, p, other, 2).equivalent == (recompose(ring, p) == recompose(ring, other)));
  }
}

TEST_CASE("zigzag: endpoints must agree") {
  const auto ring = builtin::ring();
  auto a = pair_of(ring, 1, {"a"}, "a");
  auto b = pair_of(ring, 2, {"a"}, "a");
  CHECK_THROWS_AS(zigzag_equivalent(ring, a, b, 1), structural_error);
}

TEST_CASE("factorization over F: ring and monoid composites") {
  auto ring = check_fs_over_F(builtin::ring(), 2, 4);
  CHECK(ring.ok());
  CHECK(ring.details["morphisms"].get<std::size_t>() > 100);
  CHECK(ring.details["nonStrict"].get<std::size_t>() > 0);
  CHECK_FALSE(ring.details["nonStrictExample"].is_null());
  auto monoid = check_fs_over_F(builtin::monoid_composite(), 2, 7);
  CHECK(monoid.ok());
}

TEST_CASE("strict factorization: chain and isomorphism pair") {
  auto chain = categories::chain(3);
  std::vector<bool> in_l(chain->arrow_count()), in_r(chain->arrow_count());
  for (std::size_t i = 0; i < chain->arrow_count(); ++i) {
    in_l[i] = chain->is_identity(i) || chain->arrow(i).name == "0<1";
    in_r[i] = chain->is_identity(i) || chain->arrow(i).name == "1<2";
  }
  auto good = check_strict_fs(*chain, in_l, in_r);
  CHECK(good.ok());
  CHECK(good.details["unique"] == true);
  CHECK(good.details["lawChecked"] == true);

  auto iso = categories::iso_pair();
  std::vector<bool> all(iso->arrow_count(), true);
  auto bad = check_strict_fs(*iso, all, all);
  CHECK_FALSE(bad.ok());
  CHECK(bad.details["unique"] == false);

  std::vector<bool> ids(chain->arrow_count());
  for (std::size_t i = 0; i < chain->arrow_count(); ++i) ids[i] = chain->is_identity(i);
  CHECK_FALSE(check_strict_fs(*chain, ids, ids).ok());
}

#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "generators.hpp"
#include "lawvere/profunctor.hpp"
#include "lawvere/theories.hpp"

using namespace lawvere;

TEST_CASE("category: tables are checked") {
  auto chain = categories::chain(3);
  CHECK(chain->object_count() == 3);
  CHECK(chain->arrow_count() == 6);
  auto f = chain->find_arrow("0<1"), g = chain->find_arrow("1<2");
  CHECK(chain->compose(g, f) == chain->find_arrow("0<2"));
  CHECK_THROWS_AS(chain->compose(f, g), structural_error);
  // a non-associative "composition"
  CHECK_THROWS_AS(make_category({"x"}, {{"e", 0, 0}, {"f", 0, 0}},
                                {{"e", "e", "f"}, {"f", "f", "e"}, {"e", "f", "e"}, {"f", "e", "f"}}),
                  structural_error);
  CHECK_NOTHROW(categories::cyclic_group(3));
}

TEST_CASE("category: JSON round trip") {
  for (const auto& c : {categories::chain(3), categories::idempotent(), categories::iso_pair(),
                        categories::parallel_pair(), categories::cyclic_group(3)}) {
    auto j = category_to_json(*c);
    CHECK(j["schemaVersion"] == 1);
    auto back = category_from_json(j);
    CHECK(category_to_json(*back) == j);
  }
  CHECK_THROWS_AS(category_from_json(nlohmann::json{{"objects", {"a"}}, {"morphisms", {{{"name", "f"}}}}}),
                  structural_error);
}

TEST_CASE("functors: composition and enumeration") {
  auto two = categories::chain(2);
  auto three = categories::chain(3);
  auto fs = all_functors(two, three);
  CHECK(fs.size() == 6);  // monotone maps 2 -> 3
  auto id = identity_functor(three);
  for (const auto& f : fs) {
    auto h = compose(id, f);
    CHECK(h.on_arrows == f.on_arrows);
  }
}

TEST_CASE("profunctor: representables are hom-sets") {
  gen::Rng rng(41);
  for (int s = 0; s < 20; ++s) {
    auto c = categories::random_small(rng);
    auto d = categories::random_small(rng);
    auto fs = all_functors(c, d);
    REQUIRE_FALSE(fs.empty());
    const auto& f = fs[gen::below(rng, fs.size())];
    auto rep = representable(f);
    for (std::size_t dd = 0; dd < d->object_count(); ++dd) {
      for (std::size_t cc = 0; cc < c->object_count(); ++cc) {
        CHECK(rep.size(dd, cc) == d->hom(dd, f.on_objects[cc]).size());
      }
    }
  }
}

TEST_CASE("profunctor: composition laws up to isomorphism") {
  auto r = check_composition_laws({}, 50, 7);
  CHECK(r.ok());
  CHECK(r.sample_count >= 150);
  auto chains = check_composition_laws({categories::chain(2), categories::chain(3)}, 20, 8);
  CHECK(chains.ok());
}

TEST_CASE("profunctor: relabelling is found by prof_iso") {
  gen::Rng rng(42);
  for (int s = 0; s < 30; ++s) {
    auto c = categories::random_small(rng);
    auto d = categories::random_small(rng);
    auto p = random_profunctor(c, d, rng);
    ProfIso perms;
    for (auto size : p.sizes()) {
      std::vector<std::size_t> perm(size);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      perms.push_back(perm);
    }
    auto q = relabel(p, perms);
    auto iso = prof_iso(p, q);
    REQUIRE(iso);
    CHECK(is_natural_iso(p, q, *iso));
  }
}

TEST_CASE("profunctor: non-isomorphic tables are told apart") {
  auto c = categories::chain(2);
  auto hom = hom_profunctor(c);
  auto fs = all_functors(c, c);
  for (const auto& f : fs) {
    auto rep = representable(f);
    bool identity = f.on_objects == std::vector<std::size_t>{0, 1};
    CHECK(prof_iso(rep, hom).has_value() == identity);
  }
}

TEST_CASE("bimodules: axioms, round trip and tensor") {
  gen::Rng rng(43);
  for (int s = 0; s < 30; ++s) {
    auto a = categories::random_small(rng);
    auto b = categories::random_small(rng);
    auto c = categories::random_small(rng);
    auto f = random_profunctor(a, b, rng);
    auto g = random_profunctor(b, c, rng);
    auto bf = to_bimodule(f);
    auto bg = to_bimodule(g);
    CHECK(check_bimodule(bf).ok());
    CHECK(prof_iso(to_profunctor(bf), f).has_value());
    auto t = tensor(bg, bf);
    CHECK(check_bimodule(t).ok());
    CHECK(prof_iso(to_profunctor(t), compose_prof(g, f)).has_value());
  }
}

TEST_CASE("span monads: functor to monad and back") {
  gen::Rng rng(44);
  for (int s = 0; s < 20; ++s) {
    auto x = categories::discrete(1 + gen::below(rng, 2));
    auto a = categories::random_small(rng);
    if (a->object_count() != x->object_count()) continue;
    std::vector<std::size_t> objects(x->object_count());
    std::iota(objects.begin(), objects.end(), 0);
    std::vector<std::size_t> arrows = objects;
    FiniteFunctor j(x, a, objects, arrows);
    auto m = functor_to_monad(j);
    CHECK(check_span_monad(m).ok());
    auto back = monad_to_functor(m);
    CHECK(back.on_objects == j.on_objects);
    CHECK(back.on_arrows == j.on_arrows);
    CHECK(back.target->arrow_count() == a->arrow_count());
  }
}

TEST_CASE("span monads: the pointed theory over two arities") {
  auto m = theory_monad(builtin::pointed(), {1, 2}, 1);
  auto r = check_span_monad(m);
  CHECK(r.ok());
  auto j = monad_to_functor(m);
  // hom(n, m) of the pointed theory has (n + 1)^m elements
  CHECK(m.size(0, 0) == 2);
  CHECK(m.size(0, 1) == 4);
  CHECK(m.size(1, 0) == 3);
  CHECK(m.size(1, 1) == 9);
  CHECK(j.target->arrow_count() == 2 + 4 + 3 + 9);
}

#include "doctest.h"
#include "lawvere/pcompletion.hpp"
#include "lawvere/term_text.hpp"

using namespace lawvere;

namespace {

std::size_t power(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Counts arrows of PA from the formula: a morphism (a_1..a_n) -> (b_1..b_m)
// is alpha: [m] -> [n] with arrows a_alpha(i) -> b_i.
std::size_t p_arrow_count(const FiniteCategory& a, std::size_t max_length) {
  std::vector<std::vector<std::size_t>> strings{{}};
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& s : strings) {
      if (s.size() != len - 1) continue;
      for (std::size_t o = 0; o < a.object_count(); ++o) {
        auto t = s;
        t.push_back(o);
        next.push_back(t);
      }
    }
    strings.insert(strings.end(), next.begin(), next.end());
  }
  std::size_t total = 0;
  for (const auto& src : strings) {
    for (const auto& dst : strings) {
      for (const auto& alpha : all_functions(dst.size(), src.size())) {
        std::size_t ways = 1;
        for (std::size_t i = 0; i < dst.size(); ++i) ways *= a.hom(src[alpha(i)], dst[i]).size();
        total += ways;
      }
    }
  }
  return total;
}

// Sends x_i to the point for i >= 1: not a functor on finite sets.
FinitaryMonadFragment crooked() {
  FinitaryMonadFragment f = fragments::pointed();
  f.name = "crooked";
  f.theory.normalizer = [](const Term& t) {
    if (t.is_var() && t.index() >= 1) return Term::constant(ops::pt);
    return t;
  };
  return f;
}

}  // namespace

TEST_CASE("P: truncated completion of a chain") {
  auto c = categories::chain(2);
  for (std::size_t len : {1, 2}) {
    auto pa = p_truncated(c, len);
    CHECK(pa.category->arrow_count() == p_arrow_count(*c, len));
    CHECK(pa.strings.size() == pa.category->object_count());
  }
  auto pa = p_truncated(c, 2);
  CHECK(pa.category->object_count() == 7);
  CHECK(pa.category->arrow_count() == 65);
}

TEST_CASE("P: the completion of hom is hom of the completion") {
  for (const auto& c : {categories::chain(2), categories::idempotent(), categories::cyclic_group(2)}) {
    auto pa = p_truncated(c, 2);
    auto ph = p_on_prof(hom_profunctor(c), pa, pa);
    CHECK(prof_iso(ph, hom_profunctor(pa.category)).has_value());
  }
}

TEST_CASE("P: on profunctors, cell sizes follow the coproduct of products") {
  std::mt19937_64 rng(51);
  auto c = categories::chain(2);
  auto d = categories::idempotent();
  auto f = random_profunctor(c, d, rng);
  auto pc = p_truncated(c, 2);
  auto pd = p_truncated(d, 2);
  auto pf = p_on_prof(f, pc, pd);
  for (std::size_t y = 0; y < pd.strings.size(); ++y) {
    for (std::size_t x = 0; x < pc.strings.size(); ++x) {
      const auto& b = pd.strings[y];
      const auto& a = pc.strings[x];
      std::size_t expected = 0;
      for (const auto& alpha : all_functions(a.size(), b.size())) {
        std::size_t prod = 1;
        for (std::size_t j = 0; j < a.size(); ++j) prod *= f.size(b[alpha(j)], a[j]);
        expected += prod;
      }
      CHECK(pf.size(y, x) == expected);
    }
  }
}

TEST_CASE("Kleisli structure of P1") {
  CHECK(kleisli_mult(2, {1, 2}).size() == power(2, 3));
  CHECK(kleisli_mult(3, {}).size() == 1);
  CHECK(kleisli_unit(3).size() == 3);
  CHECK(kleisli_unit(0).empty());
}

TEST_CASE("oplus: sums of tuples") {
  auto f = fragments::pointed();
  TheoryMorphism point{1, 1, {Term::constant(ops::pt)}};
  TheoryMorphism inclusion{1, 1, {Term::var(0)}};
  auto sum = oplus(f, point, inclusion);
  CHECK(sum.source == 2);
  CHECK(sum.target == 2);
  CHECK(sum.components == std::vector<Term>{Term::constant(ops::pt), Term::var(1)});
  TheoryMorphism empty{0, 0, {}};
  CHECK(oplus(f, point, empty) == point);
  CHECK(oplus(f, empty, inclusion) == inclusion);
  TheoryMorphism big{3, 3, {Term::var(0), Term::var(1), Term::var(2)}};
  CHECK_THROWS_AS(oplus(f, big, big), structural_error);
}

TEST_CASE("keyprop: pointed and identity monads") {
  for (const auto& f : {fragments::pointed(), fragments::identity()}) {
    auto r = verify_keyprop(f, 3, 3, 1);
    CHECK(r.ok());
    CHECK(r.stability.at("maxLength+1"));
    for (const auto& cell : r.details["cells"]) {
      CHECK(cell["classes"] == cell["expected"]);
      CHECK(cell["stable"] == true);
    }
  }
}

TEST_CASE("keyprop: pointed monad at j = 1, n = 2 has four elements") {
  auto r = verify_keyprop(fragments::pointed(), 1, 2, 1);
  bool seen = false;
  for (const auto& cell : r.details["cells"]) {
    if (cell["j"] == 1 && cell["n"] == 2) {
      CHECK(cell["classes"] == 4);
      seen = true;
    }
  }
  CHECK(seen);
}

TEST_CASE("keyprop: longer strings change nothing") {
  auto r = verify_keyprop(fragments::free_monoid(2), 2, 2, 2);
  CHECK(r.ok());
  CHECK(r.stability.at("maxLength+1"));
}

TEST_CASE("keyprop: a non-functorial assignment is rejected") {
  bool rejected = false;
  try {
    rejected = !verify_keyprop(crooked(), 2, 2, 1).ok();
  } catch (const structural_error&) {
    rejected = true;
  }
  CHECK(rejected);
}

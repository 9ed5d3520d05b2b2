#include "lawvere/theory.hpp"

#include <chrono>
#include <set>

#include "lawvere/term_text.hpp"

namespace lawvere {

BaseFunction::BaseFunction(std::size_t source, std::size_t target, std::vector<std::size_t> table)
    : source(source), target(target), table(std::move(table)) {
  if (this->table.size() != source) {
    throw structural_error("base function table has " + std::to_string(this->table.size()) +
                           " entries, expected " + std::to_string(source));
  }
  for (auto v : this->table) {
    if (v >= target) {
      throw structural_error("base function value " + std::to_string(v) + " outside [" +
                             std::to_string(target) + "]");
    }
  }
}

BaseFunction BaseFunction::identity(std::size_t n) {
  std::vector<std::size_t> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = i;
  return {n, n, std::move(t)};
}

BaseFunction compose(const BaseFunction& g, const BaseFunction& f) {
  if (f.target != g.source) throw structural_error("base functions not composable");
  std::vector<std::size_t> t(f.source);
  for (std::size_t i = 0; i < f.source; ++i) t[i] = g(f(i));
  return {f.source, g.target, std::move(t)};
}

std::vector<BaseFunction> all_functions(std::size_t m, std::size_t k) {
  std::vector<BaseFunction> out;
  if (k == 0 && m > 0) return out;
  std::vector<std::size_t> t(m, 0);
  while (true) {
    out.emplace_back(m, k, t);
    std::size_t pos = m;
    while (pos > 0) {
      --pos;
      if (++t[pos] < k) break;
      t[pos] = 0;
      if (pos == 0) return out;
    }
    if (m == 0) return out;
  }
}

LawvereTheory lawvere_theory(TheorySpec base) {
  LawvereTheory t;
  t.base = std::move(base);
  return t;
}

LawvereTheory affine_variant(TheorySpec base) {
  LawvereTheory t;
  t.base = std::move(base);
  t.base.name += "_affine";
  t.admits = [](const TheoryMorphism& f) {
    std::vector<std::size_t> uses(f.source, 0);
    auto walk = [&](auto&& self, const Term& u) -> bool {
      if (u.is_var()) return ++uses[u.index()] <= 1;
      for (const auto& a : u.args()) {
        if (!self(self, a)) return false;
      }
      return true;
    };
    for (const auto& c : f.components) {
      if (!walk(walk, c)) return false;
    }
    return true;
  };
  return t;
}

TheoryMorphism make_morphism(const TheorySpec& theory, std::size_t source,
                             std::vector<Term> components) {
  TheoryMorphism f;
  f.source = source;
  f.target = components.size();
  for (auto& c : components) {
    if (!c.well_formed(source)) {
      throw structural_error("component " + to_prefix(c) + " is not over " +
                             std::to_string(source) + " variables");
    }
    f.components.push_back(normalize(theory, c));
  }
  return f;
}

TheoryMorphism identity_morphism(std::size_t k) { return {k, k, variables(k)}; }

TheoryMorphism compose(const TheorySpec& theory, const TheoryMorphism& g, const TheoryMorphism& f) {
  if (f.target != g.source) {
    throw structural_error("cannot compose " + std::to_string(g.source) + "->" +
                           std::to_string(g.target) + " after " + std::to_string(f.source) +
                           "->" + std::to_string(f.target));
  }
  TheoryMorphism h;
  h.source = f.source;
  h.target = g.target;
  for (const auto& c : g.components) {
    h.components.push_back(theory.normalizer(substitute(c, g.source, f.components)));
  }
  return h;
}

TheoryMorphism basic_morphism(const BaseFunction& alpha) {
  TheoryMorphism f;
  f.source = alpha.target;
  f.target = alpha.source;
  for (auto v : alpha.table) f.components.push_back(Term::var(v));
  return f;
}

TheoryMorphism pairing(const TheoryMorphism& f, const TheoryMorphism& g) {
  if (f.source != g.source) throw structural_error("pairing needs a common source");
  TheoryMorphism h{f.source, f.target + g.target, f.components};
  h.components.insert(h.components.end(), g.components.begin(), g.components.end());
  return h;
}

TheoryMorphism first_projection(std::size_t k, std::size_t m) {
  std::vector<std::size_t> t(k);
  for (std::size_t i = 0; i < k; ++i) t[i] = i;
  return basic_morphism(BaseFunction(k, k + m, std::move(t)));
}

TheoryMorphism second_projection(std::size_t k, std::size_t m) {
  std::vector<std::size_t> t(m);
  for (std::size_t i = 0; i < m; ++i) t[i] = k + i;
  return basic_morphism(BaseFunction(m, k + m, std::move(t)));
}

TheoryMorphism random_morphism(const TheorySpec& theory, std::size_t p, std::size_t m,
                               std::size_t max_depth, std::mt19937_64& rng) {
  std::vector<Term> comps;
  for (std::size_t i = 0; i < m; ++i) comps.push_back(random_term(theory, p, max_depth, rng));
  return make_morphism(theory, p, std::move(comps));
}

namespace {

nlohmann::json morphism_json(const TheoryMorphism& f) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : f.components) comps.push_back(print_term(c));
  return {{"source", f.source}, {"target", f.target}, {"components", comps}};
}

void check_pair(const LawvereTheory& theory, std::size_t k, std::size_t m,
                const TheoryMorphism& f, const TheoryMorphism& g, Report& report) {
  const auto& spec = theory.base;
  auto h = pairing(f, g);
  if (!theory.admits(h)) {
    report.fail({{"kind", "pairing"}, {"f", morphism_json(f)}, {"g", morphism_json(g)},
                 {"reason", "concatenation is not a morphism of the theory"}});
    return;
  }
  auto p1 = compose(spec, first_projection(k, m), h);
  auto p2 = compose(spec, second_projection(k, m), h);
  if (!(p1 == f) || !(p2 == g)) {
    report.fail({{"kind", "projection"}, {"f", morphism_json(f)}, {"g", morphism_json(g)},
                 {"pi1", morphism_json(p1)}, {"pi2", morphism_json(p2)}});
    return;
  }
  report.pass();
}

void check_surjective(const LawvereTheory& theory, std::size_t k, std::size_t m,
                      const TheoryMorphism& h, Report& report) {
  const auto& spec = theory.base;
  auto f = compose(spec, first_projection(k, m), h);
  auto g = compose(spec, second_projection(k, m), h);
  auto back = pairing(f, g);
  report.check(back == h, {{"kind", "surjective_pairing"}, {"h", morphism_json(h)},
                           {"pairing", morphism_json(back)}});
}

}  // namespace

Report check_product_structure(const LawvereTheory& theory, std::size_t k, std::size_t m,
                               const Sampler& sampler) {
  auto start = std::chrono::steady_clock::now();
  Report report;
  report.subject = "product_structure:" + theory.base.name;
  report.seed = sampler.seed;
  report.bounds = {{"k", static_cast<long long>(k)},
                   {"m", static_cast<long long>(m)},
                   {"maxArity", static_cast<long long>(sampler.max_arity)},
                   {"maxDepth", static_cast<long long>(sampler.max_depth)}};

  if (theory.base.signature.empty()) {
    // F^op: every morphism is basic, so enumerate them all.
    report.details["exhaustive"] = true;
    for (std::size_t p = 0; p <= sampler.max_arity; ++p) {
      auto fs = all_functions(k, p);
      auto gs = all_functions(m, p);
      for (const auto& a : fs) {
        for (const auto& b : gs) {
          auto f = basic_morphism(a);
          auto g = basic_morphism(b);
          if (theory.admits(f) && theory.admits(g)) check_pair(theory, k, m, f, g, report);
        }
      }
      for (const auto& c : all_functions(k + m, p)) {
        auto h = basic_morphism(c);
        if (theory.admits(h)) check_surjective(theory, k, m, h, report);
      }
    }
  } else {
    report.details["exhaustive"] = false;
    std::mt19937_64 rng(sampler.seed);
    std::uniform_int_distribution<std::size_t> arity(0, sampler.max_arity);
    for (std::size_t s = 0; s < sampler.samples; ++s) {
      std::size_t p = arity(rng);
      TheoryMorphism f, g;
      // Draw admitted morphisms; the affine variant rejects some draws.
      for (int tries = 0;; ++tries) {
        f = random_morphism(theory.base, p, k, sampler.max_depth, rng);
        g = random_morphism(theory.base, p, m, sampler.max_depth, rng);
        if ((theory.admits(f) && theory.admits(g)) || tries > 50) break;
      }
      if (!theory.admits(f) || !theory.admits(g)) continue;
      check_pair(theory, k, m, f, g, report);
      auto h = random_morphism(theory.base, p, k + m, sampler.max_depth, rng);
      if (theory.admits(h)) check_surjective(theory, k, m, h, report);
    }
  }
  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace lawvere

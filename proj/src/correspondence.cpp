#include "lawvere/correspondence.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>

#include "lawvere/layered.hpp"
#include "lawvere/term_text.hpp"
#include "lawvere/theory.hpp"
#include "lawvere/union_find.hpp"

namespace lawvere {

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

std::vector<std::size_t> digits(std::size_t code, std::size_t base, std::size_t count) {
  std::vector<std::size_t> d(count);
  for (std::size_t i = count; i-- > 0;) {
    d[i] = code % base;
    code /= base;
  }
  return d;
}

std::size_t undigits(const std::vector<std::size_t>& d, std::size_t base) {
  std::size_t code = 0;
  for (auto x : d) code = code * base + x;
  return code;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

nlohmann::json morphism_text(const TheoryMorphism& f) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : f.components) comps.push_back(print_term(c));
  return {{"source", f.source}, {"target", f.target}, {"components", comps}};
}

// Functions [n] -> [n'] with |n - n'| <= 1 generate all maps between finite
// sets under composition, so they give the same coend relation as all maps.
bool generating(std::size_t n, std::size_t n2) { return n <= n2 + 1 && n2 <= n + 1; }

}  // namespace

std::vector<Term> TheoryTable::operations(std::size_t n) const {
  if (n > bound) throw structural_error("object " + std::to_string(n) + " is beyond the table bound");
  return monad.elements(n);
}

std::size_t TheoryTable::hom_count(std::size_t n, std::size_t m) const { return ipow(operations(n).size(), m); }

std::vector<TheoryMorphism> TheoryTable::hom(std::size_t n, std::size_t m) const {
  if (m > bound) throw structural_error("object " + std::to_string(m) + " is beyond the table bound");
  const auto ops = operations(n);
  std::vector<TheoryMorphism> out;
  const std::size_t count = ipow(ops.size(), m);
  for (std::size_t code = 0; code < count; ++code) {
    TheoryMorphism f{n, m, {}};
    for (auto i : digits(code, ops.size(), m)) f.components.push_back(ops[i]);
    out.push_back(std::move(f));
  }
  return out;
}

TheoryMorphism TheoryTable::compose(const TheoryMorphism& g, const TheoryMorphism& f) const {
  if (f.target != g.source) throw structural_error("morphisms are not composable");
  TheoryMorphism h{f.source, g.target, {}};
  for (const auto& c : g.components) h.components.push_back(monad.bind(c, f.components));
  return h;
}

TheoryMorphism TheoryTable::alpha(const BaseFunction& f) const {
  TheoryMorphism h{f.target, f.source, {}};
  for (auto v : f.table) h.components.push_back(monad.unit(v));
  return h;
}

TheoryTable phi(const FinitaryMonadFragment& f, std::size_t bound) {
  if (bound > f.arity_bound) {
    throw structural_error("table bound " + std::to_string(bound) + " exceeds the fragment bound " +
                           std::to_string(f.arity_bound));
  }
  return TheoryTable{f, bound};
}

Report check_theory_table(const TheoryTable& table, const Sampler& sampler) {
  auto start = std::chrono::steady_clock::now();
  Report report;
  report.subject = "theory_table:" + table.monad.name;
  report.seed = sampler.seed;
  report.bounds = {{"objects", static_cast<long long>(table.bound)},
                   {"samples", static_cast<long long>(sampler.samples)}};
  std::mt19937_64 rng(sampler.seed);
  std::uniform_int_distribution<std::size_t> object(0, table.bound);
  std::vector<std::vector<Term>> ops;
  for (std::size_t n = 0; n <= table.bound; ++n) ops.push_back(table.operations(n));

  auto random_morphism = [&](std::size_t a, std::size_t b) -> std::optional<TheoryMorphism> {
    if (b > 0 && ops[a].empty()) return std::nullopt;
    TheoryMorphism f{a, b, {}};
    for (std::size_t i = 0; i < b; ++i) {
      f.components.push_back(ops[a][std::uniform_int_distribution<std::size_t>(0, ops[a].size() - 1)(rng)]);
    }
    return f;
  };

  for (std::size_t s = 0; s < sampler.samples; ++s) {
    std::size_t a = object(rng), b = object(rng), c = object(rng), d = object(rng);
    auto f = random_morphism(a, b);
    auto g = random_morphism(b, c);
    auto h = random_morphism(c, d);
    if (!f || !g || !h) continue;
    auto left = table.compose(*h, table.compose(*g, *f));
    auto right = table.compose(table.compose(*h, *g), *f);
    report.check(left == right, {{"kind", "associativity"},
                                 {"f", morphism_text(*f)},
                                 {"g", morphism_text(*g)},
                                 {"h", morphism_text(*h)}});
    auto id_a = table.alpha(BaseFunction::identity(a));
    auto id_b = table.alpha(BaseFunction::identity(b));
    report.check(table.compose(*f, id_a) == *f && table.compose(id_b, *f) == *f,
                 {{"kind", "unit"}, {"f", morphism_text(*f)}});
  }

  for (std::size_t n = 0; n <= table.bound; ++n) {
    for (std::size_t m = 0; m <= table.bound; ++m) {
      for (std::size_t p = 0; p <= table.bound; ++p) {
        for (const auto& f : all_functions(m, n)) {
          for (const auto& g : all_functions(p, m)) {
            auto lhs = table.alpha(lawvere::compose(f, g));
            auto rhs = table.compose(table.alpha(g), table.alpha(f));
            report.check(lhs == rhs, {{"kind", "alpha"}, {"f", f.table}, {"g", g.table}});
          }
        }
      }
    }
  }
  report.wall_ms = elapsed_ms(start);
  return report;
}

TableMap phi_map(const Transformation& alpha) {
  return [alpha](const TheoryMorphism& f) {
    TheoryMorphism g{f.source, f.target, {}};
    for (const auto& c : f.components) g.components.push_back(alpha(f.source, c));
    return g;
  };
}

Report check_naturality(const FinitaryMonadFragment& f, const FinitaryMonadFragment& g, const Transformation& alpha,
                        std::size_t bound) {
  auto start = std::chrono::steady_clock::now();
  Report report;
  report.subject = "naturality:" + f.name + "->" + g.name;
  report.bounds = {{"objects", static_cast<long long>(bound)}};
  for (std::size_t n = 0; n <= bound; ++n) {
    const auto elems = f.elements(n);
    for (std::size_t n2 = 0; n2 <= bound; ++n2) {
      for (const auto& h : all_functions(n, n2)) {
        for (const auto& t : elems) {
          Term lhs = alpha(n2, f.map(h, t));
          Term rhs = g.map(h, alpha(n, t));
          report.check(lhs == rhs, {{"kind", "naturality"},
                                    {"function", h.table},
                                    {"target", n2},
                                    {"element", print_term(t)},
                                    {"alphaAfter", print_term(lhs)},
                                    {"alphaBefore", print_term(rhs)}});
        }
      }
    }
  }
  report.wall_ms = elapsed_ms(start);
  return report;
}

Report check_fullness(const FinitaryMonadFragment& f, const FinitaryMonadFragment& g, const TableMap& beta,
                      std::size_t bound) {
  auto start = std::chrono::steady_clock::now();
  Report report;
  report.subject = "fullness:" + f.name + "->" + g.name;
  report.bounds = {{"objects", static_cast<long long>(bound)}};
  const auto tf = phi(f, bound);
  const auto tg = phi(g, bound);
  Transformation alpha = [&beta](std::size_t n, const Term& t) {
    return beta(TheoryMorphism{n, 1, {t}}).components.at(0);
  };

  report.absorb(check_naturality(f, g, alpha, bound));

  for (std::size_t n = 0; n <= bound; ++n) {
    for (std::size_t m = 0; m <= bound; ++m) {
      for (const auto& h : all_functions(m, n)) {
        auto got = beta(tf.alpha(h));
        report.check(got == tg.alpha(h), {{"kind", "basic"}, {"function", h.table}, {"image", morphism_text(got)}});
      }
    }
  }

  const std::size_t small = std::min<std::size_t>(bound, 2);
  for (std::size_t n = 0; n <= small; ++n) {
    for (std::size_t m = 0; m <= small; ++m) {
      for (const auto& x : tf.hom(n, m)) {
        for (const auto& y : tf.hom(m, 1)) {
          auto lhs = beta(tf.compose(y, x));
          auto rhs = tg.compose(beta(y), beta(x));
          report.check(lhs == rhs, {{"kind", "composition"}, {"f", morphism_text(x)}, {"g", morphism_text(y)}});
        }
      }
    }
  }

  const auto induced = phi_map(alpha);
  for (std::size_t n = 0; n <= bound; ++n) {
    for (std::size_t m = 0; m <= bound; ++m) {
      for (const auto& x : tf.hom(n, m)) {
        auto got = beta(x);
        auto want = induced(x);
        report.check(got == want, {{"kind", "reconstruction"},
                                   {"morphism", morphism_text(x)},
                                   {"beta", morphism_text(got)},
                                   {"alphaBar", morphism_text(want)}});
      }
    }
  }
  report.wall_ms = elapsed_ms(start);
  return report;
}

namespace {

// The coend over n <= truncation of Set(k, F n) x Set(n, X), X = [x].
// Generator (n, c, d) with c in F[n]^k and d in [x]^n; evaluation sends it to
// (F(d)(c_t))_t in F[x]^k.
struct Density {
  std::size_t k = 0, x = 0, truncation = 0;
  std::vector<std::size_t> base, ck, dx;  // per n: offset, |F n|^k, x^n
  std::size_t total = 0;
  std::vector<std::size_t> class_of;
  std::size_t classes = 0;
  std::vector<std::size_t> value, first, last;  // per class
  bool well_defined = true;
  nlohmann::json witness;

  std::size_t id(std::size_t n, std::size_t c, std::size_t d) const { return base[n] + c * dx[n] + d; }
  // n, c, d of a generator.
  std::tuple<std::size_t, std::size_t, std::size_t> decode(std::size_t g) const {
    std::size_t n = static_cast<std::size_t>(std::upper_bound(base.begin(), base.end(), g) - base.begin()) - 1;
    std::size_t local = g - base[n];
    return {n, local / dx[n], local % dx[n]};
  }
};

Density density_coend(FragmentTables& ft, std::size_t k, std::size_t x, std::size_t truncation) {
  Density q;
  q.k = k;
  q.x = x;
  q.truncation = truncation;
  for (std::size_t n = 0; n <= truncation; ++n) {
    q.base.push_back(q.total);
    q.ck.push_back(ipow(ft.size(n), k));
    q.dx.push_back(ipow(x, n));
    q.total += q.ck.back() * q.dx.back();
  }
  UnionFind uf(q.total);
  // (n', F(f) o c, d') ~ (n, c, d' o f) for f: [n] -> [n'].
  for (std::size_t n = 0; n <= truncation; ++n) {
    for (std::size_t n2 = 0; n2 <= truncation; ++n2) {
      if (!generating(n, n2)) continue;
      for (const auto& f : all_functions(n, n2)) {
        const auto& ff = ft.action(f);
        std::vector<std::size_t> cmap(q.ck[n]), dmap(q.dx[n2]);
        for (std::size_t c = 0; c < q.ck[n]; ++c) {
          auto cd = digits(c, ft.size(n), k);
          for (auto& e : cd) e = ff[e];
          cmap[c] = undigits(cd, ft.size(n2));
        }
        for (std::size_t d = 0; d < q.dx[n2]; ++d) {
          auto dd = digits(d, x, n2);
          std::vector<std::size_t> out(n);
          for (std::size_t i = 0; i < n; ++i) out[i] = dd[f(i)];
          dmap[d] = undigits(out, x);
        }
        for (std::size_t c = 0; c < q.ck[n]; ++c) {
          for (std::size_t d = 0; d < q.dx[n2]; ++d) uf.unite(q.id(n2, cmap[c], d), q.id(n, c, dmap[d]));
        }
      }
    }
  }
  auto [ids, count] = uf.classes();
  q.class_of = std::move(ids);
  q.classes = count;
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  q.value.assign(count, none);
  q.first.assign(count, none);
  q.last.assign(count, none);
  for (std::size_t n = 0; n <= truncation; ++n) {
    for (std::size_t d = 0; d < q.dx[n]; ++d) {
      const auto& fd = ft.action(BaseFunction(n, x, digits(d, x, n)));
      for (std::size_t c = 0; c < q.ck[n]; ++c) {
        auto cd = digits(c, ft.size(n), k);
        for (auto& e : cd) e = fd[e];
        const std::size_t v = undigits(cd, ft.size(x));
        const std::size_t g = q.id(n, c, d);
        const std::size_t cls = q.class_of[g];
        if (q.first[cls] == none) {
          q.first[cls] = g;
          q.value[cls] = v;
        } else if (q.value[cls] != v && q.well_defined) {
          q.well_defined = false;
          q.witness = {{"kind", "evaluation"}, {"x", x}, {"k", k}, {"generators", {q.first[cls], g}}};
        }
        q.last[cls] = g;
      }
    }
  }
  return q;
}

bool same_quotient(const Density& small, const Density& big) {
  return small.classes == big.classes &&
         std::equal(small.class_of.begin(), small.class_of.end(), big.class_of.begin());
}

// Checks that evaluation is a bijection onto F[x]^k.
void check_bijection(const Density& q, std::size_t fx, Report& report, const nlohmann::json& where) {
  const std::size_t expected = ipow(fx, q.k);
  if (!q.well_defined) {
    auto w = q.witness;
    w["at"] = where;
    report.fail(w);
    return;
  }
  std::vector<bool> seen(expected, false);
  bool ok = q.classes == expected;
  for (std::size_t c = 0; c < q.classes && ok; ++c) {
    ok = q.value[c] < expected && !seen[q.value[c]];
    if (ok) seen[q.value[c]] = true;
  }
  auto w = where;
  w["kind"] = "bijection";
  w["classes"] = q.classes;
  w["expected"] = expected;
  report.check(ok, w);
}

}  // namespace

MonadValue monad_from_theory(const TheoryTable& theory, std::size_t x, std::size_t truncation) {
  const std::size_t top = std::max(x, truncation + 1);
  if (top > theory.monad.arity_bound) {
    throw structural_error("coend needs F[" + std::to_string(top) + "], beyond the fragment bound " +
                           std::to_string(theory.monad.arity_bound));
  }
  FragmentTables ft(theory.monad, top);
  std::vector<std::size_t> counts;
  Density main;
  for (std::size_t t = 0; t <= truncation + 1; ++t) {
    Density q = density_coend(ft, 1, x, t);
    counts.push_back(q.classes);
    if (t == truncation) {
      main = std::move(q);
    } else if (t == truncation + 1) {
      const bool same = same_quotient(main, q);
      main.truncation = truncation;
      MonadValue out;
      out.x = x;
      out.truncation = truncation;
      out.generators = main.total;
      out.well_defined = main.well_defined;
      out.stable = same;
      for (auto v : main.value) out.elements.push_back(ft.element(x, v));
      std::size_t from = truncation + 1;
      while (from > 0 && counts[from - 1] == counts.back()) --from;
      out.stable_from = from;
      return out;
    }
  }
  return {};
}

Report roundtrip_check(const FinitaryMonadFragment& f, std::size_t x_bound, std::optional<std::size_t> truncation) {
  auto start = std::chrono::steady_clock::now();
  const std::size_t trunc = truncation.value_or(x_bound);
  Report report;
  report.subject = "roundtrip:" + f.name;
  report.bounds = {{"x", static_cast<long long>(x_bound)}, {"truncation", static_cast<long long>(trunc)}};
  const std::size_t top = std::max(x_bound, trunc + 1);
  if (top > f.arity_bound) {
    throw structural_error("round trip needs F[" + std::to_string(top) + "], beyond the fragment bound " +
                           std::to_string(f.arity_bound));
  }
  FragmentTables ft(f, top);

  std::vector<Density> cells;
  nlohmann::json info = nlohmann::json::array();
  for (std::size_t x = 0; x <= x_bound; ++x) {
    Density q = density_coend(ft, 1, x, trunc);
    Density bigger = density_coend(ft, 1, x, trunc + 1);
    check_bijection(q, ft.size(x), report, {{"x", x}});
    const bool stable = same_quotient(q, bigger);
    report.stability["x=" + std::to_string(x)] = stable;
    report.check(stable, {{"kind", "stability"}, {"x", x}, {"classes", q.classes}, {"classesNext", bigger.classes}});
    std::size_t from = trunc;
    while (from > 0 && density_coend(ft, 1, x, from - 1).classes == q.classes) --from;
    info.push_back({{"x", x}, {"generators", q.total}, {"classes", q.classes}, {"stableFrom", from}});
    cells.push_back(std::move(q));
  }

  // Naturality in X: h: [x] -> [x'] acts by (n, c, d) |-> (n, c, h o d).
  for (std::size_t x = 0; x <= x_bound; ++x) {
    const Density& q = cells[x];
    for (std::size_t x2 = 0; x2 <= x_bound; ++x2) {
      const Density& r = cells[x2];
      for (const auto& h : all_functions(x, x2)) {
        const auto& fh = ft.action(h);
        bool ok = true;
        nlohmann::json bad;
        for (std::size_t cls = 0; cls < q.classes && ok; ++cls) {
          for (std::size_t g : {q.first[cls], q.last[cls]}) {
            auto [n, c, d] = q.decode(g);
            auto dd = digits(d, x, n);
            for (auto& v : dd) v = h(v);
            const std::size_t image = r.value[r.class_of[r.id(n, c, undigits(dd, x2))]];
            if (image != fh[q.value[cls]]) {
              ok = false;
              bad = {{"kind", "naturality"},
                     {"x", x},
                     {"target", x2},
                     {"function", h.table},
                     {"element", print_term(ft.element(x, q.value[cls]))},
                     {"image", print_term(ft.element(x2, image))},
                     {"expected", print_term(ft.element(x2, fh[q.value[cls]]))}};
              break;
            }
          }
        }
        if (ok) {
          report.pass();
        } else {
          report.fail(bad);
        }
      }
    }
  }
  report.details["cells"] = info;
  report.wall_ms = elapsed_ms(start);
  return report;
}

FinitaryMonadFragment composite_fragment(const DistributiveLaw& law, std::size_t size_bound,
                                         std::size_t arity_bound) {
  auto shared = std::make_shared<DistributiveLaw>(law);
  const TheorySpec* outer = &shared->outer;
  const TheorySpec* inner = &shared->inner;
  const Layers two{outer, inner};

  FinitaryMonadFragment f;
  f.name = law.outer.name + "." + law.inner.name;
  f.arity_bound = arity_bound;
  f.size_bound = size_bound;
  f.exhaustive = false;
  f.theory.name = f.name;
  f.theory.signature = law.outer.signature;
  f.theory.signature.insert(f.theory.signature.end(), law.inner.signature.begin(), law.inner.signature.end());
  f.theory.normalizer = [shared, two](const Term& t) { return flatten(from_term(two, t)); };

  f.enumerate = [shared, two, size_bound](std::size_t n) {
    const auto words = enumerate_terms(shared->inner, n, size_bound);
    std::set<Term> found;
    for (std::size_t j = 0; j <= size_bound; ++j) {
      for (const auto& shape : enumerate_terms(shared->outer, j, size_bound)) {
        // Every slot variable used, so the shape is a genuine outer layer over j slots.
        std::vector<std::size_t> uses(j, 0);
        auto count = [&](auto&& self, const Term& t) -> void {
          if (t.is_var()) {
            ++uses[t.index()];
            return;
          }
          for (const auto& a : t.args()) self(self, a);
        };
        count(count, shape);
        if (std::find(uses.begin(), uses.end(), 0) != uses.end()) continue;
        const std::size_t shape_size = shape.size();
        std::vector<std::size_t> pick(j, 0);
        auto rec = [&](auto&& self, std::size_t pos, std::size_t size) -> void {
          if (size > size_bound) return;
          if (pos == j) {
            std::vector<Layered> slots;
            for (auto i : pick) slots.emplace_back(words[i]);
            Term flat = flatten(canonicalize(two, Layered(shape, std::move(slots))));
            if (flat.size() <= size_bound) found.insert(flat);
            return;
          }
          for (std::size_t i = 0; i < words.size(); ++i) {
            pick[pos] = i;
            self(self, pos + 1, size + uses[pos] * (words[i].size() - 1));
          }
        };
        rec(rec, 0, shape_size);
      }
    }
    return std::vector<Term>(found.begin(), found.end());
  };

  f.bind_fn = [shared, outer, inner, two](const Term& t, std::span<const Term> sigma) {
    const Layers four{outer, inner, outer, inner};
    const Layered e = from_term(two, t);
    std::vector<Layered> inner_slots;
    for (const auto& s : sigma) inner_slots.push_back(from_term(two, s));
    std::vector<Layered> slots;
    for (const auto& s : e.slots) slots.emplace_back(s.shape, inner_slots);
    Layered tsts = canonicalize(four, Layered(e.shape, std::move(slots)));
    const Layers ttss{outer, outer, inner, inner};
    Layered swapped_e = swap_layers(ttss, tsts, 1, shared->rewrite);
    Layered tss = merge_layers(ttss, swapped_e, 0);
    Layered ts = merge_layers(merged(ttss, 0), tss, 1);
    return flatten(ts);
  };
  return f;
}

Report composite_correspondence_check(const DistributiveLaw& law, std::size_t arity_bound, std::size_t size_bound,
                                      const Sampler& sampler) {
  auto start = std::chrono::steady_clock::now();
  Report report;
  report.subject = "composite_correspondence:" + law.name;
  report.seed = sampler.seed;
  report.bounds = {{"arity", static_cast<long long>(arity_bound)},
                   {"size", static_cast<long long>(size_bound)},
                   {"samples", static_cast<long long>(sampler.samples)}};

  auto beck = check_law_axioms(law, Sampler{});
  report.check(beck.ok(), {{"kind", "beck"}, {"failures", beck.summary.failures.size()}});

  const TheorySpec theory = composite_theory(law, false);
  const auto frag = composite_fragment(law, size_bound, std::max<std::size_t>(arity_bound, 1));
  const auto table = phi(frag, arity_bound);

  std::vector<std::vector<Term>> homs;
  nlohmann::json counts = nlohmann::json::array();
  for (std::size_t k = 0; k <= arity_bound; ++k) {
    auto from_theory = enumerate_terms(theory, k, size_bound);
    auto from_monad = table.operations(k);
    std::sort(from_theory.begin(), from_theory.end());
    std::sort(from_monad.begin(), from_monad.end());
    std::vector<Term> only_theory, only_monad;
    std::set_difference(from_theory.begin(), from_theory.end(), from_monad.begin(), from_monad.end(),
                        std::back_inserter(only_theory));
    std::set_difference(from_monad.begin(), from_monad.end(), from_theory.begin(), from_theory.end(),
                        std::back_inserter(only_monad));
    nlohmann::json w = {{"kind", "hom"}, {"k", k}, {"theory", from_theory.size()}, {"monad", from_monad.size()}};
    if (!only_theory.empty()) w["onlyTheory"] = print_term(only_theory.front());
    if (!only_monad.empty()) w["onlyMonad"] = print_term(only_monad.front());
    report.check(only_theory.empty() && only_monad.empty(), w);
    counts.push_back({{"k", k}, {"count", from_monad.size()}});
    homs.push_back(std::move(from_monad));
  }

  std::mt19937_64 rng(sampler.seed);
  std::uniform_int_distribution<std::size_t> object(0, arity_bound);
  for (std::size_t s = 0; s < sampler.samples; ++s) {
    std::size_t k = object(rng), m = object(rng);
    if ((m > 0 && homs[k].empty()) || homs[m].empty()) continue;
    std::vector<Term> f;
    for (std::size_t i = 0; i < m; ++i) {
      f.push_back(homs[k][std::uniform_int_distribution<std::size_t>(0, homs[k].size() - 1)(rng)]);
    }
    const Term& g = homs[m][std::uniform_int_distribution<std::size_t>(0, homs[m].size() - 1)(rng)];
    Term via_monad = frag.bind(g, f);
    Term via_theory = normalize(theory, substitute(g, m, f));
    nlohmann::json fj = nlohmann::json::array();
    for (const auto& t : f) fj.push_back(print_term(t));
    report.check(via_monad == via_theory, {{"kind", "composition"},
                                           {"f", fj},
                                           {"g", print_term(g)},
                                           {"monad", print_term(via_monad)},
                                           {"theory", print_term(via_theory)}});
  }

  Sampler products = sampler;
  products.samples = std::min<std::size_t>(sampler.samples, 100);
  products.max_depth = 2;
  products.max_arity = std::min<std::size_t>(sampler.max_arity, 3);
  auto prod = check_product_structure(lawvere_theory(theory), 1, 2, products);
  report.absorb(prod);
  report.details["homCounts"] = counts;
  report.details["productStructure"] = prod.ok();
  report.wall_ms = elapsed_ms(start);
  return report;
}

namespace {

// The coend over u <= universe of Set(k, [u]) x Set([u], F n), evaluated by
// composition into F[n]^k. Generator (u, a, b) with a in [u]^k, b in F[n]^u.
struct Istar {
  std::vector<std::size_t> base, ak, bu;
  std::size_t total = 0;
  std::vector<std::size_t> class_of;
  std::size_t classes = 0;
  std::vector<std::size_t> value;
  bool well_defined = true;
};

Istar istar_coend(FragmentTables& ft, std::size_t k, std::size_t n, std::size_t universe) {
  Istar q;
  const std::size_t fn = ft.size(n);
  for (std::size_t u = 0; u <= universe; ++u) {
    q.base.push_back(q.total);
    q.ak.push_back(ipow(u, k));
    q.bu.push_back(ipow(fn, u));
    q.total += q.ak.back() * q.bu.back();
  }
  auto id = [&](std::size_t u, std::size_t a, std::size_t b) { return q.base[u] + a * q.bu[u] + b; };
  UnionFind uf(q.total);
  // (u', h o a, b') ~ (u, a, b' o h) for h: [u] -> [u'].
  for (std::size_t u = 0; u <= universe; ++u) {
    for (std::size_t u2 = 0; u2 <= universe; ++u2) {
      if (!generating(u, u2)) continue;
      for (const auto& h : all_functions(u, u2)) {
        std::vector<std::size_t> amap(q.ak[u]), bmap(q.bu[u2]);
        for (std::size_t a = 0; a < q.ak[u]; ++a) {
          auto ad = digits(a, u, k);
          for (auto& v : ad) v = h(v);
          amap[a] = undigits(ad, u2);
        }
        for (std::size_t b = 0; b < q.bu[u2]; ++b) {
          auto bd = digits(b, fn, u2);
          std::vector<std::size_t> out(u);
          for (std::size_t i = 0; i < u; ++i) out[i] = bd[h(i)];
          bmap[b] = undigits(out, fn);
        }
        for (std::size_t a = 0; a < q.ak[u]; ++a) {
          for (std::size_t b = 0; b < q.bu[u2]; ++b) uf.unite(id(u2, amap[a], b), id(u, a, bmap[b]));
        }
      }
    }
  }
  auto [ids, count] = uf.classes();
  q.class_of = std::move(ids);
  q.classes = count;
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  q.value.assign(count, none);
  for (std::size_t u = 0; u <= universe; ++u) {
    for (std::size_t a = 0; a < q.ak[u]; ++a) {
      auto ad = digits(a, u, k);
      for (std::size_t b = 0; b < q.bu[u]; ++b) {
        auto bd = digits(b, fn, u);
        std::vector<std::size_t> out(k);
        for (std::size_t t = 0; t < k; ++t) out[t] = bd[ad[t]];
        const std::size_t v = undigits(out, fn);
        auto& slot = q.value[q.class_of[id(u, a, b)]];
        if (slot == none) {
          slot = v;
        } else if (slot != v) {
          q.well_defined = false;
        }
      }
    }
  }
  return q;
}

}  // namespace

Report istar_composite(const FinitaryMonadFragment& f, std::size_t bound, std::size_t universe) {
  auto start = std::chrono::steady_clock::now();
  Report report;
  report.subject = "istar:" + f.name;
  report.bounds = {{"objects", static_cast<long long>(bound)}, {"universe", static_cast<long long>(universe)}};
  const std::size_t top = std::max(bound, universe + 1);
  if (top > f.arity_bound) {
    throw structural_error("needs F[" + std::to_string(top) + "], beyond the fragment bound " +
                           std::to_string(f.arity_bound));
  }
  FragmentTables ft(f, top);
  const auto table = phi(f, bound);

  bool stable = true;
  nlohmann::json cells = nlohmann::json::array();
  for (std::size_t k = 0; k <= bound; ++k) {
    for (std::size_t n = 0; n <= bound; ++n) {
      Istar q = istar_coend(ft, k, n, universe);
      Istar bigger = istar_coend(ft, k, n, universe + 1);
      const std::size_t expected = table.hom_count(n, k);
      bool injective = q.well_defined;
      std::vector<bool> seen(expected, false);
      for (std::size_t c = 0; c < q.classes && injective; ++c) {
        injective = q.value[c] < expected && !seen[q.value[c]];
        if (injective) seen[q.value[c]] = true;
      }
      report.check(injective && q.classes == expected, {{"kind", "istar"},
                                                        {"k", k},
                                                        {"n", n},
                                                        {"classes", q.classes},
                                                        {"expected", expected},
                                                        {"wellDefined", q.well_defined}});
      const bool same = bigger.classes == q.classes &&
                        std::equal(q.class_of.begin(), q.class_of.end(), bigger.class_of.begin());
      stable = stable && same;
      report.check(same, {{"kind", "stability"}, {"k", k}, {"n", n}});
      cells.push_back({{"k", k}, {"n", n}, {"classes", q.classes}, {"generators", q.total}});
    }
  }
  report.stability["universe+1"] = stable;

  // Finitary pasting: the coend through F agrees with Set(k, F X).
  bool pasting_stable = true;
  for (std::size_t k = 0; k <= bound; ++k) {
    for (std::size_t x = 0; x <= bound; ++x) {
      Density q = density_coend(ft, k, x, universe);
      Density bigger = density_coend(ft, k, x, universe + 1);
      check_bijection(q, ft.size(x), report, {{"pasting", true}, {"k", k}, {"x", x}});
      const bool same = same_quotient(q, bigger);
      pasting_stable = pasting_stable && same;
      report.check(same, {{"kind", "stability"}, {"pasting", true}, {"k", k}, {"x", x}});
    }
  }
  report.stability["pasting:universe+1"] = pasting_stable;
  report.details["cells"] = cells;
  report.wall_ms = elapsed_ms(start);
  return report;
}

}  // namespace lawvere

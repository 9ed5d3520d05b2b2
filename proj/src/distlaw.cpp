#include "lawvere/distlaw.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

#include "lawvere/term_text.hpp"

namespace lawvere {

Layered apply_law(const DistributiveLaw& law, const Layered& e) {
  return swap_layers(law.output_layers(), canonicalize(law.input_layers(), e), 0, law.rewrite);
}

Term apply_law(const DistributiveLaw& law, const Term& t) {
  return flatten(apply_law(law, from_term(law.input_layers(), t)));
}

nlohmann::json AxiomReport::to_json() const {
  return {{"diagram", diagram}, {"sampleCount", sample_count}, {"failures", failures}};
}

const AxiomReport& LawCheck::diagram(std::string_view name) const {
  for (const auto& d : diagrams) {
    if (d.diagram == name) return d;
  }
  throw std::out_of_range("no diagram " + std::string(name));
}

namespace {

// Redraws until the flattened element fits the size cap.
Layered sample_layered(const Layers& layers, std::size_t k, std::size_t max_depth, std::size_t max_width,
                       std::size_t max_size, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> depth(1, std::max<std::size_t>(1, max_depth));
  std::uniform_int_distribution<std::size_t> width(1, std::max<std::size_t>(1, max_width));
  Layered e(Term::var(0));
  for (int tries = 0; tries < 1000; ++tries) {
    e = random_layered(layers, k, depth(rng), width(rng), rng);
    if (flatten(e).size() <= max_size) break;
  }
  return e;
}

std::size_t draw_arity(const Sampler& s, std::mt19937_64& rng) {
  return std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, s.max_arity))(rng);
}

nlohmann::json witness(const Layered& input, const Layered& left, const Layered& right) {
  return {{"input", describe(input)}, {"leftValue", describe(left)}, {"rightValue", describe(right)}};
}

// Compares two legs; exceptions from either leg count as failures.
template <class Left, class Right>
void compare_legs(AxiomReport& d, const Layered& input, Left left, Right right) {
  ++d.sample_count;
  try {
    Layered l = left();
    Layered r = right();
    if (!(l == r)) d.failures.push_back(witness(input, l, r));
  } catch (const std::exception& ex) {
    d.failures.push_back({{"input", describe(input)}, {"error", ex.what()}});
  }
}

}  // namespace

LawCheck check_law_axioms(const DistributiveLaw& law, const Sampler& sampler) {
  auto start = std::chrono::steady_clock::now();
  const TheorySpec* S = &law.inner;
  const TheorySpec* T = &law.outer;
  const Layers st{S, T};
  const Layers ts{T, S};
  auto lam = [&](const Layers& after, const Layered& e, std::size_t level) {
    return swap_layers(after, e, level, law.rewrite);
  };

  std::mt19937_64 rng(sampler.seed);
  LawCheck out;
  auto named = [](const char* name) {
    AxiomReport a;
    a.diagram = name;
    return a;
  };
  AxiomReport unit_s = named("unit-S"), mult_s = named("mult-S"), unit_t = named("unit-T"),
              mult_t = named("mult-T"), nat = named("naturality");
  const std::size_t d = sampler.max_depth, w = sampler.max_width, cap = sampler.max_size;
  for (std::size_t n = 0; n < sampler.samples; ++n) {
    std::size_t k = draw_arity(sampler, rng);

    Layered t = sample_layered({T}, k, d, w, cap, rng);
    compare_legs(unit_s, t, [&] { return lam(ts, canonicalize(st, insert_unit(t, 0, 1)), 0); },
                 [&] { return canonicalize(ts, insert_unit(t, 1, 1)); });

    Layered s = sample_layered({S}, k, d, w, cap, rng);
    compare_legs(unit_t, s, [&] { return lam(ts, canonicalize(st, insert_unit(s, 1, 1)), 0); },
                 [&] { return canonicalize(ts, insert_unit(s, 0, 1)); });

    Layered sst = sample_layered({S, S, T}, k, d, w, cap, rng);
    compare_legs(
        mult_s, sst, [&] { return lam(ts, merge_layers({S, S, T}, sst, 0), 0); },
        [&] {
          Layered a = lam({S, T, S}, sst, 1);
          Layered b = lam({T, S, S}, a, 0);
          return merge_layers({T, S, S}, b, 1);
        });

    Layered stt = sample_layered({S, T, T}, k, d, w, cap, rng);
    compare_legs(
        mult_t, stt, [&] { return lam(ts, merge_layers({S, T, T}, stt, 1), 0); },
        [&] {
          Layered a = lam({T, S, T}, stt, 0);
          Layered b = lam({T, T, S}, a, 1);
          return merge_layers({T, T, S}, b, 0);
        });

    Layered e = sample_layered(st, k, d, w, cap, rng);
    std::size_t k2 = draw_arity(sampler, rng);
    std::vector<std::size_t> f(k);
    for (auto& v : f) v = std::uniform_int_distribution<std::size_t>(0, k2 - 1)(rng);
    compare_legs(nat, e, [&] { return lam(ts, canonicalize(st, rename_bottom(e, f)), 0); },
                 [&] { return canonicalize(ts, rename_bottom(lam(ts, e, 0), f)); });
  }

  out.diagrams = {unit_s, mult_s, unit_t, mult_t, nat};
  Report& r = out.summary;
  r.subject = "distributive_law:" + law.name;
  r.seed = sampler.seed;
  r.bounds = {{"samples", static_cast<long long>(sampler.samples)},
              {"maxDepth", static_cast<long long>(sampler.max_depth)},
              {"maxWidth", static_cast<long long>(sampler.max_width)},
              {"maxArity", static_cast<long long>(sampler.max_arity)},
              {"maxSize", static_cast<long long>(sampler.max_size)}};
  r.details["diagrams"] = nlohmann::json::array();
  for (const auto& dg : out.diagrams) {
    r.details["diagrams"].push_back(dg.to_json());
    r.sample_count += dg.sample_count;
    r.pass_count += dg.sample_count - dg.failures.size();
    for (auto f : dg.failures) {
      f["diagram"] = dg.diagram;
      r.failures.push_back(std::move(f));
    }
  }
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

Layers LayerStack::layer_list() const {
  Layers out;
  for (const auto& l : layers) out.push_back(&l);
  return out;
}

const DistributiveLaw& LayerStack::law(std::size_t i, std::size_t j) const {
  auto it = laws.find({i, j});
  if (it == laws.end()) {
    throw structural_error("series has no law for layers " + std::to_string(i) + ", " + std::to_string(j));
  }
  return it->second;
}

namespace {

Layers layers_of(const LayerStack& stack, const std::vector<std::size_t>& idx) {
  Layers out;
  for (auto i : idx) out.push_back(&stack.layers.at(i));
  return out;
}

}  // namespace

Layered run_steps(const LayerStack& stack, std::vector<std::size_t>& idx, Layered e,
                  const std::vector<LayerStep>& steps) {
  for (const auto& step : steps) {
    std::size_t l = step.level;
    if (l + 1 >= idx.size()) throw structural_error("step level out of range");
    if (step.kind == LayerStep::swap) {
      if (idx[l] <= idx[l + 1]) throw structural_error("no law swaps these layers");
      const auto& law = stack.law(idx[l], idx[l + 1]);
      std::swap(idx[l], idx[l + 1]);
      e = swap_layers(layers_of(stack, idx), e, l, law.rewrite);
    } else {
      if (idx[l] != idx[l + 1]) throw structural_error("merge of different layers");
      e = merge_layers(layers_of(stack, idx), e, l);
      idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(l) + 1);
    }
  }
  return e;
}

Layered evaluate(const LayerStack& stack, const Term& t) {
  const std::size_t n = stack.layers.size();
  if (n == 0) throw structural_error("empty layer stack");
  auto owner = [&](const OperationSymbol& op) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto* f = stack.layers[i].find(op.id);
      if (f && f->arity == op.arity) return i;
    }
    throw structural_error("unknown operation '" + op.id + "'");
  };
  auto eval = [&](auto&& self, const Term& u) -> Layered {
    if (u.is_var()) {
      Layered x(u);
      for (std::size_t l = 1; l < n; ++l) x = Layered(Term::var(0), {x});
      return x;
    }
    std::size_t i = owner(u.op());
    std::vector<Layered> args;
    for (const auto& a : u.args()) args.push_back(self(self, a));
    std::vector<std::size_t> idx{i};
    for (std::size_t l = 0; l < n; ++l) idx.push_back(l);
    Layered e = canonicalize(layers_of(stack, idx), Layered(Term::app(u.op(), variables(args.size())), args));
    std::vector<LayerStep> steps;
    for (std::size_t j = 0; j < i; ++j) steps.push_back({LayerStep::swap, j});
    steps.push_back({LayerStep::merge, i});
    return run_steps(stack, idx, std::move(e), steps);
  };
  return eval(eval, t);
}

namespace {

TheorySpec series_spec(std::string name, std::shared_ptr<const LayerStack> stack) {
  TheorySpec spec;
  spec.name = std::move(name);
  for (const auto& l : stack->layers) {
    for (const auto& op : l.signature) {
      if (spec.find(op.id)) throw structural_error("operation '" + op.id + "' occurs in two layers");
      spec.signature.push_back(op);
    }
    spec.identities.insert(spec.identities.end(), l.identities.begin(), l.identities.end());
  }
  spec.normalizer = [stack](const Term& t) { return flatten(evaluate(*stack, t)); };
  spec.layers = stack;
  return spec;
}

}  // namespace

TheorySpec composite_theory(const DistributiveLaw& law, bool verify) {
  if (verify) {
    auto check = check_law_axioms(law, Sampler{});
    if (!check.ok()) {
      throw structural_error("law '" + law.name + "' fails its axioms: " + check.summary.failures.front().dump());
    }
  }
  auto stack = std::make_shared<LayerStack>();
  stack->layers = {law.outer, law.inner};
  stack->laws.emplace(std::make_pair(1, 0), law);
  return series_spec(law.outer.name + "." + law.inner.name, stack);
}

TheorySpec composite_theory(std::string name, const DistributiveSeries& series) {
  return series_spec(std::move(name), std::make_shared<LayerStack>(series));
}

namespace {

// Multiplication of the composite over indices r (a run of layers r, r) at
// position `off`, bracketed as r0 (r1 ... ) when `head_first`, else as
// (... r_{m-2}) r_{m-1}.
void mult_steps(std::size_t m, std::size_t off, bool head_first, std::vector<LayerStep>& steps) {
  if (m == 1) {
    steps.push_back({LayerStep::merge, off});
    return;
  }
  if (head_first) {
    for (std::size_t l = off + m - 1; l >= off + 1; --l) steps.push_back({LayerStep::swap, l});
    steps.push_back({LayerStep::merge, off});
    mult_steps(m - 1, off + 1, head_first, steps);
  } else {
    for (std::size_t l = off + m - 1; l <= off + 2 * m - 3; ++l) steps.push_back({LayerStep::swap, l});
    steps.push_back({LayerStep::merge, off + 2 * m - 2});
    mult_steps(m - 1, off, head_first, steps);
  }
}

}  // namespace

Report check_yang_baxter(const DistributiveSeries& series, const Sampler& sampler) {
  auto start = std::chrono::steady_clock::now();
  Report report;
  report.subject = "yang_baxter";
  report.seed = sampler.seed;
  const std::size_t n = series.layers.size();
  report.bounds = {{"layers", static_cast<long long>(n)},
                   {"samples", static_cast<long long>(sampler.samples)},
                   {"maxDepth", static_cast<long long>(sampler.max_depth)},
                   {"maxWidth", static_cast<long long>(sampler.max_width)},
                   {"maxSize", static_cast<long long>(sampler.max_size)}};
  std::mt19937_64 rng(sampler.seed);

  auto record = [&](nlohmann::json base, const Layered& input, auto left, auto right) {
    try {
      Layered l = left();
      Layered r = right();
      if (l == r) {
        report.pass();
      } else {
        base.update(witness(input, l, r));
        report.fail(base);
      }
    } catch (const std::exception& ex) {
      base["input"] = describe(input);
      base["error"] = ex.what();
      report.fail(base);
    }
  };

  std::size_t triples = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      for (std::size_t k = 0; k < j; ++k) {
        ++triples;
        std::vector<std::size_t> idx{i, j, k};
        Layers ls = layers_of(series, idx);
        for (std::size_t s = 0; s < sampler.samples; ++s) {
          Layered e = sample_layered(ls, draw_arity(sampler, rng), sampler.max_depth, sampler.max_width,
                                     sampler.max_size, rng);
          auto path = [&](std::vector<LayerStep> steps) {
            return [&series, idx, &e, steps] {
              auto v = idx;
              return run_steps(series, v, e, steps);
            };
          };
          using S = LayerStep;
          record({{"kind", "hexagon"}, {"triple", {i, j, k}}}, e,
                 path({{S::swap, 0}, {S::swap, 1}, {S::swap, 0}}),
                 path({{S::swap, 1}, {S::swap, 0}, {S::swap, 1}}));
        }
      }
    }
  }
  report.details["triples"] = triples;

  if (n >= 2) {
    std::vector<std::size_t> idx;
    for (int copy = 0; copy < 2; ++copy) {
      for (std::size_t i = 0; i < n; ++i) idx.push_back(i);
    }
    Layers ls = layers_of(series, idx);
    std::vector<LayerStep> head, tail;
    mult_steps(n, 0, true, head);
    mult_steps(n, 0, false, tail);
    std::size_t depth = std::min<std::size_t>(sampler.max_depth, 2);
    std::size_t width = std::min<std::size_t>(sampler.max_width, 2);
    for (std::size_t s = 0; s < sampler.samples; ++s) {
      Layered e = sample_layered(ls, draw_arity(sampler, rng), depth, width, 2 * sampler.max_size, rng);
      auto run = [&](const std::vector<LayerStep>& steps) {
        return [&] {
          auto v = idx;
          return run_steps(series, v, e, steps);
        };
      };
      record({{"kind", "bracketing"}}, e, run(head), run(tail));
      record({{"kind", "normalizer"}}, e, run(head), [&] { return evaluate(series, flatten(e)); });
    }
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// Built-in laws.

namespace laws {

namespace {

constexpr std::size_t kExpansionLimit = 200000;

LayerSwap expansion(OperationSymbol mul, std::optional<OperationSymbol> unit, bool mutant) {
  return [mul, unit, mutant](const Layered& in) {
    auto letters = word_of(in.shape);
    std::map<std::vector<std::size_t>, long long> acc{{{}, 1}};
    for (auto letter : letters) {
      auto coef = coefficients_of(in.slots.at(letter).shape);
      if (mutant && letters.size() >= 2 && !coef.empty()) coef = {*coef.begin()};
      std::map<std::vector<std::size_t>, long long> next;
      for (const auto& [w, c] : acc) {
        for (const auto& [a, d] : coef) {
          auto w2 = w;
          w2.push_back(a);
          next[w2] += c * d;
        }
      }
      if (next.size() > kExpansionLimit) throw std::length_error("expansion exceeds limit");
      acc = std::move(next);
    }
    std::vector<Layered> slots;
    std::map<std::size_t, long long> combo;
    for (const auto& [w, c] : acc) {
      if (c == 0) continue;
      combo[slots.size()] = c;
      slots.emplace_back(make_word(w, mul, unit));
    }
    return Layered(make_combination(combo), std::move(slots));
  };
}

std::vector<Layered> atom_slots(std::size_t n) {
  std::vector<Layered> out;
  for (std::size_t j = 0; j < n; ++j) out.emplace_back(Term::var(j));
  return out;
}

std::size_t atom_bound(const Layered& in) {
  std::size_t b = 0;
  for (const auto& s : in.slots) b = std::max(b, s.shape.var_bound());
  return b;
}

}  // namespace

DistributiveLaw ring() {
  return {"ring", builtin::monoid(), builtin::abelian_group(), expansion(ops::mul, ops::one, false)};
}

DistributiveLaw semigroup_ring() {
  return {"semigroup_ring", builtin::semigroup(), builtin::abelian_group(),
          expansion(ops::smul, std::nullopt, false)};
}

DistributiveLaw mutant_ring() {
  return {"mutant_ring", builtin::monoid(), builtin::abelian_group(), expansion(ops::mul, ops::one, true)};
}

DistributiveLaw pointed_semigroup() {
  return {"pointed_semigroup", builtin::semigroup(), builtin::pointed(), [](const Layered& in) {
            std::vector<std::size_t> kept;
            for (auto letter : word_of(in.shape)) {
              const Term& s = in.slots.at(letter).shape;
              if (s.is_var()) kept.push_back(s.index());
            }
            if (kept.empty()) return Layered(Term::constant(ops::pt));
            return Layered(Term::var(0), {Layered(make_word(kept, ops::smul, std::nullopt))});
          }};
}

DistributiveLaw pointed_abelian() {
  return {"pointed_abelian", builtin::pointed(), builtin::abelian_group(), [](const Layered& in) {
            if (!in.shape.is_var()) return Layered(Term::var(0), {Layered(Term::constant(ops::pt))});
            const Term& sum = in.slots.at(in.shape.index()).shape;
            return Layered(sum, atom_slots(sum.var_bound()));
          }};
}

DistributiveLaw identity(TheorySpec inner, TheorySpec outer) {
  bool inner_trivial = inner.signature.empty();
  if (!inner_trivial && !outer.signature.empty()) {
    throw structural_error("identity law needs the identity theory on one side");
  }
  std::string name = "identity:" + inner.name + "/" + outer.name;
  if (inner_trivial) {
    return {name, std::move(inner), std::move(outer), [](const Layered& in) {
              if (!in.shape.is_var()) throw structural_error("identity layer holds an operation");
              return Layered(in.slots.at(in.shape.index()).shape, atom_slots(atom_bound(in)));
            }};
  }
  return {name, std::move(inner), std::move(outer), [](const Layered& in) {
            std::vector<std::size_t> atoms;
            for (const auto& s : in.slots) {
              if (!s.shape.is_var()) throw structural_error("identity layer holds an operation");
              atoms.push_back(s.shape.index());
            }
            return Layered(Term::var(0), {Layered(rename(in.shape, atoms))});
          }};
}

DistributiveSeries ring_series() {
  DistributiveSeries s;
  s.layers = {builtin::abelian_group(), builtin::pointed(), builtin::semigroup()};
  s.laws.emplace(std::make_pair(1, 0), pointed_abelian());
  s.laws.emplace(std::make_pair(2, 0), semigroup_ring());
  s.laws.emplace(std::make_pair(2, 1), pointed_semigroup());
  return s;
}

DistributiveLaw pointed_abelian_zero() {
  return {"pointed_abelian_zero", builtin::pointed(), builtin::abelian_group(), [](const Layered& in) {
            if (!in.shape.is_var()) return Layered(Term::constant(ops::zero));
            const Term& sum = in.slots.at(in.shape.index()).shape;
            return Layered(sum, atom_slots(sum.var_bound()));
          }};
}

DistributiveSeries mutant_ring_series() {
  DistributiveSeries s = ring_series();
  s.laws.at({1, 0}) = pointed_abelian_zero();
  return s;
}

DistributiveSeries identity_series() {
  DistributiveSeries s;
  s.layers = {builtin::abelian_group(), builtin::identity(), builtin::semigroup()};
  s.laws.emplace(std::make_pair(1, 0), identity(builtin::identity(), builtin::abelian_group()));
  s.laws.emplace(std::make_pair(2, 0), semigroup_ring());
  s.laws.emplace(std::make_pair(2, 1), identity(builtin::semigroup(), builtin::identity()));
  return s;
}

}  // namespace laws

namespace builtin {

TheorySpec ring() {
  TheorySpec t = composite_theory(laws::ring(), false);
  t.name = "ring";
  return t;
}

TheorySpec monoid_composite() {
  TheorySpec t = composite_theory(laws::pointed_semigroup(), false);
  t.name = "monoid_composite";
  return t;
}

TheorySpec ring3() { return composite_theory("ring3", laws::ring_series()); }

}  // namespace builtin

}  // namespace lawvere

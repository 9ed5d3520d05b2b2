#include "lawvere/factorization.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include "lawvere/distlaw.hpp"
#include "lawvere/term_text.hpp"

namespace lawvere {

namespace {

const LayerStack& two_layers(const TheorySpec& composite) {
  if (!composite.layers || composite.layers->layers.size() != 2) {
    throw structural_error("theory '" + composite.name + "' is not a two-layer composite");
  }
  return *composite.layers;
}

// Maximal subterms not headed by an operation of `outer`, left to right.
void leaves(const TheorySpec& outer, const Term& t, std::vector<Term>& out) {
  if (!t.is_var() && outer.owns(t.op().id)) {
    for (const auto& a : t.args()) leaves(outer, a, out);
  } else {
    out.push_back(t);
  }
}

Term replace_leaves(const TheorySpec& outer, const Term& t, const std::map<Term, std::size_t>& index) {
  if (!t.is_var() && outer.owns(t.op().id)) {
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(replace_leaves(outer, a, index));
    return Term::app(t.op(), std::move(args));
  }
  return Term::var(index.at(t));
}

std::vector<Term> renamed(const TheorySpec& theory, const std::vector<Term>& ts, const std::vector<std::size_t>& f) {
  std::vector<Term> out;
  for (const auto& t : ts) out.push_back(normalize(theory, rename(t, f)));
  return out;
}

FactorizationPair pair_of(const TheorySpec& a, const TheorySpec& b, std::size_t k, std::vector<Term> left,
                          std::vector<Term> right) {
  FactorizationPair p;
  p.middle = left.size();
  p.left = make_morphism(a, k, std::move(left));
  p.right = make_morphism(b, p.middle, std::move(right));
  return p;
}

// Variables of the right part in order of first use.
std::vector<std::size_t> first_use(const FactorizationPair& p) {
  std::vector<std::size_t> order;
  std::vector<bool> seen(p.middle, false);
  auto walk = [&](auto&& self, const Term& t) -> void {
    if (t.is_var()) {
      if (!seen[t.index()]) {
        seen[t.index()] = true;
        order.push_back(t.index());
      }
      return;
    }
    for (const auto& a : t.args()) self(self, a);
  };
  for (const auto& c : p.right.components) walk(walk, c);
  return order;
}

bool same_endpoints(const FactorizationPair& p, const FactorizationPair& q) {
  return p.left.source == q.left.source && p.right.target == q.right.target;
}

ZigzagStep reversed(const ZigzagStep& s) { return {s.alpha, !s.forward}; }

using PairKey = std::pair<std::vector<Term>, std::vector<Term>>;
PairKey key_of(const FactorizationPair& p) { return {p.left.components, p.right.components}; }

// Injective functions [n] -> [m], lexicographic.
std::vector<BaseFunction> injections(std::size_t n, std::size_t m) {
  std::vector<BaseFunction> out;
  if (n > m) return out;
  std::vector<std::size_t> t(n);
  std::vector<bool> used(m, false);
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == n) {
      out.emplace_back(n, m, t);
      return;
    }
    for (std::size_t v = 0; v < m; ++v) {
      if (used[v]) continue;
      used[v] = true;
      t[pos] = v;
      self(self, pos + 1);
      used[v] = false;
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace

const TheorySpec& inner_layer(const TheorySpec& composite) { return two_layers(composite).layers[1]; }
const TheorySpec& outer_layer(const TheorySpec& composite) { return two_layers(composite).layers[0]; }

FactorizationPair make_factorization(const TheorySpec& composite, const TheoryMorphism& left,
                                     const TheoryMorphism& right) {
  const auto& a = inner_layer(composite);
  const auto& b = outer_layer(composite);
  if (left.components.size() != right.source) {
    throw structural_error("left part has " + std::to_string(left.components.size()) +
                           " components but the right part expects " + std::to_string(right.source));
  }
  for (const auto& c : left.components) {
    if (!a.covers(c)) throw structural_error("left component " + print_term(c) + " is not a pure " + a.name + " term");
  }
  for (const auto& c : right.components) {
    if (!b.covers(c)) throw structural_error("right component " + print_term(c) + " is not a pure " + b.name + " term");
  }
  return pair_of(a, b, left.source, left.components, right.components);
}

TheoryMorphism recompose(const TheorySpec& composite, const FactorizationPair& p) {
  return compose(composite, p.right, p.left);
}

FactorizationPair factorize(const TheorySpec& composite, const TheoryMorphism& f) {
  const auto& a = inner_layer(composite);
  const auto& b = outer_layer(composite);
  std::vector<Term> middle;
  std::map<Term, std::size_t> index;
  for (std::size_t i = 0; i < f.components.size(); ++i) {
    const auto& c = f.components[i];
    if (!c.well_formed(f.source)) {
      throw structural_error("component " + print_term(c) + " is not over " + std::to_string(f.source) + " variables");
    }
    if (!(normalize(composite, c) == c)) {
      throw structural_error("component " + std::to_string(i) + " (" + print_term(c) + ") is not in normal form");
    }
    std::vector<Term> found;
    leaves(b, c, found);
    for (auto& t : found) {
      if (index.emplace(t, middle.size()).second) middle.push_back(t);
    }
  }
  std::vector<Term> right;
  for (const auto& c : f.components) right.push_back(replace_leaves(b, c, index));
  for (const auto& t : middle) {
    if (!a.covers(t)) throw structural_error("subterm " + print_term(t) + " mixes the layers");
  }
  return pair_of(a, b, f.source, std::move(middle), std::move(right));
}

FactorizationPair canonicalize(const TheorySpec& composite, const FactorizationPair& p) {
  return factorize(composite, recompose(composite, p));
}

bool valid_step(const TheorySpec& composite, const FactorizationPair& p, const FactorizationPair& q,
                const ZigzagStep& step) {
  const auto& a = inner_layer(composite);
  const auto& b = outer_layer(composite);
  if (!same_endpoints(p, q)) return false;
  const FactorizationPair& from = step.forward ? p : q;
  const FactorizationPair& to = step.forward ? q : p;
  if (step.alpha.source != to.middle || step.alpha.target != from.middle) return false;
  for (std::size_t t = 0; t < to.middle; ++t) {
    if (!(normalize(a, to.left.components[t]) == normalize(a, from.left.components[step.alpha(t)]))) return false;
  }
  std::vector<Term> want;
  for (const auto& c : from.right.components) want.push_back(normalize(b, c));
  return renamed(b, to.right.components, step.alpha.table) == want;
}

std::optional<std::size_t> first_invalid_step(const TheorySpec& composite, const ZigzagWitness& w) {
  if (w.nodes.size() != w.steps.size() + 1) return 0;
  for (std::size_t i = 0; i < w.steps.size(); ++i) {
    if (!valid_step(composite, w.nodes[i], w.nodes[i + 1], w.steps[i])) return i;
  }
  return std::nullopt;
}

std::optional<ZigzagStep> find_single_step(const TheorySpec& composite, const FactorizationPair& p,
                                           const FactorizationPair& q) {
  for (const auto& alpha : all_functions(q.middle, p.middle)) {
    ZigzagStep s{alpha, true};
    if (valid_step(composite, p, q, s)) return s;
  }
  for (const auto& alpha : all_functions(p.middle, q.middle)) {
    ZigzagStep s{alpha, false};
    if (valid_step(composite, p, q, s)) return s;
  }
  return std::nullopt;
}

namespace {

// p, then p with equal left components merged, then with unused ones dropped
// and the rest in order of first use, then the canonical form.
std::optional<ZigzagWitness> chain_to_canonical(const TheorySpec& composite, const FactorizationPair& p) {
  const auto& a = inner_layer(composite);
  const auto& b = outer_layer(composite);
  ZigzagWitness w;
  w.nodes.push_back(p);

  std::vector<Term> distinct;
  std::vector<std::size_t> e(p.middle);
  for (std::size_t t = 0; t < p.middle; ++t) {
    auto it = std::find(distinct.begin(), distinct.end(), p.left.components[t]);
    e[t] = static_cast<std::size_t>(it - distinct.begin());
    if (it == distinct.end()) distinct.push_back(p.left.components[t]);
  }
  if (distinct.size() < p.middle) {
    auto merged = pair_of(a, b, p.left.source, distinct, renamed(b, p.right.components, e));
    w.steps.push_back({BaseFunction(p.middle, merged.middle, e), false});
    w.nodes.push_back(std::move(merged));
  }

  const FactorizationPair cur = w.nodes.back();
  auto used = first_use(cur);
  bool identity = used.size() == cur.middle;
  for (std::size_t t = 0; t < used.size() && identity; ++t) identity = used[t] == t;
  if (!identity) {
    std::vector<std::size_t> inverse(cur.middle, 0);
    std::vector<Term> left;
    for (std::size_t t = 0; t < used.size(); ++t) {
      inverse[used[t]] = t;
      left.push_back(cur.left.components[used[t]]);
    }
    auto projected = pair_of(a, b, cur.left.source, std::move(left), renamed(b, cur.right.components, inverse));
    w.steps.push_back({BaseFunction(used.size(), cur.middle, used), true});
    w.nodes.push_back(std::move(projected));
  }

  const FactorizationPair last = w.nodes.back();
  const auto canon = canonicalize(composite, p);
  if (!(last == canon)) {
    if (last.middle != canon.middle) return std::nullopt;
    std::vector<std::size_t> pi(canon.middle);
    for (std::size_t t = 0; t < canon.middle; ++t) {
      auto it = std::find(last.left.components.begin(), last.left.components.end(), canon.left.components[t]);
      if (it == last.left.components.end()) return std::nullopt;
      pi[t] = static_cast<std::size_t>(it - last.left.components.begin());
    }
    ZigzagStep s{BaseFunction(canon.middle, last.middle, pi), true};
    if (!valid_step(composite, last, canon, s)) return std::nullopt;
    w.steps.push_back(s);
    w.nodes.push_back(canon);
  }
  return w;
}

ZigzagWitness reverse_chain(const ZigzagWitness& w) {
  ZigzagWitness r;
  r.nodes.assign(w.nodes.rbegin(), w.nodes.rend());
  for (auto it = w.steps.rbegin(); it != w.steps.rend(); ++it) r.steps.push_back(reversed(*it));
  return r;
}

std::optional<ZigzagWitness> bfs(const TheorySpec& composite, const FactorizationPair& from,
                                 const FactorizationPair& to, const std::vector<Term>& pool, std::size_t max_steps,
                                 std::size_t max_middle, std::size_t max_nodes) {
  const auto& a = inner_layer(composite);
  const auto& b = outer_layer(composite);
  struct Node {
    FactorizationPair pair;
    std::size_t parent;
    ZigzagStep step;
    std::size_t depth;
  };
  std::vector<Node> nodes{{from, 0, {}, 0}};
  std::map<PairKey, std::size_t> seen{{key_of(from), 0}};
  const auto target = key_of(to);

  auto finish = [&](std::size_t i) {
    ZigzagWitness w;
    std::vector<std::size_t> path;
    for (std::size_t j = i; j != 0; j = nodes[j].parent) path.push_back(j);
    w.nodes.push_back(nodes[0].pair);
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      w.steps.push_back(nodes[*it].step);
      w.nodes.push_back(nodes[*it].pair);
    }
    return w;
  };
  if (seen.count(target)) return finish(0);

  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (nodes[head].depth >= max_steps) continue;
    const FactorizationPair x = nodes[head].pair;
    const std::size_t depth = nodes[head].depth;
    std::optional<std::size_t> hit;
    auto offer = [&](FactorizationPair y, ZigzagStep step) {
      if (hit || nodes.size() >= max_nodes) return;
      auto k = key_of(y);
      if (seen.count(k)) return;
      seen.emplace(k, nodes.size());
      nodes.push_back({std::move(y), head, std::move(step), depth + 1});
      if (k == target) hit = nodes.size() - 1;
    };

    // Projections and permutations: Y.left = X.left o u with u injective and
    // covering the variables X.right uses.
    const auto used = first_use(x);
    std::vector<bool> needed(x.middle, false);
    for (auto v : used) needed[v] = true;
    for (std::size_t n = used.size(); n <= x.middle; ++n) {
      for (const auto& u : injections(n, x.middle)) {
        std::vector<bool> hitv(x.middle, false);
        for (auto v : u.table) hitv[v] = true;
        bool covers = true;
        for (std::size_t v = 0; v < x.middle; ++v) covers = covers && (!needed[v] || hitv[v]);
        if (!covers) continue;
        std::vector<std::size_t> inverse(x.middle, 0);
        std::vector<Term> left;
        for (std::size_t t = 0; t < n; ++t) {
          inverse[u(t)] = t;
          left.push_back(x.left.components[u(t)]);
        }
        offer(pair_of(a, b, x.left.source, std::move(left), renamed(b, x.right.components, inverse)), {u, true});
      }
    }
    // Merging two equal left components.
    for (std::size_t i = 0; i < x.middle; ++i) {
      for (std::size_t j = i + 1; j < x.middle; ++j) {
        if (!(x.left.components[i] == x.left.components[j])) continue;
        std::vector<std::size_t> e(x.middle);
        std::vector<Term> left;
        for (std::size_t t = 0; t < x.middle; ++t) {
          e[t] = t < j ? t : (t == j ? i : t - 1);
          if (t != j) left.push_back(x.left.components[t]);
        }
        const std::size_t m = left.size();
        offer(pair_of(a, b, x.left.source, std::move(left), renamed(b, x.right.components, e)),
              {BaseFunction(x.middle, m, e), false});
      }
    }
    // Adding an unused left component.
    if (x.middle + 1 <= max_middle) {
      for (const auto& s : pool) {
        for (std::size_t pos = 0; pos <= x.middle; ++pos) {
          std::vector<std::size_t> shift(x.middle);
          std::vector<Term> left = x.left.components;
          left.insert(left.begin() + static_cast<std::ptrdiff_t>(pos), s);
          for (std::size_t t = 0; t < x.middle; ++t) shift[t] = t < pos ? t : t + 1;
          offer(pair_of(a, b, x.left.source, std::move(left), renamed(b, x.right.components, shift)),
                {BaseFunction(x.middle, x.middle + 1, shift), false});
        }
      }
    }
    if (hit) return finish(*hit);
    if (nodes.size() >= max_nodes) break;
  }
  return std::nullopt;
}

}  // namespace

std::optional<ZigzagWitness> constructive_witness(const TheorySpec& composite, const FactorizationPair& p,
                                                  const FactorizationPair& q) {
  if (p == q) return ZigzagWitness{{p}, {}};
  auto left = chain_to_canonical(composite, p);
  auto right = chain_to_canonical(composite, q);
  if (!left || !right || !(left->nodes.back() == right->nodes.back())) return std::nullopt;
  auto back = reverse_chain(*right);
  ZigzagWitness w = *left;
  w.nodes.insert(w.nodes.end(), back.nodes.begin() + 1, back.nodes.end());
  w.steps.insert(w.steps.end(), back.steps.begin(), back.steps.end());
  return w;
}

std::optional<ZigzagWitness> search_witness(const TheorySpec& composite, const FactorizationPair& p,
                                            const FactorizationPair& q, std::size_t max_steps,
                                            std::size_t max_middle, std::size_t max_nodes) {
  if (!same_endpoints(p, q)) return std::nullopt;
  std::vector<Term> pool;
  for (const auto* side : {&p, &q}) {
    for (const auto& t : side->left.components) {
      if (std::find(pool.begin(), pool.end(), t) == pool.end()) pool.push_back(t);
    }
  }
  if (auto w = bfs(composite, p, q, pool, max_steps, max_middle, max_nodes)) return w;
  if (auto w = bfs(composite, q, p, pool, max_steps, max_middle, max_nodes)) return reverse_chain(*w);
  return std::nullopt;
}

ZigzagDecision zigzag_equivalent(const TheorySpec& composite, const FactorizationPair& p,
                                 const FactorizationPair& q, std::size_t bound) {
  if (!same_endpoints(p, q)) {
    throw structural_error("factorizations of " + std::to_string(p.left.source) + "->" +
                           std::to_string(p.right.target) + " and " + std::to_string(q.left.source) + "->" +
                           std::to_string(q.right.target) + " cannot be compared");
  }
  ZigzagDecision d;
  d.equivalent = canonicalize(composite, p) == canonicalize(composite, q);
  if (!d.equivalent) return d;
  if (p == q) {
    d.witness = ZigzagWitness{{p}, {}};
    return d;
  }
  if (bound == 0) return d;
  d.witness = search_witness(composite, p, q, bound, std::max(p.middle, q.middle) + bound);
  d.searched = d.witness.has_value();
  if (!d.witness) d.witness = constructive_witness(composite, p, q);
  return d;
}

nlohmann::json factorization_to_json(const FactorizationPair& p) {
  nlohmann::json left = nlohmann::json::array(), right = nlohmann::json::array();
  for (const auto& c : p.left.components) left.push_back(print_term(c));
  for (const auto& c : p.right.components) right.push_back(print_term(c));
  return {{"source", p.left.source}, {"middle", p.middle}, {"target", p.right.target}, {"left", left}, {"right", right}};
}

nlohmann::json witness_to_json(const ZigzagWitness& w) {
  nlohmann::json nodes = nlohmann::json::array(), steps = nlohmann::json::array();
  for (const auto& n : w.nodes) nodes.push_back(factorization_to_json(n));
  for (const auto& s : w.steps) {
    steps.push_back({{"alpha", s.alpha.table}, {"direction", s.forward ? "forward" : "backward"}});
  }
  return {{"nodes", nodes}, {"steps", steps}};
}

namespace {

nlohmann::json morphism_text(const TheoryMorphism& f) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : f.components) comps.push_back(print_term(c));
  return {{"source", f.source}, {"target", f.target}, {"components", comps}};
}

// One middle coordinate per leaf occurrence.
FactorizationPair raw_factorization(const TheorySpec& composite, const TheoryMorphism& f) {
  const auto& a = inner_layer(composite);
  const auto& b = outer_layer(composite);
  std::vector<Term> left, right;
  for (const auto& c : f.components) {
    auto walk = [&](auto&& self, const Term& t) -> Term {
      if (!t.is_var() && b.owns(t.op().id)) {
        std::vector<Term> args;
        for (const auto& x : t.args()) args.push_back(self(self, x));
        return Term::app(t.op(), std::move(args));
      }
      left.push_back(t);
      return Term::var(left.size() - 1);
    };
    right.push_back(walk(walk, c));
  }
  return pair_of(a, b, f.source, std::move(left), std::move(right));
}

// Every tuple of m terms from `terms`.
template <class Visit>
void for_each_tuple(const std::vector<Term>& terms, std::size_t m, Visit&& visit) {
  std::vector<std::size_t> pick(m, 0);
  if (m > 0 && terms.empty()) return;
  while (true) {
    std::vector<Term> comps;
    for (auto i : pick) comps.push_back(terms[i]);
    visit(std::move(comps));
    std::size_t pos = m;
    while (pos > 0) {
      --pos;
      if (++pick[pos] < terms.size()) break;
      pick[pos] = 0;
      if (pos == 0) return;
    }
    if (m == 0) return;
  }
}

}  // namespace

Report check_fs_over_F(const TheorySpec& composite, std::size_t arity_bound, std::size_t size_bound) {
  auto start = std::chrono::steady_clock::now();
  const auto& a = inner_layer(composite);
  const auto& b = outer_layer(composite);
  Report report;
  report.subject = "fs_over_F:" + composite.name;
  report.bounds = {{"arity", static_cast<long long>(arity_bound)}, {"size", static_cast<long long>(size_bound)}};

  std::size_t morphisms = 0, alternatives = 0, non_strict = 0;
  nlohmann::json non_strict_example;
  for (std::size_t k = 0; k <= arity_bound; ++k) {
    const auto terms = enumerate_terms(composite, k, size_bound);
    for (std::size_t m = 0; m <= arity_bound; ++m) {
      for_each_tuple(terms, m, [&](std::vector<Term> comps) {
        ++morphisms;
        TheoryMorphism f{k, m, std::move(comps)};
        FactorizationPair canon;
        try {
          canon = factorize(composite, f);
        } catch (const structural_error& e) {
          report.fail({{"kind", "existence"}, {"morphism", morphism_text(f)}, {"reason", e.what()}});
          return;
        }
        const bool exists = recompose(composite, canon) == f && canonicalize(composite, canon) == canon;
        report.check(exists, {{"kind", "existence"},
                              {"morphism", morphism_text(f)},
                              {"factorization", factorization_to_json(canon)}});
        if (!exists) return;

        std::vector<std::pair<std::string, FactorizationPair>> alts;
        alts.emplace_back("per_occurrence", raw_factorization(composite, f));
        if (canon.middle > 0 || k > 0) {
          auto left = canon.left.components;
          left.push_back(canon.middle > 0 ? canon.left.components[0] : Term::var(0));
          alts.emplace_back("extra_coordinate", pair_of(a, b, k, std::move(left), canon.right.components));
        }
        if (canon.middle >= 2) {
          std::vector<std::size_t> rev(canon.middle);
          std::vector<Term> left;
          for (std::size_t t = 0; t < canon.middle; ++t) {
            rev[t] = canon.middle - 1 - t;
            left.push_back(canon.left.components[canon.middle - 1 - t]);
          }
          alts.emplace_back("reversed", pair_of(a, b, k, std::move(left), renamed(b, canon.right.components, rev)));
        }

        bool distinct = false;
        for (const auto& [kind, alt] : alts) {
          ++alternatives;
          distinct = distinct || !(alt == canon);
          nlohmann::json witness = {{"kind", "uniqueness"},
                                    {"alternative", kind},
                                    {"morphism", morphism_text(f)},
                                    {"canonical", factorization_to_json(canon)},
                                    {"factorization", factorization_to_json(alt)}};
          if (!(recompose(composite, alt) == f)) {
            witness["reason"] = "alternative does not recompose";
            report.fail(witness);
            continue;
          }
          auto d = zigzag_equivalent(composite, alt, canon, 0);
          auto chain = d.equivalent ? constructive_witness(composite, alt, canon) : std::nullopt;
          if (!chain || first_invalid_step(composite, *chain)) {
            witness["reason"] = d.equivalent ? "no valid zigzag" : "not equivalent";
            report.fail(witness);
            continue;
          }
          report.pass();
        }
        if (distinct) {
          ++non_strict;
          if (non_strict_example.is_null()) non_strict_example = morphism_text(f);
        }
      });
    }
  }
  report.details["morphisms"] = morphisms;
  report.details["alternatives"] = alternatives;
  report.details["nonStrict"] = non_strict;
  report.details["nonStrictExample"] = non_strict_example;
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Report check_strict_fs(const FiniteCategory& c, const std::vector<bool>& in_l, const std::vector<bool>& in_r) {
  auto start = std::chrono::steady_clock::now();
  Report report;
  report.subject = "strict_fs";
  const std::size_t n = c.arrow_count();
  report.bounds = {{"objects", static_cast<long long>(c.object_count())}, {"morphisms", static_cast<long long>(n)}};
  if (in_l.size() != n || in_r.size() != n) throw structural_error("membership flags must cover every morphism");
  auto name = [&](std::size_t f) { return c.arrow(f).name; };

  for (const auto* side : {&in_l, &in_r}) {
    const char* which = side == &in_l ? "L" : "R";
    for (std::size_t o = 0; o < c.object_count(); ++o) {
      if (!(*side)[c.identity(o)]) {
        report.fail({{"kind", "subcategory"}, {"side", which}, {"missing", name(c.identity(o))}});
      }
    }
    for (std::size_t f = 0; f < n; ++f) {
      for (std::size_t g = 0; g < n; ++g) {
        if (!(*side)[f] || !(*side)[g] || c.target(f) != c.source(g)) continue;
        std::size_t h = c.compose(g, f);
        if (!(*side)[h]) {
          report.fail({{"kind", "subcategory"}, {"side", which}, {"f", name(f)}, {"g", name(g)}, {"missing", name(h)}});
        }
      }
    }
  }
  if (!report.ok()) {
    report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
  }

  // fact[h] = (l, r) with h = r o l.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> fact(n);
  for (std::size_t l = 0; l < n; ++l) {
    if (!in_l[l]) continue;
    for (std::size_t r = 0; r < n; ++r) {
      if (in_r[r] && c.target(l) == c.source(r)) fact[c.compose(r, l)].emplace_back(l, r);
    }
  }
  bool unique = true;
  for (std::size_t h = 0; h < n; ++h) {
    nlohmann::json found = nlohmann::json::array();
    for (auto [l, r] : fact[h]) found.push_back({{"l", name(l)}, {"r", name(r)}});
    const bool ok = fact[h].size() == 1;
    unique = unique && ok;
    report.check(ok, {{"kind", "factorization"}, {"morphism", name(h)}, {"factorizations", found}});
  }
  report.details["unique"] = unique;
  report.details["lawChecked"] = unique;
  if (!unique) {
    report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
  }

  // lambda(r, l) for r then l: the factorization of l o r.
  auto lambda = [&](std::size_t r, std::size_t l) { return fact[c.compose(l, r)].front(); };
  auto pair_json = [&](std::pair<std::size_t, std::size_t> p) {
    return nlohmann::json{{"l", name(p.first)}, {"r", name(p.second)}};
  };
  std::size_t law_size = 0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t l = 0; l < n; ++l) {
      if (in_r[r] && in_l[l] && c.target(r) == c.source(l)) ++law_size;
    }
  }
  report.details["lawSize"] = law_size;

  for (std::size_t l = 0; l < n; ++l) {
    if (!in_l[l]) continue;
    auto got = lambda(c.identity(c.source(l)), l);
    report.check(got == std::make_pair(l, c.identity(c.target(l))),
                 {{"kind", "unit-R"}, {"l", name(l)}, {"result", pair_json(got)}});
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (!in_r[r]) continue;
    auto got = lambda(r, c.identity(c.target(r)));
    report.check(got == std::make_pair(c.identity(c.source(r)), r),
                 {{"kind", "unit-L"}, {"r", name(r)}, {"result", pair_json(got)}});
  }
  for (std::size_t r1 = 0; r1 < n; ++r1) {
    if (!in_r[r1]) continue;
    for (std::size_t r2 = 0; r2 < n; ++r2) {
      if (!in_r[r2] || c.target(r1) != c.source(r2)) continue;
      for (std::size_t l = 0; l < n; ++l) {
        if (!in_l[l] || c.target(r2) != c.source(l)) continue;
        auto [l1, r2p] = lambda(r2, l);
        auto [l2, r1p] = lambda(r1, l1);
        auto want = std::make_pair(l2, c.compose(r2p, r1p));
        auto got = lambda(c.compose(r2, r1), l);
        report.check(got == want, {{"kind", "mult-R"},
                                   {"r1", name(r1)},
                                   {"r2", name(r2)},
                                   {"l", name(l)},
                                   {"result", pair_json(got)},
                                   {"expected", pair_json(want)}});
      }
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (!in_r[r]) continue;
    for (std::size_t l1 = 0; l1 < n; ++l1) {
      if (!in_l[l1] || c.target(r) != c.source(l1)) continue;
      for (std::size_t l2 = 0; l2 < n; ++l2) {
        if (!in_l[l2] || c.target(l1) != c.source(l2)) continue;
        auto [l1p, r1] = lambda(r, l1);
        auto [l2p, r2] = lambda(r1, l2);
        auto want = std::make_pair(c.compose(l2p, l1p), r2);
        auto got = lambda(r, c.compose(l2, l1));
        report.check(got == want, {{"kind", "mult-L"},
                                   {"r", name(r)},
                                   {"l1", name(l1)},
                                   {"l2", name(l2)},
                                   {"result", pair_json(got)},
                                   {"expected", pair_json(want)}});
      }
    }
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace lawvere

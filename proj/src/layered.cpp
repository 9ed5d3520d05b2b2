#include "lawvere/layered.hpp"

#include <algorithm>
#include <numeric>

#include "lawvere/term_text.hpp"

namespace lawvere {

bool operator==(const Layered& a, const Layered& b) {
  return a.shape == b.shape && a.slots == b.slots;
}

std::strong_ordering operator<=>(const Layered& a, const Layered& b) {
  if (auto c = a.shape <=> b.shape; c != 0) return c;
  std::size_t n = std::min(a.slots.size(), b.slots.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.slots[i] <=> b.slots[i]; c != 0) return c;
  }
  return a.slots.size() <=> b.slots.size();
}

namespace {

const OperationSymbol* owned(const TheorySpec& theory, const OperationSymbol& op) {
  const auto* found = theory.find(op.id);
  return found && found->arity == op.arity ? found : nullptr;
}

void used_vars(const Term& t, std::vector<bool>& used) {
  if (t.is_var()) {
    used[t.index()] = true;
    return;
  }
  for (const auto& a : t.args()) used_vars(a, used);
}

Layered canon(const Layers& layers, std::size_t level, const Layered& node) {
  const TheorySpec& theory = *layers[level];
  if (level + 1 == layers.size()) {
    if (!node.slots.empty()) throw structural_error("bottom layer has slots");
    return Layered(normalize(theory, node.shape));
  }
  if (node.shape.var_bound() > node.slots.size()) {
    throw structural_error("shape mentions slot " + std::to_string(node.shape.var_bound() - 1) +
                           " but only " + std::to_string(node.slots.size()) + " exist");
  }
  std::vector<Layered> cs;
  cs.reserve(node.slots.size());
  for (const auto& s : node.slots) cs.push_back(canon(layers, level + 1, s));

  std::vector<Layered> uniq = cs;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  std::vector<std::size_t> map(cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) {
    map[i] = static_cast<std::size_t>(std::lower_bound(uniq.begin(), uniq.end(), cs[i]) - uniq.begin());
  }
  Term shape = normalize(theory, rename(node.shape, map));

  std::vector<bool> used(uniq.size(), false);
  used_vars(shape, used);
  std::vector<std::size_t> renum(uniq.size(), 0);
  std::vector<Layered> kept;
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    if (!used[i]) continue;
    renum[i] = kept.size();
    kept.push_back(std::move(uniq[i]));
  }
  if (kept.size() != uniq.size()) shape = normalize(theory, rename(shape, renum));
  return Layered(std::move(shape), std::move(kept));
}

Layered parse_layer(const Layers& layers, std::size_t level, const Term& t) {
  const TheorySpec& theory = *layers[level];
  auto complain = [&](const OperationSymbol& op) -> structural_error {
    for (std::size_t i = 0; i < layers.size(); ++i) {
      if (owned(*layers[i], op)) {
        return structural_error("layering violation: operation '" + op.id + "' of layer " +
                                std::to_string(i) + " occurs below layer " + std::to_string(level));
      }
    }
    return structural_error("unknown operation '" + op.id + "'");
  };
  if (level + 1 == layers.size()) {
    auto check = [&](auto&& self, const Term& u) -> void {
      if (u.is_var()) return;
      if (!owned(theory, u.op())) throw complain(u.op());
      for (const auto& a : u.args()) self(self, a);
    };
    check(check, t);
    return Layered(t);
  }
  std::vector<Term> slots;
  auto walk = [&](auto&& self, const Term& u) -> Term {
    if (!u.is_var() && owned(theory, u.op())) {
      std::vector<Term> args;
      for (const auto& a : u.args()) args.push_back(self(self, a));
      return Term::app(u.op(), std::move(args));
    }
    auto it = std::find(slots.begin(), slots.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - slots.begin());
    if (it == slots.end()) slots.push_back(u);
    return Term::var(idx);
  };
  Term shape = walk(walk, t);
  std::vector<Layered> children;
  for (const auto& s : slots) children.push_back(parse_layer(layers, level + 1, s));
  return Layered(std::move(shape), std::move(children));
}

Layered merge_at(const Layered& node, std::size_t level, std::size_t target, std::size_t depth) {
  if (level < target) {
    std::vector<Layered> slots;
    for (const auto& s : node.slots) slots.push_back(merge_at(s, level + 1, target, depth));
    return Layered(node.shape, std::move(slots));
  }
  std::vector<Term> shapes;
  std::vector<Layered> grand;
  bool bottom_child = level + 2 == depth;
  for (const auto& c : node.slots) {
    if (bottom_child) {
      shapes.push_back(c.shape);
      continue;
    }
    std::vector<std::size_t> shift(c.slots.size());
    std::iota(shift.begin(), shift.end(), grand.size());
    shapes.push_back(rename(c.shape, shift));
    grand.insert(grand.end(), c.slots.begin(), c.slots.end());
  }
  return Layered(substitute(node.shape, shapes), std::move(grand));
}

Layered swap_at(const Layers& before, const Layered& node, std::size_t level, std::size_t target,
                const LayerSwap& swap) {
  if (level < target) {
    std::vector<Layered> slots;
    for (const auto& s : node.slots) slots.push_back(swap_at(before, s, level + 1, target, swap));
    return Layered(node.shape, std::move(slots));
  }
  bool bottom_child = level + 2 == before.size();
  std::vector<Layered> atoms;
  std::vector<Layered> inner;
  for (const auto& c : node.slots) {
    if (bottom_child) {
      inner.emplace_back(c.shape);
      continue;
    }
    std::vector<std::size_t> shift(c.slots.size());
    std::iota(shift.begin(), shift.end(), atoms.size());
    inner.emplace_back(rename(c.shape, shift));
    atoms.insert(atoms.end(), c.slots.begin(), c.slots.end());
  }
  Layers pair{before[level], before[level + 1]};
  Layered out = swap(canon(pair, 0, Layered(node.shape, std::move(inner))));
  if (bottom_child) return out;
  std::vector<Layered> slots;
  for (const auto& s : out.slots) slots.emplace_back(s.shape, atoms);
  return Layered(out.shape, std::move(slots));
}

}  // namespace

Layered canonicalize(const Layers& layers, const Layered& e) {
  if (layers.empty()) throw structural_error("no layers");
  return canon(layers, 0, e);
}

Layered from_term(const Layers& layers, const Term& t) {
  if (layers.empty()) throw structural_error("no layers");
  return canon(layers, 0, parse_layer(layers, 0, t));
}

Term flatten(const Layered& e) {
  if (e.slots.empty()) return e.shape;
  std::vector<Term> inner;
  inner.reserve(e.slots.size());
  for (const auto& s : e.slots) inner.push_back(flatten(s));
  return substitute(e.shape, inner);
}

Layered insert_unit(const Layered& e, std::size_t level, std::size_t depth) {
  if (level == 0) return Layered(Term::var(0), {e});
  if (depth == 0) throw structural_error("unit inserted below the bottom layer");
  if (depth == 1) {
    if (level != 1) throw structural_error("unit level out of range");
    std::vector<Layered> slots;
    for (std::size_t i = 0; i < e.shape.var_bound(); ++i) slots.emplace_back(Term::var(i));
    return Layered(e.shape, std::move(slots));
  }
  std::vector<Layered> slots;
  for (const auto& s : e.slots) slots.push_back(insert_unit(s, level - 1, depth - 1));
  return Layered(e.shape, std::move(slots));
}

Layered merge_layers(const Layers& layers, const Layered& e, std::size_t level) {
  if (level + 1 >= layers.size()) throw structural_error("merge level out of range");
  if (layers[level]->name != layers[level + 1]->name) {
    throw structural_error("cannot merge layers '" + layers[level]->name + "' and '" +
                           layers[level + 1]->name + "'");
  }
  return canonicalize(merged(layers, level), merge_at(e, 0, level, layers.size()));
}

Layered swap_layers(const Layers& after, const Layered& e, std::size_t level, const LayerSwap& swap) {
  if (level + 1 >= after.size()) throw structural_error("swap level out of range");
  Layers before = swapped(after, level);
  return canonicalize(after, swap_at(before, e, 0, level, swap));
}

Layered rename_bottom(const Layered& e, std::span<const std::size_t> f) {
  if (e.slots.empty()) return Layered(rename(e.shape, f));
  std::vector<Layered> slots;
  for (const auto& s : e.slots) slots.push_back(rename_bottom(s, f));
  return Layered(e.shape, std::move(slots));
}

std::size_t bottom_var_bound(const Layered& e) {
  if (e.slots.empty()) return e.shape.var_bound();
  std::size_t b = 0;
  for (const auto& s : e.slots) b = std::max(b, bottom_var_bound(s));
  return b;
}

Layered random_layered(const Layers& layers, std::size_t k, std::size_t max_depth,
                       std::size_t max_width, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> width(1, std::max<std::size_t>(1, max_width));
  auto gen = [&](auto&& self, std::size_t level) -> Layered {
    if (level + 1 == layers.size()) return Layered(random_term(*layers[level], k, max_depth, rng));
    std::size_t w = width(rng);
    Term shape = random_term(*layers[level], w, max_depth, rng);
    std::vector<Layered> slots;
    for (std::size_t i = 0; i < w; ++i) slots.push_back(self(self, level + 1));
    return Layered(std::move(shape), std::move(slots));
  };
  return canonicalize(layers, gen(gen, 0));
}

std::string describe(const Layered& e) {
  std::string out = print_term(e.shape);
  if (e.slots.empty()) return out;
  out += "[";
  for (std::size_t i = 0; i < e.slots.size(); ++i) {
    if (i) out += "; ";
    out += describe(e.slots[i]);
  }
  return out + "]";
}

Layers swapped(Layers layers, std::size_t i) {
  std::swap(layers.at(i), layers.at(i + 1));
  return layers;
}

Layers merged(Layers layers, std::size_t i) {
  layers.erase(layers.begin() + static_cast<std::ptrdiff_t>(i) + 1);
  return layers;
}

}  // namespace lawvere

#include "lawvere/category.hpp"

#include <algorithm>
#include <map>

#include "lawvere/report.hpp"
#include "lawvere/theory.hpp"

namespace lawvere {

FiniteCategory::FiniteCategory(std::vector<std::string> objects, std::vector<Arrow> arrows,
                               std::vector<std::size_t> table)
    : objects_(std::move(objects)), arrows_(std::move(arrows)), table_(std::move(table)) {
  const std::size_t n = objects_.size(), m = arrows_.size();
  if (m < n) throw structural_error("category lists fewer arrows than identities");
  if (table_.size() != m * m) throw structural_error("composition table has wrong size");
  for (std::size_t i = 0; i < m; ++i) {
    const auto& a = arrows_[i];
    if (a.source >= n || a.target >= n) throw structural_error("arrow '" + a.name + "' has an unknown endpoint");
    if (i < n && (a.source != i || a.target != i)) throw structural_error("arrow " + std::to_string(i) + " must be an identity");
  }
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t f = 0; f < m; ++f) {
      std::size_t h = table_[g * m + f];
      bool composable = arrows_[f].target == arrows_[g].source;
      if (!composable) {
        if (h != npos) throw structural_error("composite of non-composable pair given");
        continue;
      }
      if (h >= m) throw structural_error("composite '" + arrows_[g].name + " o " + arrows_[f].name + "' missing");
      if (arrows_[h].source != arrows_[f].source || arrows_[h].target != arrows_[g].target) {
        throw structural_error("composite '" + arrows_[g].name + " o " + arrows_[f].name + "' has wrong endpoints");
      }
    }
  }
  for (std::size_t f = 0; f < m; ++f) {
    if (table_[f * m + arrows_[f].source] != f || table_[arrows_[f].target * m + f] != f) {
      throw structural_error("identity law fails for '" + arrows_[f].name + "'");
    }
  }
  for (std::size_t h = 0; h < m; ++h) {
    for (std::size_t g = 0; g < m; ++g) {
      if (arrows_[g].target != arrows_[h].source) continue;
      for (std::size_t f = 0; f < m; ++f) {
        if (arrows_[f].target != arrows_[g].source) continue;
        if (table_[h * m + table_[g * m + f]] != table_[table_[h * m + g] * m + f]) {
          throw structural_error("associativity fails for " + arrows_[h].name + ", " + arrows_[g].name + ", " +
                                 arrows_[f].name);
        }
      }
    }
  }
  homs_.assign(n * n, {});
  for (std::size_t f = 0; f < m; ++f) homs_[arrows_[f].source * n + arrows_[f].target].push_back(f);
}

std::size_t FiniteCategory::compose(std::size_t g, std::size_t f) const {
  std::size_t h = table_.at(g * arrows_.size() + f);
  if (h == npos) throw structural_error("'" + arrows_[g].name + " o " + arrows_[f].name + "' is not composable");
  return h;
}

std::size_t FiniteCategory::find_object(const std::string& name) const {
  auto it = std::find(objects_.begin(), objects_.end(), name);
  if (it == objects_.end()) throw structural_error("unknown object '" + name + "'");
  return static_cast<std::size_t>(it - objects_.begin());
}

std::size_t FiniteCategory::find_arrow(const std::string& name) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i) {
    if (arrows_[i].name == name) return i;
  }
  throw structural_error("unknown morphism '" + name + "'");
}

CategoryPtr make_category(const std::vector<std::string>& objects, const std::vector<FiniteCategory::Arrow>& arrows,
                          const std::vector<Composite>& composites) {
  std::vector<FiniteCategory::Arrow> all;
  for (std::size_t i = 0; i < objects.size(); ++i) all.push_back({"id_" + objects[i], i, i});
  all.insert(all.end(), arrows.begin(), arrows.end());
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!index.emplace(all[i].name, i).second) throw structural_error("duplicate morphism '" + all[i].name + "'");
  }
  auto lookup = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) throw structural_error("unknown morphism '" + name + "'");
    return it->second;
  };
  const std::size_t m = all.size(), n = objects.size();
  std::vector<std::size_t> table(m * m, FiniteCategory::npos);
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t f = 0; f < m; ++f) {
      if (all[f].target != all[g].source) continue;
      if (g < n) table[g * m + f] = f;
      else if (f < n) table[g * m + f] = g;
    }
  }
  for (const auto& c : composites) {
    std::size_t g = lookup(c.g), f = lookup(c.f);
    if (all[f].target != all[g].source) throw structural_error("'" + c.g + " o " + c.f + "' is not composable");
    table[g * m + f] = lookup(c.result);
  }
  return std::make_shared<FiniteCategory>(objects, std::move(all), std::move(table));
}

FiniteFunctor::FiniteFunctor(CategoryPtr source_, CategoryPtr target_, std::vector<std::size_t> on_objects_,
                             std::vector<std::size_t> on_arrows_)
    : source(std::move(source_)), target(std::move(target_)), on_objects(std::move(on_objects_)),
      on_arrows(std::move(on_arrows_)) {
  const auto& c = *source;
  const auto& d = *target;
  if (on_objects.size() != c.object_count() || on_arrows.size() != c.arrow_count()) {
    throw structural_error("functor tables have wrong size");
  }
  for (auto o : on_objects) {
    if (o >= d.object_count()) throw structural_error("functor sends an object outside the target");
  }
  for (std::size_t f = 0; f < c.arrow_count(); ++f) {
    std::size_t g = on_arrows[f];
    if (g >= d.arrow_count() || d.source(g) != on_objects[c.source(f)] || d.target(g) != on_objects[c.target(f)]) {
      throw structural_error("functor image of '" + c.arrow(f).name + "' has wrong endpoints");
    }
  }
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    if (on_arrows[c.identity(o)] != d.identity(on_objects[o])) throw structural_error("functor does not preserve identities");
  }
  for (std::size_t g = 0; g < c.arrow_count(); ++g) {
    for (std::size_t f = 0; f < c.arrow_count(); ++f) {
      if (c.target(f) != c.source(g)) continue;
      if (on_arrows[c.compose(g, f)] != d.compose(on_arrows[g], on_arrows[f])) {
        throw structural_error("functor does not preserve '" + c.arrow(g).name + " o " + c.arrow(f).name + "'");
      }
    }
  }
}

FiniteFunctor compose(const FiniteFunctor& g, const FiniteFunctor& f) {
  if (f.target != g.source) throw structural_error("functors not composable");
  std::vector<std::size_t> objs, arrs;
  for (auto o : f.on_objects) objs.push_back(g.on_objects[o]);
  for (auto a : f.on_arrows) arrs.push_back(g.on_arrows[a]);
  return FiniteFunctor(f.source, g.target, std::move(objs), std::move(arrs));
}

FiniteFunctor identity_functor(CategoryPtr c) {
  std::vector<std::size_t> objs(c->object_count()), arrs(c->arrow_count());
  for (std::size_t i = 0; i < objs.size(); ++i) objs[i] = i;
  for (std::size_t i = 0; i < arrs.size(); ++i) arrs[i] = i;
  return FiniteFunctor(c, c, std::move(objs), std::move(arrs));
}

std::vector<FiniteFunctor> all_functors(const CategoryPtr& c, const CategoryPtr& d, std::size_t limit) {
  std::vector<FiniteFunctor> out;
  const std::size_t no = c->object_count(), na = c->arrow_count();
  std::vector<std::size_t> objs(no, 0), arrs(na, 0);
  auto consistent = [&](std::size_t upto) {
    for (std::size_t g = 0; g < upto; ++g) {
      for (std::size_t f = 0; f < upto; ++f) {
        if (c->target(f) != c->source(g)) continue;
        std::size_t h = c->compose(g, f);
        if (h < upto && arrs[h] != d->compose(arrs[g], arrs[f])) return false;
      }
    }
    return true;
  };
  auto arrows = [&](auto&& self, std::size_t i) -> void {
    if (out.size() >= limit) return;
    if (i == na) {
      out.emplace_back(c, d, objs, arrs);
      return;
    }
    if (c->is_identity(i)) {
      arrs[i] = d->identity(objs[i]);
      if (consistent(i + 1)) self(self, i + 1);
      return;
    }
    for (auto g : d->hom(objs[c->source(i)], objs[c->target(i)])) {
      arrs[i] = g;
      if (consistent(i + 1)) self(self, i + 1);
    }
  };
  auto objects = [&](auto&& self, std::size_t i) -> void {
    if (i == no) {
      arrows(arrows, 0);
      return;
    }
    for (std::size_t o = 0; o < d->object_count(); ++o) {
      objs[i] = o;
      self(self, i + 1);
    }
  };
  objects(objects, 0);
  return out;
}

namespace categories {

CategoryPtr discrete(std::size_t n) {
  std::vector<std::string> objs;
  for (std::size_t i = 0; i < n; ++i) objs.push_back(std::to_string(i));
  return make_category(objs, {}, {});
}

namespace {

// Poset on 0..n-1 from a transitively closed relation less[i][j], i < j.
CategoryPtr poset(std::size_t n, const std::vector<std::vector<bool>>& less) {
  std::vector<std::string> objs;
  for (std::size_t i = 0; i < n; ++i) objs.push_back(std::to_string(i));
  std::vector<FiniteCategory::Arrow> arrows;
  auto name = [](std::size_t i, std::size_t j) { return std::to_string(i) + "<" + std::to_string(j); };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (less[i][j]) arrows.push_back({name(i, j), i, j});
    }
  }
  std::vector<Composite> comps;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        if (less[i][j] && less[j][k]) comps.push_back({name(j, k), name(i, j), name(i, k)});
      }
    }
  }
  return make_category(objs, arrows, comps);
}

}  // namespace

CategoryPtr chain(std::size_t n) {
  std::vector<std::vector<bool>> less(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) less[i][j] = true;
  }
  return poset(n, less);
}

CategoryPtr random_poset(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::vector<bool>> less(n, std::vector<bool>(n, false));
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) less[i][j] = coin(rng);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        if (less[i][k] && less[k][j]) less[i][j] = true;
      }
    }
  }
  return poset(n, less);
}

CategoryPtr cyclic_group(std::size_t n) {
  if (n == 0) throw structural_error("cyclic group of order 0");
  std::vector<FiniteCategory::Arrow> arrows;
  for (std::size_t i = 1; i < n; ++i) arrows.push_back({"g" + std::to_string(i), 0, 0});
  std::vector<Composite> comps;
  auto name = [](std::size_t i) { return i == 0 ? std::string("id_*") : "g" + std::to_string(i); };
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 1; j < n; ++j) comps.push_back({name(i), name(j), name((i + j) % n)});
  }
  return make_category({"*"}, arrows, comps);
}

CategoryPtr idempotent() { return make_category({"*"}, {{"e", 0, 0}}, {{"e", "e", "e"}}); }

CategoryPtr parallel_pair() { return make_category({"0", "1"}, {{"u", 0, 1}, {"v", 0, 1}}, {}); }

CategoryPtr iso_pair() {
  return make_category({"0", "1"}, {{"f", 0, 1}, {"f'", 1, 0}}, {{"f'", "f", "id_0"}, {"f", "f'", "id_1"}});
}

CategoryPtr random_small(std::mt19937_64& rng) {
  switch (std::uniform_int_distribution<int>(0, 7)(rng)) {
    case 0: return discrete(1 + std::uniform_int_distribution<std::size_t>(0, 2)(rng));
    case 1: return chain(2 + std::uniform_int_distribution<std::size_t>(0, 1)(rng));
    case 2: return cyclic_group(2);
    case 3: return cyclic_group(3);
    case 4: return idempotent();
    case 5: return parallel_pair();
    case 6: return iso_pair();
    default: return random_poset(3, rng);
  }
}

CategoryPtr fop(const std::vector<std::size_t>& arities) {
  std::vector<std::string> objs;
  for (auto a : arities) objs.push_back(std::to_string(a));
  const std::size_t n = arities.size();
  std::vector<BaseFunction> fns = fop_functions(arities);
  std::vector<FiniteCategory::Arrow> arrows;
  auto name = [](const BaseFunction& f) {
    std::string s = "[";
    for (std::size_t i = 0; i < f.source; ++i) s += (i ? "," : "") + std::to_string(f(i));
    return s + "]";
  };
  // Same enumeration order as fop_functions.
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i, ++idx) arrows.push_back({"id_" + objs[i], i, i});
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (auto& f : all_functions(arities[b], arities[a])) {
        if (a == b && f == BaseFunction::identity(arities[a])) continue;
        arrows.push_back({objs[a] + "->" + objs[b] + ":" + name(fns[idx]), a, b});
        ++idx;
      }
    }
  }
  const std::size_t m = arrows.size();
  std::map<std::tuple<std::size_t, std::size_t, std::vector<std::size_t>>, std::size_t> index;
  for (std::size_t i = 0; i < m; ++i) index[{arrows[i].source, arrows[i].target, fns[i].table}] = i;
  std::vector<std::size_t> table(m * m, FiniteCategory::npos);
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t f = 0; f < m; ++f) {
      if (arrows[f].target != arrows[g].source) continue;
      BaseFunction h = compose(fns[f], fns[g]);
      table[g * m + f] = index.at({arrows[f].source, arrows[g].target, h.table});
    }
  }
  return std::make_shared<FiniteCategory>(objs, std::move(arrows), std::move(table));
}

}  // namespace categories

std::vector<BaseFunction> fop_functions(const std::vector<std::size_t>& arities) {
  const std::size_t n = arities.size();
  std::vector<BaseFunction> fns;
  for (std::size_t i = 0; i < n; ++i) fns.push_back(BaseFunction::identity(arities[i]));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (auto& f : all_functions(arities[b], arities[a])) {
        if (a == b && f == BaseFunction::identity(arities[a])) continue;
        fns.push_back(f);
      }
    }
  }
  return fns;
}

nlohmann::json category_to_json(const FiniteCategory& c) {
  nlohmann::json objs = nlohmann::json::array(), arrows = nlohmann::json::array(), comps = nlohmann::json::array();
  for (std::size_t i = 0; i < c.object_count(); ++i) objs.push_back(c.object(i));
  for (std::size_t f = c.object_count(); f < c.arrow_count(); ++f) {
    arrows.push_back({{"name", c.arrow(f).name}, {"source", c.object(c.source(f))}, {"target", c.object(c.target(f))}});
  }
  for (std::size_t g = c.object_count(); g < c.arrow_count(); ++g) {
    for (std::size_t f = c.object_count(); f < c.arrow_count(); ++f) {
      if (c.target(f) != c.source(g)) continue;
      comps.push_back({c.arrow(g).name, c.arrow(f).name, c.arrow(c.compose(g, f)).name});
    }
  }
  return {{"schemaVersion", kSchemaVersion}, {"objects", objs}, {"morphisms", arrows}, {"compose", comps}};
}

CategoryPtr category_from_json(const nlohmann::json& j) {
  try {
    if (j.contains("schemaVersion") && j.at("schemaVersion").get<int>() != kSchemaVersion) {
      throw structural_error("unsupported schemaVersion");
    }
    std::vector<std::string> objs = j.at("objects").get<std::vector<std::string>>();
    auto obj = [&](const std::string& name) {
      auto it = std::find(objs.begin(), objs.end(), name);
      if (it == objs.end()) throw structural_error("unknown object '" + name + "'");
      return static_cast<std::size_t>(it - objs.begin());
    };
    std::vector<FiniteCategory::Arrow> arrows;
    for (const auto& a : j.value("morphisms", nlohmann::json::array())) {
      arrows.push_back({a.at("name").get<std::string>(), obj(a.at("source").get<std::string>()),
                        obj(a.at("target").get<std::string>())});
    }
    std::vector<Composite> comps;
    for (const auto& c : j.value("compose", nlohmann::json::array())) {
      if (!c.is_array() || c.size() != 3) throw structural_error("compose entries are [g, f, g o f]");
      comps.push_back({c[0].get<std::string>(), c[1].get<std::string>(), c[2].get<std::string>()});
    }
    return make_category(objs, arrows, comps);
  } catch (const nlohmann::json::exception& ex) {
    throw structural_error(std::string("malformed category file: ") + ex.what());
  }
}

}  // namespace lawvere

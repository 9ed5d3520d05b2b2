#include "lawvere/profunctor.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

#include "lawvere/theory.hpp"
#include "lawvere/union_find.hpp"

namespace lawvere {

namespace {

constexpr std::size_t npos = FiniteCategory::npos;

std::string str(std::size_t v) { return std::to_string(v); }

}  // namespace

FiniteProfunctor::FiniteProfunctor(CategoryPtr source, CategoryPtr target, std::vector<std::size_t> sizes,
                                   std::vector<Table> pulls, std::vector<Table> pushes)
    : source_(std::move(source)), target_(std::move(target)), sizes_(std::move(sizes)), pulls_(std::move(pulls)),
      pushes_(std::move(pushes)) {
  const auto& C = *source_;
  const auto& D = *target_;
  const std::size_t nc = C.object_count(), nd = D.object_count();
  if (sizes_.size() != nd * nc || pulls_.size() != D.arrow_count() * nc || pushes_.size() != C.arrow_count() * nd) {
    throw structural_error("profunctor tables have wrong size");
  }
  for (std::size_t u = 0; u < D.arrow_count(); ++u) {
    for (std::size_t c = 0; c < nc; ++c) {
      const auto& t = pulls_[u * nc + c];
      if (t.size() != size(D.target(u), c)) throw structural_error("pull table of '" + D.arrow(u).name + "' has wrong size");
      for (auto y : t) {
        if (y >= size(D.source(u), c)) throw structural_error("pull of '" + D.arrow(u).name + "' leaves its entry");
      }
      if (D.is_identity(u)) {
        for (std::size_t x = 0; x < t.size(); ++x) {
          if (t[x] != x) throw structural_error("identity of D acts nontrivially");
        }
      }
    }
  }
  for (std::size_t v = 0; v < C.arrow_count(); ++v) {
    for (std::size_t d = 0; d < nd; ++d) {
      const auto& t = pushes_[v * nd + d];
      if (t.size() != size(d, C.source(v))) throw structural_error("push table of '" + C.arrow(v).name + "' has wrong size");
      for (auto y : t) {
        if (y >= size(d, C.target(v))) throw structural_error("push of '" + C.arrow(v).name + "' leaves its entry");
      }
      if (C.is_identity(v)) {
        for (std::size_t x = 0; x < t.size(); ++x) {
          if (t[x] != x) throw structural_error("identity of C acts nontrivially");
        }
      }
    }
  }
  // pull(u o u') = pull(u') pull(u)
  for (std::size_t u = 0; u < D.arrow_count(); ++u) {
    for (std::size_t u2 = 0; u2 < D.arrow_count(); ++u2) {
      if (D.target(u2) != D.source(u)) continue;
      std::size_t uu = D.compose(u, u2);
      for (std::size_t c = 0; c < nc; ++c) {
        for (std::size_t x = 0; x < size(D.target(u), c); ++x) {
          if (pull(uu, c, x) != pull(u2, c, pull(u, c, x))) throw structural_error("pull action is not functorial");
        }
      }
    }
  }
  for (std::size_t v = 0; v < C.arrow_count(); ++v) {
    for (std::size_t v2 = 0; v2 < C.arrow_count(); ++v2) {
      if (C.target(v) != C.source(v2)) continue;
      std::size_t vv = C.compose(v2, v);
      for (std::size_t d = 0; d < nd; ++d) {
        for (std::size_t x = 0; x < size(d, C.source(v)); ++x) {
          if (push(vv, d, x) != push(v2, d, push(v, d, x))) throw structural_error("push action is not functorial");
        }
      }
    }
  }
  for (std::size_t u = 0; u < D.arrow_count(); ++u) {
    for (std::size_t v = 0; v < C.arrow_count(); ++v) {
      std::size_t d = D.target(u), d2 = D.source(u), c = C.source(v), c2 = C.target(v);
      for (std::size_t x = 0; x < size(d, c); ++x) {
        if (pull(u, c2, push(v, d, x)) != push(v, d2, pull(u, c, x))) throw structural_error("actions do not commute");
      }
    }
  }
}

std::size_t FiniteProfunctor::total() const { return std::accumulate(sizes_.begin(), sizes_.end(), std::size_t{0}); }

namespace {

// Position of each arrow inside its hom list.
std::vector<std::size_t> hom_positions(const FiniteCategory& c) {
  std::vector<std::size_t> pos(c.arrow_count());
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    for (std::size_t b = 0; b < c.object_count(); ++b) {
      const auto& h = c.hom(a, b);
      for (std::size_t i = 0; i < h.size(); ++i) pos[h[i]] = i;
    }
  }
  return pos;
}

}  // namespace

FiniteProfunctor representable(const FiniteFunctor& phi) {
  const auto& C = *phi.source;
  const auto& D = *phi.target;
  const std::size_t nc = C.object_count(), nd = D.object_count();
  auto pos = hom_positions(D);
  std::vector<std::size_t> sizes(nd * nc);
  for (std::size_t d = 0; d < nd; ++d) {
    for (std::size_t c = 0; c < nc; ++c) sizes[d * nc + c] = D.hom(d, phi.on_objects[c]).size();
  }
  std::vector<FiniteProfunctor::Table> pulls(D.arrow_count() * nc), pushes(C.arrow_count() * nd);
  for (std::size_t u = 0; u < D.arrow_count(); ++u) {
    for (std::size_t c = 0; c < nc; ++c) {
      for (auto x : D.hom(D.target(u), phi.on_objects[c])) pulls[u * nc + c].push_back(pos[D.compose(x, u)]);
    }
  }
  for (std::size_t v = 0; v < C.arrow_count(); ++v) {
    for (std::size_t d = 0; d < nd; ++d) {
      for (auto x : D.hom(d, phi.on_objects[C.source(v)])) {
        pushes[v * nd + d].push_back(pos[D.compose(phi.on_arrows[v], x)]);
      }
    }
  }
  return FiniteProfunctor(phi.source, phi.target, std::move(sizes), std::move(pulls), std::move(pushes));
}

FiniteProfunctor hom_profunctor(const CategoryPtr& c) { return representable(identity_functor(c)); }

FiniteProfunctor compose_prof(const FiniteProfunctor& G, const FiniteProfunctor& F) {
  if (G.source() != F.target()) throw structural_error("profunctors do not share the middle category");
  const auto& C = *F.source();
  const auto& D = *F.target();
  const auto& E = *G.target();
  const std::size_t nc = C.object_count(), nd = D.object_count(), ne = E.object_count();

  struct Entry {
    std::vector<std::size_t> offset;  // per d
    std::vector<std::size_t> class_of;
    std::vector<std::size_t> rep;     // least generator of each class
    std::size_t classes = 0;
  };
  std::vector<Entry> entries(ne * nc);
  for (std::size_t e = 0; e < ne; ++e) {
    for (std::size_t c = 0; c < nc; ++c) {
      Entry& en = entries[e * nc + c];
      std::size_t n = 0;
      for (std::size_t d = 0; d < nd; ++d) {
        en.offset.push_back(n);
        n += G.size(e, d) * F.size(d, c);
      }
      UnionFind uf(n);
      auto gen = [&](std::size_t d, std::size_t g, std::size_t f) { return en.offset[d] + g * F.size(d, c) + f; };
      for (std::size_t u = 0; u < D.arrow_count(); ++u) {
        std::size_t d = D.source(u), d2 = D.target(u);
        for (std::size_t g = 0; g < G.size(e, d); ++g) {
          for (std::size_t f = 0; f < F.size(d2, c); ++f) {
            uf.unite(gen(d2, G.push(u, e, g), f), gen(d, g, F.pull(u, c, f)));
          }
        }
      }
      auto [ids, count] = uf.classes();
      en.class_of = std::move(ids);
      en.classes = count;
      en.rep.assign(count, npos);
      for (std::size_t x = 0; x < n; ++x) {
        if (en.rep[en.class_of[x]] == npos) en.rep[en.class_of[x]] = x;
      }
    }
  }
  auto decode = [&](const Entry& en, std::size_t c, std::size_t x) {
    std::size_t d = 0;
    while (d + 1 < nd && en.offset[d + 1] <= x) ++d;
    std::size_t local = x - en.offset[d];
    return std::array<std::size_t, 3>{d, local / F.size(d, c), local % F.size(d, c)};
  };

  std::vector<std::size_t> sizes(ne * nc);
  for (std::size_t i = 0; i < sizes.size(); ++i) sizes[i] = entries[i].classes;
  std::vector<FiniteProfunctor::Table> pulls(E.arrow_count() * nc), pushes(C.arrow_count() * ne);
  for (std::size_t w = 0; w < E.arrow_count(); ++w) {
    std::size_t e = E.target(w), e2 = E.source(w);
    for (std::size_t c = 0; c < nc; ++c) {
      const Entry& from = entries[e * nc + c];
      const Entry& to = entries[e2 * nc + c];
      for (std::size_t k = 0; k < from.classes; ++k) {
        auto [d, g, f] = decode(from, c, from.rep[k]);
        std::size_t x = to.offset[d] + G.pull(w, d, g) * F.size(d, c) + f;
        pulls[w * nc + c].push_back(to.class_of[x]);
      }
    }
  }
  for (std::size_t v = 0; v < C.arrow_count(); ++v) {
    std::size_t c = C.source(v), c2 = C.target(v);
    for (std::size_t e = 0; e < ne; ++e) {
      const Entry& from = entries[e * nc + c];
      const Entry& to = entries[e * nc + c2];
      for (std::size_t k = 0; k < from.classes; ++k) {
        auto [d, g, f] = decode(from, c, from.rep[k]);
        std::size_t x = to.offset[d] + g * F.size(d, c2) + F.push(v, d, f);
        pushes[v * ne + e].push_back(to.class_of[x]);
      }
    }
  }
  return FiniteProfunctor(F.source(), G.target(), std::move(sizes), std::move(pulls), std::move(pushes));
}

bool is_natural_iso(const FiniteProfunctor& p, const FiniteProfunctor& q, const ProfIso& sigma) {
  if (p.source() != q.source() || p.target() != q.target() || p.sizes() != q.sizes()) return false;
  const auto& C = *p.source();
  const auto& D = *p.target();
  const std::size_t nc = C.object_count(), nd = D.object_count();
  if (sigma.size() != nd * nc) return false;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    std::vector<bool> hit(p.sizes()[i], false);
    if (sigma[i].size() != hit.size()) return false;
    for (auto y : sigma[i]) {
      if (y >= hit.size() || hit[y]) return false;
      hit[y] = true;
    }
  }
  for (std::size_t u = 0; u < D.arrow_count(); ++u) {
    for (std::size_t c = 0; c < nc; ++c) {
      std::size_t d = D.target(u), d2 = D.source(u);
      for (std::size_t x = 0; x < p.size(d, c); ++x) {
        if (sigma[d2 * nc + c][p.pull(u, c, x)] != q.pull(u, c, sigma[d * nc + c][x])) return false;
      }
    }
  }
  for (std::size_t v = 0; v < C.arrow_count(); ++v) {
    for (std::size_t d = 0; d < nd; ++d) {
      std::size_t c = C.source(v), c2 = C.target(v);
      for (std::size_t x = 0; x < p.size(d, c); ++x) {
        if (sigma[d * nc + c2][p.push(v, d, x)] != q.push(v, d, sigma[d * nc + c][x])) return false;
      }
    }
  }
  return true;
}

std::optional<ProfIso> prof_iso(const FiniteProfunctor& p, const FiniteProfunctor& q) {
  if (p.source() != q.source() || p.target() != q.target()) return std::nullopt;
  if (p.sizes() != q.sizes()) return std::nullopt;
  const auto& C = *p.source();
  const auto& D = *p.target();
  const std::size_t nc = C.object_count();

  struct State {
    ProfIso sigma;
    std::vector<std::vector<bool>> used;
  };
  State init;
  for (auto s : p.sizes()) {
    init.sigma.emplace_back(s, npos);
    init.used.emplace_back(s, false);
  }
  // Assigns x -> y in entry i and everything forced by the actions.
  auto assign = [&](State& st, std::size_t i0, std::size_t x0, std::size_t y0) {
    std::vector<std::array<std::size_t, 3>> queue{{i0, x0, y0}};
    while (!queue.empty()) {
      auto [i, x, y] = queue.back();
      queue.pop_back();
      if (st.sigma[i][x] != npos) {
        if (st.sigma[i][x] != y) return false;
        continue;
      }
      if (st.used[i][y]) return false;
      st.sigma[i][x] = y;
      st.used[i][y] = true;
      std::size_t d = i / nc, c = i % nc;
      for (std::size_t u = 0; u < D.arrow_count(); ++u) {
        if (D.target(u) != d) continue;
        queue.push_back({D.source(u) * nc + c, p.pull(u, c, x), q.pull(u, c, y)});
      }
      for (std::size_t v = 0; v < C.arrow_count(); ++v) {
        if (C.source(v) != c) continue;
        queue.push_back({d * nc + C.target(v), p.push(v, d, x), q.push(v, d, y)});
      }
    }
    return true;
  };
  std::optional<ProfIso> found;
  auto search = [&](auto&& self, const State& st) -> void {
    if (found) return;
    for (std::size_t i = 0; i < st.sigma.size(); ++i) {
      for (std::size_t x = 0; x < st.sigma[i].size(); ++x) {
        if (st.sigma[i][x] != npos) continue;
        for (std::size_t y = 0; y < st.sigma[i].size() && !found; ++y) {
          if (st.used[i][y]) continue;
          State next = st;
          if (assign(next, i, x, y)) self(self, next);
        }
        return;
      }
    }
    if (is_natural_iso(p, q, st.sigma)) found = st.sigma;
  };
  search(search, init);
  return found;
}

FiniteProfunctor relabel(const FiniteProfunctor& p, const ProfIso& perms) {
  const auto& C = *p.source();
  const auto& D = *p.target();
  const std::size_t nc = C.object_count(), nd = D.object_count();
  std::vector<FiniteProfunctor::Table> pulls(D.arrow_count() * nc), pushes(C.arrow_count() * nd);
  for (std::size_t u = 0; u < D.arrow_count(); ++u) {
    for (std::size_t c = 0; c < nc; ++c) {
      std::size_t d = D.target(u), d2 = D.source(u);
      auto& t = pulls[u * nc + c];
      t.assign(p.size(d, c), 0);
      for (std::size_t x = 0; x < t.size(); ++x) t[perms[d * nc + c][x]] = perms[d2 * nc + c][p.pull(u, c, x)];
    }
  }
  for (std::size_t v = 0; v < C.arrow_count(); ++v) {
    for (std::size_t d = 0; d < nd; ++d) {
      std::size_t c = C.source(v), c2 = C.target(v);
      auto& t = pushes[v * nd + d];
      t.assign(p.size(d, c), 0);
      for (std::size_t x = 0; x < t.size(); ++x) t[perms[d * nc + c][x]] = perms[d * nc + c2][p.push(v, d, x)];
    }
  }
  return FiniteProfunctor(p.source(), p.target(), p.sizes(), std::move(pulls), std::move(pushes));
}

FiniteProfunctor random_profunctor(const CategoryPtr& cp, const CategoryPtr& dp, std::mt19937_64& rng,
                                   std::size_t max_generators) {
  const auto& C = *cp;
  const auto& D = *dp;
  const std::size_t nc = C.object_count(), nd = D.object_count();
  // Free part: generator at (d0, c0) contributes pairs (u: d -> d0, v: c0 -> c).
  struct Elem {
    std::size_t gen, u, v;
  };
  std::vector<std::pair<std::size_t, std::size_t>> gens;
  std::size_t ngen = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, max_generators))(rng);
  for (std::size_t i = 0; i < ngen; ++i) {
    gens.push_back({std::uniform_int_distribution<std::size_t>(0, nd - 1)(rng),
                    std::uniform_int_distribution<std::size_t>(0, nc - 1)(rng)});
  }
  std::vector<Elem> elems;
  std::map<std::array<std::size_t, 3>, std::size_t> index;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    for (std::size_t u = 0; u < D.arrow_count(); ++u) {
      if (D.target(u) != gens[g].first) continue;
      for (std::size_t v = 0; v < C.arrow_count(); ++v) {
        if (C.source(v) != gens[g].second) continue;
        index[{g, u, v}] = elems.size();
        elems.push_back({g, u, v});
      }
    }
  }
  auto entry = [&](const Elem& x) { return D.source(x.u) * nc + C.target(x.v); };
  auto pull = [&](std::size_t w, const Elem& x) { return index.at({x.gen, D.compose(x.u, w), x.v}); };
  auto push = [&](std::size_t w, const Elem& x) { return index.at({x.gen, x.u, C.compose(w, x.v)}); };

  UnionFind uf(elems.size());
  std::size_t relations = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
  for (std::size_t r = 0; r < relations && !elems.empty(); ++r) {
    std::size_t a = std::uniform_int_distribution<std::size_t>(0, elems.size() - 1)(rng);
    std::vector<std::size_t> same;
    for (std::size_t b = 0; b < elems.size(); ++b) {
      if (b != a && entry(elems[b]) == entry(elems[a])) same.push_back(b);
    }
    if (same.empty()) continue;
    uf.unite(a, same[std::uniform_int_distribution<std::size_t>(0, same.size() - 1)(rng)]);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t x = 0; x < elems.size(); ++x) {
      std::size_t r = uf.find(x);
      if (r == x) continue;
      for (std::size_t w = 0; w < D.arrow_count(); ++w) {
        if (D.target(w) == D.source(elems[x].u)) changed |= uf.unite(pull(w, elems[x]), pull(w, elems[r]));
      }
      for (std::size_t w = 0; w < C.arrow_count(); ++w) {
        if (C.source(w) == C.target(elems[x].v)) changed |= uf.unite(push(w, elems[x]), push(w, elems[r]));
      }
    }
  }
  // Number classes within each entry by least member.
  std::vector<std::size_t> sizes(nd * nc, 0), local(elems.size(), npos);
  for (std::size_t x = 0; x < elems.size(); ++x) {
    if (uf.find(x) == x) local[x] = sizes[entry(elems[x])]++;
  }
  auto cls = [&](std::size_t x) { return local[uf.find(x)]; };
  std::vector<FiniteProfunctor::Table> pulls(D.arrow_count() * nc), pushes(C.arrow_count() * nd);
  for (std::size_t i = 0; i < pulls.size(); ++i) pulls[i].assign(sizes[D.target(i / nc) * nc + i % nc], npos);
  for (std::size_t i = 0; i < pushes.size(); ++i) pushes[i].assign(sizes[(i % nd) * nc + C.source(i / nd)], npos);
  for (std::size_t x = 0; x < elems.size(); ++x) {
    if (uf.find(x) != x) continue;
    std::size_t c = C.target(elems[x].v);
    for (std::size_t w = 0; w < D.arrow_count(); ++w) {
      if (D.target(w) == D.source(elems[x].u)) pulls[w * nc + c][local[x]] = cls(pull(w, elems[x]));
    }
    std::size_t d = D.source(elems[x].u);
    for (std::size_t w = 0; w < C.arrow_count(); ++w) {
      if (C.source(w) == c) pushes[w * nd + d][local[x]] = cls(push(w, elems[x]));
    }
  }
  return FiniteProfunctor(cp, dp, std::move(sizes), std::move(pulls), std::move(pushes));
}

BimoduleRep to_bimodule(const FiniteProfunctor& p) {
  const auto& C = *p.source();
  const auto& D = *p.target();
  const std::size_t nc = C.object_count(), nd = D.object_count();
  BimoduleRep b;
  b.right_category = p.source();
  b.left_category = p.target();
  std::vector<std::size_t> offset(nd * nc);
  for (std::size_t d = 0; d < nd; ++d) {
    for (std::size_t c = 0; c < nc; ++c) {
      offset[d * nc + c] = b.span.apex;
      for (std::size_t x = 0; x < p.size(d, c); ++x) {
        b.span.s.push_back(c);
        b.span.t.push_back(d);
      }
      b.span.apex += p.size(d, c);
    }
  }
  const std::size_t n = b.span.apex;
  b.left.assign(D.arrow_count() * n, npos);
  b.right.assign(C.arrow_count() * n, npos);
  for (std::size_t d = 0; d < nd; ++d) {
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t x = 0; x < p.size(d, c); ++x) {
        std::size_t m = offset[d * nc + c] + x;
        for (std::size_t u = 0; u < D.arrow_count(); ++u) {
          if (D.target(u) == d) b.left[u * n + m] = offset[D.source(u) * nc + c] + p.pull(u, c, x);
        }
        for (std::size_t v = 0; v < C.arrow_count(); ++v) {
          if (C.source(v) == c) b.right[v * n + m] = offset[d * nc + C.target(v)] + p.push(v, d, x);
        }
      }
    }
  }
  return b;
}

FiniteProfunctor to_profunctor(const BimoduleRep& b) {
  const auto& C = *b.right_category;
  const auto& D = *b.left_category;
  const std::size_t nc = C.object_count(), nd = D.object_count(), n = b.span.apex;
  std::vector<std::size_t> sizes(nd * nc, 0), local(n);
  for (std::size_t m = 0; m < n; ++m) local[m] = sizes[b.span.t[m] * nc + b.span.s[m]]++;
  std::vector<FiniteProfunctor::Table> pulls(D.arrow_count() * nc), pushes(C.arrow_count() * nd);
  for (std::size_t i = 0; i < pulls.size(); ++i) pulls[i].assign(sizes[D.target(i / nc) * nc + i % nc], npos);
  for (std::size_t i = 0; i < pushes.size(); ++i) pushes[i].assign(sizes[(i % nd) * nc + C.source(i / nd)], npos);
  for (std::size_t m = 0; m < n; ++m) {
    std::size_t c = b.span.s[m], d = b.span.t[m];
    for (std::size_t u = 0; u < D.arrow_count(); ++u) {
      if (D.target(u) == d) pulls[u * nc + c][local[m]] = local.at(b.left[u * n + m]);
    }
    for (std::size_t v = 0; v < C.arrow_count(); ++v) {
      if (C.source(v) == c) pushes[v * nd + d][local[m]] = local.at(b.right[v * n + m]);
    }
  }
  return FiniteProfunctor(b.right_category, b.left_category, std::move(sizes), std::move(pulls), std::move(pushes));
}

Report check_bimodule(const BimoduleRep& b) {
  Report r;
  r.subject = "bimodule";
  const auto& C = *b.right_category;
  const auto& D = *b.left_category;
  const std::size_t n = b.span.apex;
  r.bounds = {{"apex", static_cast<long long>(n)}};
  auto L = [&](std::size_t u, std::size_t m) { return b.left[u * n + m]; };
  auto R = [&](std::size_t v, std::size_t m) { return b.right[v * n + m]; };
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t u = 0; u < D.arrow_count(); ++u) {
      bool defined = L(u, m) != npos;
      bool should = D.target(u) == b.span.t[m];
      r.check(defined == should && (!defined || (b.span.t[L(u, m)] == D.source(u) && b.span.s[L(u, m)] == b.span.s[m])),
              {{"axiom", "left legs"}, {"element", m}, {"arrow", D.arrow(u).name}});
      if (defined && D.is_identity(u)) r.check(L(u, m) == m, {{"axiom", "left unit"}, {"element", m}});
    }
    for (std::size_t v = 0; v < C.arrow_count(); ++v) {
      bool defined = R(v, m) != npos;
      bool should = C.source(v) == b.span.s[m];
      r.check(defined == should && (!defined || (b.span.s[R(v, m)] == C.target(v) && b.span.t[R(v, m)] == b.span.t[m])),
              {{"axiom", "right legs"}, {"element", m}, {"arrow", C.arrow(v).name}});
      if (defined && C.is_identity(v)) r.check(R(v, m) == m, {{"axiom", "right unit"}, {"element", m}});
    }
  }
  if (!r.ok()) return r;
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t u = 0; u < D.arrow_count(); ++u) {
      if (L(u, m) == npos) continue;
      for (std::size_t u2 = 0; u2 < D.arrow_count(); ++u2) {
        if (D.target(u2) != D.source(u)) continue;
        r.check(L(u2, L(u, m)) == L(D.compose(u, u2), m), {{"axiom", "left associativity"}, {"element", m}});
      }
      for (std::size_t v = 0; v < C.arrow_count(); ++v) {
        if (R(v, m) == npos) continue;
        r.check(L(u, R(v, m)) == R(v, L(u, m)), {{"axiom", "actions commute"}, {"element", m}});
      }
    }
    for (std::size_t v = 0; v < C.arrow_count(); ++v) {
      if (R(v, m) == npos) continue;
      for (std::size_t v2 = 0; v2 < C.arrow_count(); ++v2) {
        if (C.source(v2) != C.target(v)) continue;
        r.check(R(v2, R(v, m)) == R(C.compose(v2, v), m), {{"axiom", "right associativity"}, {"element", m}});
      }
    }
  }
  return r;
}

BimoduleRep tensor(const BimoduleRep& N, const BimoduleRep& M) {
  if (N.right_category != M.left_category) throw structural_error("bimodules do not share the middle category");
  const auto& D = *M.left_category;
  const std::size_t nn = N.span.apex, nm = M.span.apex;
  // Pairs (x, y) with s(x) = t(y), in lexicographic order.
  std::vector<std::size_t> pair_index(nn * nm, npos);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < nn; ++x) {
    for (std::size_t y = 0; y < nm; ++y) {
      if (N.span.s[x] != M.span.t[y]) continue;
      pair_index[x * nm + y] = pairs.size();
      pairs.push_back({x, y});
    }
  }
  UnionFind uf(pairs.size());
  for (std::size_t u = 0; u < D.arrow_count(); ++u) {
    for (std::size_t x = 0; x < nn; ++x) {
      if (N.span.s[x] != D.source(u)) continue;
      for (std::size_t y = 0; y < nm; ++y) {
        if (M.span.t[y] != D.target(u)) continue;
        uf.unite(pair_index[N.right[u * nn + x] * nm + y], pair_index[x * nm + M.left[u * nm + y]]);
      }
    }
  }
  auto [cls, count] = uf.classes();
  BimoduleRep out;
  out.right_category = M.right_category;
  out.left_category = N.left_category;
  out.span.apex = count;
  out.span.s.assign(count, 0);
  out.span.t.assign(count, 0);
  std::vector<std::size_t> rep(count, npos);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (rep[cls[i]] != npos) continue;
    rep[cls[i]] = i;
    out.span.s[cls[i]] = M.span.s[pairs[i].second];
    out.span.t[cls[i]] = N.span.t[pairs[i].first];
  }
  const auto& E = *N.left_category;
  const auto& C = *M.right_category;
  out.left.assign(E.arrow_count() * count, npos);
  out.right.assign(C.arrow_count() * count, npos);
  for (std::size_t k = 0; k < count; ++k) {
    auto [x, y] = pairs[rep[k]];
    for (std::size_t w = 0; w < E.arrow_count(); ++w) {
      std::size_t x2 = N.left[w * nn + x];
      if (x2 != npos) out.left[w * count + k] = cls[pair_index[x2 * nm + y]];
    }
    for (std::size_t v = 0; v < C.arrow_count(); ++v) {
      std::size_t y2 = M.right[v * nm + y];
      if (y2 != npos) out.right[v * count + k] = cls[pair_index[x * nm + y2]];
    }
  }
  return out;
}

std::size_t SpanMonad::multiply(std::size_t a, std::size_t b, std::size_t c, std::size_t x, std::size_t y) const {
  const std::size_t n = base->object_count();
  return mult.at((a * n + b) * n + c).at(x * size(b, c) + y);
}

Report check_span_monad(const SpanMonad& m) {
  Report r;
  r.subject = "span_monad";
  const auto& X = *m.base;
  const std::size_t n = X.object_count();
  if (m.sizes.size() != n * n || m.unit.size() != X.arrow_count() || m.mult.size() != n * n * n) {
    r.fail({{"axiom", "table sizes"}});
    return r;
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        const auto& t = m.mult[(a * n + b) * n + c];
        bool ok = t.size() == m.size(a, b) * m.size(b, c);
        for (auto z : t) ok = ok && z < m.size(a, c);
        if (!ok) {
          r.fail({{"axiom", "multiplication table"}, {"objects", {a, b, c}}});
          return r;
        }
      }
    }
  }
  for (std::size_t u = 0; u < X.arrow_count(); ++u) {
    if (m.unit[u] >= m.size(X.source(u), X.target(u))) {
      r.fail({{"axiom", "unit table"}, {"arrow", X.arrow(u).name}});
      return r;
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t x = 0; x < m.size(a, b); ++x) {
        r.check(m.multiply(a, a, b, m.unit[X.identity(a)], x) == x, {{"axiom", "left unit"}, {"objects", {a, b}}, {"element", x}});
        r.check(m.multiply(a, b, b, x, m.unit[X.identity(b)]) == x, {{"axiom", "right unit"}, {"objects", {a, b}}, {"element", x}});
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t d = 0; d < n; ++d) {
          for (std::size_t x = 0; x < m.size(a, b); ++x) {
            for (std::size_t y = 0; y < m.size(b, c); ++y) {
              for (std::size_t z = 0; z < m.size(c, d); ++z) {
                r.check(m.multiply(a, c, d, m.multiply(a, b, c, x, y), z) ==
                            m.multiply(a, b, d, x, m.multiply(b, c, d, y, z)),
                        {{"axiom", "associativity"}, {"objects", {a, b, c, d}}, {"elements", {x, y, z}}});
              }
            }
          }
        }
      }
    }
  }
  for (std::size_t u = 0; u < X.arrow_count(); ++u) {
    for (std::size_t v = 0; v < X.arrow_count(); ++v) {
      if (X.target(u) != X.source(v)) continue;
      r.check(m.unit[X.compose(v, u)] == m.multiply(X.source(u), X.target(u), X.target(v), m.unit[u], m.unit[v]),
              {{"axiom", "unit is a functor"}, {"arrows", {X.arrow(u).name, X.arrow(v).name}}});
    }
  }
  // The actions induced by the unit form an X-X bimodule.
  try {
    std::vector<FiniteProfunctor::Table> pulls(X.arrow_count() * n), pushes(X.arrow_count() * n);
    for (std::size_t u = 0; u < X.arrow_count(); ++u) {
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t x = 0; x < m.size(X.target(u), c); ++x) {
          pulls[u * n + c].push_back(m.multiply(X.source(u), X.target(u), c, m.unit[u], x));
        }
      }
      for (std::size_t d = 0; d < n; ++d) {
        for (std::size_t x = 0; x < m.size(d, X.source(u)); ++x) {
          pushes[u * n + d].push_back(m.multiply(d, X.source(u), X.target(u), x, m.unit[u]));
        }
      }
    }
    auto bimodule = check_bimodule(to_bimodule(FiniteProfunctor(m.base, m.base, m.sizes, pulls, pushes)));
    r.absorb(bimodule);
  } catch (const structural_error& ex) {
    r.fail({{"axiom", "bimodule"}, {"error", ex.what()}});
  }
  return r;
}

FiniteFunctor monad_to_functor(const SpanMonad& m) {
  auto report = check_span_monad(m);
  if (!report.ok()) throw structural_error("not a monad: " + report.failures.front().dump());
  const auto& X = *m.base;
  const std::size_t n = X.object_count();
  std::vector<std::string> objs;
  for (std::size_t a = 0; a < n; ++a) objs.push_back(X.object(a));
  std::vector<FiniteCategory::Arrow> arrows;
  std::map<std::array<std::size_t, 3>, std::size_t> index;
  for (std::size_t a = 0; a < n; ++a) {
    index[{a, a, m.unit[X.identity(a)]}] = arrows.size();
    arrows.push_back({"id_" + objs[a], a, a});
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t x = 0; x < m.size(a, b); ++x) {
        if (index.count({a, b, x})) continue;
        index[{a, b, x}] = arrows.size();
        arrows.push_back({objs[a] + "->" + objs[b] + "#" + str(x), a, b});
      }
    }
  }
  std::vector<std::array<std::size_t, 3>> element(arrows.size());
  for (const auto& [key, i] : index) element[i] = key;
  const std::size_t na = arrows.size();
  std::vector<std::size_t> table(na * na, npos);
  for (std::size_t g = 0; g < na; ++g) {
    for (std::size_t f = 0; f < na; ++f) {
      auto [a, b, x] = element[f];
      auto [b2, c, y] = element[g];
      if (b != b2) continue;
      table[g * na + f] = index.at({a, c, m.multiply(a, b, c, x, y)});
    }
  }
  auto A = std::make_shared<FiniteCategory>(objs, std::move(arrows), std::move(table));
  std::vector<std::size_t> on_objects(n), on_arrows(X.arrow_count());
  std::iota(on_objects.begin(), on_objects.end(), 0);
  for (std::size_t u = 0; u < X.arrow_count(); ++u) on_arrows[u] = index.at({X.source(u), X.target(u), m.unit[u]});
  return FiniteFunctor(m.base, A, std::move(on_objects), std::move(on_arrows));
}

SpanMonad functor_to_monad(const FiniteFunctor& j) {
  const auto& X = *j.source;
  const auto& A = *j.target;
  const std::size_t n = X.object_count();
  if (A.object_count() != n) throw structural_error("functor is not identity on objects");
  for (std::size_t a = 0; a < n; ++a) {
    if (j.on_objects[a] != a) throw structural_error("functor is not identity on objects");
  }
  auto pos = hom_positions(A);
  SpanMonad m;
  m.base = j.source;
  m.sizes.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) m.sizes[a * n + b] = A.hom(a, b).size();
  }
  for (std::size_t u = 0; u < X.arrow_count(); ++u) m.unit.push_back(pos[j.on_arrows[u]]);
  m.mult.assign(n * n * n, {});
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        auto& t = m.mult[(a * n + b) * n + c];
        for (auto x : A.hom(a, b)) {
          for (auto y : A.hom(b, c)) t.push_back(pos[A.compose(y, x)]);
        }
      }
    }
  }
  return m;
}

SpanMonad theory_monad(const TheorySpec& theory, const std::vector<std::size_t>& arities, std::size_t size_bound) {
  SpanMonad m;
  m.base = categories::fop(arities);
  auto fns = fop_functions(arities);
  const std::size_t n = arities.size();
  std::vector<std::vector<Term>> elems(n);
  std::vector<std::map<Term, std::size_t>> lookup(n);
  for (std::size_t a = 0; a < n; ++a) {
    elems[a] = enumerate_terms(theory, arities[a], size_bound);
    for (std::size_t i = 0; i < elems[a].size(); ++i) lookup[a][elems[a][i]] = i;
  }
  // M(a, b): arities[b]-tuples of elements over arities[a] variables,
  // encoded in base |elems[a]| with the first component most significant.
  auto tuples = [&](std::size_t a, std::size_t b) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < arities[b]; ++i) count *= elems[a].size();
    return count;
  };
  auto decode = [&](std::size_t a, std::size_t b, std::size_t code) {
    std::vector<Term> comps(arities[b], Term::var(0));
    for (std::size_t i = arities[b]; i-- > 0;) {
      comps[i] = elems[a][code % elems[a].size()];
      code /= elems[a].size();
    }
    return TheoryMorphism{arities[a], arities[b], comps};
  };
  auto encode = [&](std::size_t a, const TheoryMorphism& f) {
    std::size_t code = 0;
    for (const auto& c : f.components) {
      auto it = lookup[a].find(c);
      if (it == lookup[a].end()) throw structural_error("composite leaves the size bound: " + to_prefix(c));
      code = code * elems[a].size() + it->second;
    }
    return code;
  };
  m.sizes.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) m.sizes[a * n + b] = tuples(a, b);
  }
  for (std::size_t u = 0; u < m.base->arrow_count(); ++u) {
    m.unit.push_back(encode(m.base->source(u), basic_morphism(fns[u])));
  }
  m.mult.assign(n * n * n, {});
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        auto& t = m.mult[(a * n + b) * n + c];
        for (std::size_t x = 0; x < tuples(a, b); ++x) {
          auto fx = decode(a, b, x);
          for (std::size_t y = 0; y < tuples(b, c); ++y) {
            t.push_back(encode(a, compose(theory, decode(b, c, y), fx)));
          }
        }
      }
    }
  }
  return m;
}

Report check_composition_laws(const std::vector<CategoryPtr>& pool, std::size_t triples, std::uint64_t seed) {
  Report report;
  report.subject = "profunctor_composition";
  report.seed = seed;
  report.bounds = {{"triples", static_cast<long long>(triples)}};
  std::mt19937_64 rng(seed);
  auto pick = [&]() {
    if (pool.empty()) return categories::random_small(rng);
    return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
  };
  for (std::size_t s = 0; s < triples; ++s) {
    CategoryPtr a = pick(), b = pick(), c = pick(), d = pick();
    auto f = random_profunctor(a, b, rng);
    auto g = random_profunctor(b, c, rng);
    auto h = random_profunctor(c, d, rng);
    auto left = compose_prof(h, compose_prof(g, f));
    auto right = compose_prof(compose_prof(h, g), f);
    nlohmann::json where = {{"triple", s}, {"sizes", {f.total(), g.total(), h.total()}}};
    auto w = where;
    w["kind"] = "associativity";
    report.check(prof_iso(left, right).has_value(), w);
    w["kind"] = "left unit";
    report.check(prof_iso(compose_prof(hom_profunctor(b), f), f).has_value(), w);
    w["kind"] = "right unit";
    report.check(prof_iso(compose_prof(f, hom_profunctor(a)), f).has_value(), w);

    auto fs = all_functors(a, b);
    auto gs = all_functors(b, c);
    if (fs.empty() || gs.empty()) continue;
    const auto& phi = fs[std::uniform_int_distribution<std::size_t>(0, fs.size() - 1)(rng)];
    const auto& psi = gs[std::uniform_int_distribution<std::size_t>(0, gs.size() - 1)(rng)];
    w["kind"] = "representable";
    report.check(prof_iso(compose_prof(representable(psi), representable(phi)), representable(compose(psi, phi)))
                     .has_value(),
                 w);
  }
  return report;
}

}  // namespace lawvere

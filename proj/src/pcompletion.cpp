#include "lawvere/pcompletion.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <tuple>

#include "lawvere/term_text.hpp"
#include "lawvere/union_find.hpp"

namespace lawvere {

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

// Mixed-radix digits, first digit most significant.
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

// Cartesian product of option counts, visited in lexicographic order.
template <class Visit>
void for_each_choice(const std::vector<std::size_t>& counts, Visit&& visit) {
  for (auto c : counts) {
    if (c == 0) return;
  }
  std::vector<std::size_t> pick(counts.size(), 0);
  while (true) {
    visit(pick);
    std::size_t pos = counts.size();
    while (pos > 0) {
      --pos;
      if (++pick[pos] < counts[pos]) break;
      pick[pos] = 0;
      if (pos == 0) return;
    }
    if (counts.empty()) return;
  }
}

std::string string_name(const FiniteCategory& a, const std::vector<std::size_t>& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += a.object(s[i]);
  }
  return out + ")";
}

}  // namespace

PCategory p_truncated(const CategoryPtr& a, std::size_t max_length) {
  PCategory p;
  p.base = a;
  p.max_length = max_length;
  const std::size_t na = a->object_count();
  for (std::size_t len = 0; len <= max_length; ++len) {
    for (std::size_t code = 0; code < ipow(na, len); ++code) p.strings.push_back(digits(code, na, len));
  }
  const std::size_t no = p.strings.size();

  std::vector<std::string> names;
  for (const auto& s : p.strings) names.push_back(string_name(*a, s));

  using Key = std::tuple<std::size_t, std::size_t, std::vector<std::size_t>, std::vector<std::size_t>>;
  std::map<Key, std::size_t> lookup;
  std::vector<FiniteCategory::Arrow> arrows;
  auto add = [&](std::size_t src, std::size_t tgt, BaseFunction alpha, std::vector<std::size_t> parts) {
    std::string name = "[";
    for (std::size_t i = 0; i < alpha.source; ++i) name += (i ? "," : "") + std::to_string(alpha(i));
    name += "](";
    for (std::size_t i = 0; i < parts.size(); ++i) name += (i ? "," : "") + a->arrow(parts[i]).name;
    name += ")";
    if (src == tgt && alpha == BaseFunction::identity(alpha.source)) {
      bool all_id = true;
      for (auto f : parts) all_id = all_id && a->is_identity(f);
      if (all_id) name = "id_" + names[src];
    }
    lookup[{src, tgt, alpha.table, parts}] = arrows.size();
    arrows.push_back({name, src, tgt});
    p.index.push_back(std::move(alpha));
    p.parts.push_back(std::move(parts));
  };

  for (std::size_t o = 0; o < no; ++o) {
    std::vector<std::size_t> ids;
    for (auto x : p.strings[o]) ids.push_back(a->identity(x));
    add(o, o, BaseFunction::identity(p.strings[o].size()), ids);
  }
  for (std::size_t src = 0; src < no; ++src) {
    const auto& as = p.strings[src];
    for (std::size_t tgt = 0; tgt < no; ++tgt) {
      const auto& bs = p.strings[tgt];
      for (const auto& alpha : all_functions(bs.size(), as.size())) {
        std::vector<const std::vector<std::size_t>*> options;
        std::vector<std::size_t> counts;
        for (std::size_t i = 0; i < bs.size(); ++i) {
          options.push_back(&a->hom(as[alpha(i)], bs[i]));
          counts.push_back(options.back()->size());
        }
        for_each_choice(counts, [&](const std::vector<std::size_t>& pick) {
          std::vector<std::size_t> parts;
          for (std::size_t i = 0; i < pick.size(); ++i) parts.push_back((*options[i])[pick[i]]);
          if (!lookup.count({src, tgt, alpha.table, parts})) add(src, tgt, alpha, parts);
        });
      }
    }
  }

  const std::size_t n = arrows.size();
  std::vector<std::size_t> table(n * n, FiniteCategory::npos);
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t f = 0; f < n; ++f) {
      if (arrows[f].target != arrows[g].source) continue;
      // (beta, g_i) o (alpha, f_i) = (alpha o beta, g_i o f_beta(i)).
      BaseFunction idx = compose(p.index[f], p.index[g]);
      std::vector<std::size_t> parts;
      for (std::size_t i = 0; i < p.parts[g].size(); ++i) {
        parts.push_back(a->compose(p.parts[g][i], p.parts[f][p.index[g](i)]));
      }
      table[g * n + f] = lookup.at({arrows[f].source, arrows[g].target, idx.table, parts});
    }
  }
  p.category = std::make_shared<const FiniteCategory>(std::move(names), std::move(arrows), std::move(table));
  return p;
}

namespace {

// Elements of PF(b; a): an index function alpha: [|a|] -> [|b|] and a tuple
// x_j in F(b_alpha(j), a_j), numbered by alpha then x.
struct PCell {
  std::vector<std::pair<BaseFunction, std::vector<std::size_t>>> elements;
  std::map<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>, std::size_t> lookup;

  std::size_t find(const BaseFunction& alpha, const std::vector<std::size_t>& x) const {
    return lookup.at({alpha.table, x});
  }
};

}  // namespace

FiniteProfunctor p_on_prof(const FiniteProfunctor& f, const PCategory& pa, const PCategory& pb) {
  if (pa.base != f.source() || pb.base != f.target()) {
    throw structural_error("P of a profunctor needs the truncations of its own source and target");
  }
  const auto& pc = *pa.category;
  const auto& pd = *pb.category;
  const std::size_t nc = pc.object_count();
  const std::size_t nd = pd.object_count();

  std::vector<PCell> cells(nd * nc);
  std::vector<std::size_t> sizes(nd * nc);
  for (std::size_t d = 0; d < nd; ++d) {
    const auto& bs = pb.strings[d];
    for (std::size_t c = 0; c < nc; ++c) {
      const auto& as = pa.strings[c];
      auto& cell = cells[d * nc + c];
      for (const auto& alpha : all_functions(as.size(), bs.size())) {
        std::vector<std::size_t> counts;
        for (std::size_t j = 0; j < as.size(); ++j) counts.push_back(f.size(bs[alpha(j)], as[j]));
        for_each_choice(counts, [&](const std::vector<std::size_t>& x) {
          cell.lookup[{alpha.table, x}] = cell.elements.size();
          cell.elements.emplace_back(alpha, x);
        });
      }
      sizes[d * nc + c] = cell.elements.size();
    }
  }

  std::vector<FiniteProfunctor::Table> pulls(pd.arrow_count() * nc);
  for (std::size_t u = 0; u < pd.arrow_count(); ++u) {
    const std::size_t d = pd.target(u), d2 = pd.source(u);
    const auto& gamma = pb.index[u];
    for (std::size_t c = 0; c < nc; ++c) {
      const auto& as = pa.strings[c];
      auto& table = pulls[u * nc + c];
      for (const auto& [alpha, x] : cells[d * nc + c].elements) {
        std::vector<std::size_t> y(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) y[j] = f.pull(pb.parts[u][alpha(j)], as[j], x[j]);
        table.push_back(cells[d2 * nc + c].find(compose(gamma, alpha), y));
      }
    }
  }

  std::vector<FiniteProfunctor::Table> pushes(pc.arrow_count() * nd);
  for (std::size_t v = 0; v < pc.arrow_count(); ++v) {
    const std::size_t c = pc.source(v), c2 = pc.target(v);
    const auto& delta = pa.index[v];
    for (std::size_t d = 0; d < nd; ++d) {
      const auto& bs = pb.strings[d];
      auto& table = pushes[v * nd + d];
      for (const auto& [alpha, x] : cells[d * nc + c].elements) {
        std::vector<std::size_t> y(delta.source);
        for (std::size_t i = 0; i < delta.source; ++i) {
          y[i] = f.push(pa.parts[v][i], bs[alpha(delta(i))], x[delta(i)]);
        }
        table.push_back(cells[d * nc + c2].find(compose(alpha, delta), y));
      }
    }
  }
  return FiniteProfunctor(pa.category, pb.category, std::move(sizes), std::move(pulls), std::move(pushes));
}

std::vector<BaseFunction> kleisli_mult(std::size_t n, const std::vector<std::size_t>& ks) {
  std::size_t total = 0;
  for (auto k : ks) total += k;
  return all_functions(total, n);
}

std::vector<BaseFunction> kleisli_unit(std::size_t k) { return all_functions(1, k); }

TheoryMorphism oplus(const FinitaryMonadFragment& f, const TheoryMorphism& f1, const TheoryMorphism& f2) {
  const std::size_t n1 = f1.source, n2 = f2.source, n = n1 + n2;
  if (n > f.arity_bound) {
    throw structural_error("F[" + std::to_string(n) + "] is beyond the fragment bound " +
                           std::to_string(f.arity_bound));
  }
  std::vector<std::size_t> left(n1), right(n2);
  for (std::size_t i = 0; i < n1; ++i) left[i] = i;
  for (std::size_t i = 0; i < n2; ++i) right[i] = n1 + i;
  const BaseFunction inl(n1, n, left), inr(n2, n, right);
  TheoryMorphism out{n, f1.target + f2.target, {}};
  for (const auto& c : f1.components) out.components.push_back(f.map(inl, c));
  for (const auto& c : f2.components) out.components.push_back(f.map(inr, c));
  return out;
}

namespace {

// Strings (k_1..k_m), m <= max_length, entries summing to at most bound;
// ordered by length, then lexicographically, so shorter truncations are
// prefixes of longer ones.
std::vector<std::vector<std::size_t>> p2_strings(std::size_t max_length, std::size_t bound) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t len = 0; len <= max_length; ++len) {
    std::vector<std::size_t> s(len, 0);
    auto rec = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
      if (pos == len) {
        out.push_back(s);
        return;
      }
      for (std::size_t k = 0; k <= left; ++k) {
        s[pos] = k;
        self(self, pos + 1, left - k);
      }
    };
    rec(rec, 0, bound);
  }
  return out;
}

// The coend at (j, l): generators (V, sigma, w) with sigma: [sum V] -> [j]
// and w in (F k_1 + ... + F k_m)^l.
struct Coend {
  std::size_t j = 0, l = 0;
  const std::vector<std::vector<std::size_t>>* strings = nullptr;
  std::map<std::vector<std::size_t>, std::size_t> object_of;
  std::vector<std::size_t> base, ksum, width, wl;
  std::vector<std::vector<std::size_t>> koff, coff;  // prefix sums of k_i and |F k_i|
  std::size_t total = 0;
  std::vector<std::size_t> class_of;
  std::size_t class_count = 0;
  std::vector<std::size_t> image;           // per class, code in (F j)^l
  std::vector<std::size_t> first, last;     // per class
  bool well_defined = true;
  nlohmann::json witness;

  std::size_t id(std::size_t obj, std::size_t sigma, std::size_t w) const { return base[obj] + sigma * wl[obj] + w; }

  std::tuple<std::size_t, std::vector<std::size_t>, std::vector<std::size_t>> decode(std::size_t x) const {
    std::size_t obj = static_cast<std::size_t>(std::upper_bound(base.begin(), base.end(), x) - base.begin()) - 1;
    std::size_t local = x - base[obj];
    return {obj, digits(local / wl[obj], j, ksum[obj]), digits(local % wl[obj], width[obj], l)};
  }
};

nlohmann::json describe_generator(const Coend& c, FragmentTables& ft, std::size_t x) {
  auto [obj, sigma, w] = c.decode(x);
  const auto& ks = (*c.strings)[obj];
  nlohmann::json word = nlohmann::json::array();
  for (auto wt : w) {
    std::size_t i = static_cast<std::size_t>(std::upper_bound(c.coff[obj].begin(), c.coff[obj].end(), wt) -
                                             c.coff[obj].begin()) - 1;
    word.push_back({{"summand", i}, {"element", print_term(ft.element(ks[i], wt - c.coff[obj][i]))}});
  }
  return {{"string", ks}, {"sigma", sigma}, {"word", word}};
}

// Evaluation (sigma, w) |-> (t |-> F(sigma o inj_{i_t})(e_t)) as a code in (F j)^l.
std::size_t evaluate(const Coend& c, FragmentTables& ft, std::size_t obj, const std::vector<std::size_t>& sigma,
                     const std::vector<std::size_t>& w) {
  const auto& ks = (*c.strings)[obj];
  std::vector<std::size_t> out(w.size());
  for (std::size_t t = 0; t < w.size(); ++t) {
    std::size_t i = static_cast<std::size_t>(std::upper_bound(c.coff[obj].begin(), c.coff[obj].end(), w[t]) -
                                             c.coff[obj].begin()) - 1;
    std::vector<std::size_t> inj(ks[i]);
    for (std::size_t s = 0; s < ks[i]; ++s) inj[s] = sigma[c.koff[obj][i] + s];
    out[t] = ft.action(BaseFunction(ks[i], c.j, inj))[w[t] - c.coff[obj][i]];
  }
  return undigits(out, ft.size(c.j));
}

Coend build_coend(FragmentTables& ft, std::size_t j, std::size_t l, const std::vector<std::vector<std::size_t>>& strings) {
  Coend c;
  c.j = j;
  c.l = l;
  c.strings = &strings;
  for (std::size_t o = 0; o < strings.size(); ++o) {
    const auto& ks = strings[o];
    c.object_of[ks] = o;
    std::vector<std::size_t> ko{0}, co{0};
    for (auto k : ks) {
      ko.push_back(ko.back() + k);
      co.push_back(co.back() + ft.size(k));
    }
    c.base.push_back(c.total);
    c.ksum.push_back(ko.back());
    c.width.push_back(co.back());
    c.wl.push_back(ipow(co.back(), l));
    c.koff.push_back(std::move(ko));
    c.coff.push_back(std::move(co));
    c.total += ipow(j, c.ksum.back()) * c.wl.back();
  }

  UnionFind uf(c.total);
  // For f = (alpha, beta_i): U -> V the relation is
  //   (V, sigma o flat(f), y) ~ (U, sigma, PF(f) y).
  for (std::size_t u = 0; u < strings.size(); ++u) {
    const auto& as = strings[u];
    const std::size_t n_sigma = ipow(j, c.ksum[u]);
    for (std::size_t v = 0; v < strings.size(); ++v) {
      const auto& bs = strings[v];
      const std::size_t n_y = c.wl[v];
      if (n_sigma == 0 || n_y == 0) continue;
      for (const auto& alpha : all_functions(bs.size(), as.size())) {
        std::vector<std::vector<BaseFunction>> betas;
        std::vector<std::size_t> counts;
        for (std::size_t i = 0; i < bs.size(); ++i) {
          betas.push_back(all_functions(bs[i], as[alpha(i)]));
          counts.push_back(betas.back().size());
        }
        for_each_choice(counts, [&](const std::vector<std::size_t>& pick) {
          std::vector<std::size_t> flat(c.ksum[v]), pf(c.width[v]);
          for (std::size_t i = 0; i < bs.size(); ++i) {
            const auto& beta = betas[i][pick[i]];
            for (std::size_t t = 0; t < bs[i]; ++t) flat[c.koff[v][i] + t] = c.koff[u][alpha(i)] + beta(t);
            const auto& fb = ft.action(beta);
            for (std::size_t e = 0; e < fb.size(); ++e) pf[c.coff[v][i] + e] = c.coff[u][alpha(i)] + fb[e];
          }
          std::vector<std::size_t> sflat(n_sigma), ymap(n_y);
          for (std::size_t s = 0; s < n_sigma; ++s) {
            auto sd = digits(s, j, c.ksum[u]);
            std::vector<std::size_t> out(flat.size());
            for (std::size_t p = 0; p < flat.size(); ++p) out[p] = sd[flat[p]];
            sflat[s] = undigits(out, j);
          }
          for (std::size_t y = 0; y < n_y; ++y) {
            auto yd = digits(y, c.width[v], l);
            for (auto& e : yd) e = pf[e];
            ymap[y] = undigits(yd, c.width[u]);
          }
          for (std::size_t s = 0; s < n_sigma; ++s) {
            for (std::size_t y = 0; y < n_y; ++y) uf.unite(c.id(v, sflat[s], y), c.id(u, s, ymap[y]));
          }
        });
      }
    }
  }

  auto [ids, count] = uf.classes();
  c.class_of = std::move(ids);
  c.class_count = count;
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  c.image.assign(count, none);
  c.first.assign(count, none);
  c.last.assign(count, none);
  for (std::size_t o = 0; o < strings.size(); ++o) {
    const std::size_t n_sigma = ipow(j, c.ksum[o]);
    for (std::size_t s = 0; s < n_sigma; ++s) {
      auto sd = digits(s, j, c.ksum[o]);
      for (std::size_t y = 0; y < c.wl[o]; ++y) {
        const std::size_t x = c.id(o, s, y);
        const std::size_t k = c.class_of[x];
        const std::size_t value = evaluate(c, ft, o, sd, digits(y, c.width[o], l));
        if (c.first[k] == none) {
          c.first[k] = x;
          c.image[k] = value;
        } else if (c.image[k] != value && c.well_defined) {
          c.well_defined = false;
          c.witness = {{"kind", "evaluation"},
                       {"j", j},
                       {"n", l},
                       {"a", describe_generator(c, ft, c.first[k])},
                       {"b", describe_generator(c, ft, x)},
                       {"reason", "related generators evaluate differently"}};
        }
        c.last[k] = x;
      }
    }
  }
  return c;
}

}  // namespace

Report verify_keyprop(const FinitaryMonadFragment& f, std::size_t j_bound, std::size_t n_bound,
                      std::size_t max_length) {
  auto start = std::chrono::steady_clock::now();
  Report report;
  report.subject = "keyprop:" + f.name;
  report.bounds = {{"j", static_cast<long long>(j_bound)},
                   {"n", static_cast<long long>(n_bound)},
                   {"maxLength", static_cast<long long>(max_length)},
                   {"entrySum", static_cast<long long>(j_bound)}};

  FragmentTables ft(f, j_bound);
  const auto strings = p2_strings(max_length, j_bound);
  const auto longer = p2_strings(max_length + 1, j_bound);

  std::vector<std::vector<Coend>> cells(j_bound + 1);
  bool stable = true;
  nlohmann::json cell_info = nlohmann::json::array();
  for (std::size_t j = 0; j <= j_bound; ++j) {
    for (std::size_t l = 0; l <= n_bound; ++l) {
      Coend c = build_coend(ft, j, l, strings);
      const std::size_t expected = ipow(ft.size(j), l);

      report.check(c.class_count == expected, {{"kind", "cardinality"},
                                                {"j", j},
                                                {"n", l},
                                                {"classes", c.class_count},
                                                {"expected", expected}});

      bool injective = true;
      std::vector<bool> seen(expected, false);
      for (std::size_t k = 0; k < c.class_count && injective; ++k) {
        if (c.image[k] >= expected || seen[c.image[k]]) injective = false;
        else seen[c.image[k]] = true;
      }
      if (!c.well_defined) {
        report.fail(c.witness);
      } else {
        report.check(injective, {{"kind", "evaluation"}, {"j", j}, {"n", l}, {"reason", "two classes evaluate alike"}});
      }

      Coend bigger = build_coend(ft, j, l, longer);
      bool same = bigger.class_count == c.class_count &&
                  std::equal(c.class_of.begin(), c.class_of.end(), bigger.class_of.begin());
      stable = stable && same;
      report.check(same, {{"kind", "stability"},
                          {"j", j},
                          {"n", l},
                          {"classes", c.class_count},
                          {"classesAtNextLength", bigger.class_count}});

      cell_info.push_back({{"j", j},
                           {"n", l},
                           {"generators", c.total},
                           {"classes", c.class_count},
                           {"expected", expected},
                           {"stable", same}});
      cells[j].push_back(std::move(c));
    }
  }
  report.stability["maxLength+1"] = stable;

  // Actions: h: [j] -> [j'] acts by sigma |-> h o sigma and g: [l'] -> [l] by
  // w |-> w o g. On classes this must be well defined and match
  // e |-> F(h) o e o g on Set(l, F j).
  for (std::size_t j = 0; j <= j_bound; ++j) {
    for (std::size_t l = 0; l <= n_bound; ++l) {
      const Coend& c = cells[j][l];
      const std::size_t fj = ft.size(j);
      nlohmann::json bad;
      for (std::size_t j2 = 0; j2 <= j_bound && bad.is_null(); ++j2) {
        const std::size_t fj2 = ft.size(j2);
        for (const auto& h : all_functions(j, j2)) {
          const auto& fh = ft.action(h);
          for (std::size_t l2 = 0; l2 <= n_bound && bad.is_null(); ++l2) {
            const Coend& d = cells[j2][l2];
            for (const auto& g : all_functions(l2, l)) {
              for (std::size_t k = 0; k < c.class_count && bad.is_null(); ++k) {
                auto e = digits(c.image[k], fj, l);
                std::vector<std::size_t> want(l2);
                for (std::size_t t = 0; t < l2; ++t) want[t] = fh[e[g(t)]];
                const std::size_t expected = undigits(want, fj2);
                for (std::size_t x : {c.first[k], c.last[k]}) {
                  auto [obj, sigma, w] = c.decode(x);
                  for (auto& s : sigma) s = h(s);
                  std::vector<std::size_t> w2(l2);
                  for (std::size_t t = 0; t < l2; ++t) w2[t] = w[g(t)];
                  const std::size_t y = d.id(obj, undigits(sigma, j2), undigits(w2, d.width[obj]));
                  const std::size_t got = d.image[d.class_of[y]];
                  if (got != expected) {
                    bad = {{"kind", "action"},
                           {"j", j},
                           {"n", l},
                           {"h", h.table},
                           {"g", g.table},
                           {"generator", describe_generator(c, ft, x)},
                           {"image", digits(got, fj2, l2)},
                           {"expected", want}};
                    break;
                  }
                }
              }
              if (!bad.is_null()) break;
            }
          }
          if (!bad.is_null()) break;
        }
      }
      if (bad.is_null()) {
        report.pass();
      } else {
        report.fail(bad);
      }
    }
  }

  report.details["cells"] = cell_info;
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace lawvere

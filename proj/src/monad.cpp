#include "lawvere/monad.hpp"

#include "lawvere/term_text.hpp"

namespace lawvere {

std::vector<Term> FinitaryMonadFragment::elements(std::size_t n) const {
  if (n > arity_bound) {
    throw structural_error("F[" + std::to_string(n) + "] is beyond the fragment bound " + std::to_string(arity_bound));
  }
  if (enumerate) return enumerate(n);
  return enumerate_terms(theory, n, size_bound);
}

Term FinitaryMonadFragment::map(const BaseFunction& f, const Term& t) const {
  if (!t.well_formed(f.source)) throw structural_error("element is not over " + std::to_string(f.source) + " variables");
  if (f.target > arity_bound) throw structural_error("F[" + std::to_string(f.target) + "] is beyond the fragment bound");
  return normalize(theory, rename(t, f.table));
}

Term FinitaryMonadFragment::bind(const Term& t, std::span<const Term> sigma) const {
  if (bind_fn) return bind_fn(t, sigma);
  return normalize(theory, substitute(t, sigma));
}

FragmentTables::FragmentTables(const FinitaryMonadFragment& f, std::size_t bound) : f_(f) {
  for (std::size_t k = 0; k <= bound; ++k) {
    elems_.push_back(f.elements(k));
    std::map<Term, std::size_t> idx;
    for (std::size_t i = 0; i < elems_.back().size(); ++i) idx.emplace(elems_.back()[i], i);
    index_.push_back(std::move(idx));
  }
}

std::size_t FragmentTables::index_of(std::size_t k, const Term& t) const {
  auto it = index_.at(k).find(t);
  if (it == index_[k].end()) {
    throw structural_error(print_term(t) + " is not among the listed elements of F[" + std::to_string(k) + "] of '" +
                           f_.name + "'");
  }
  return it->second;
}

const std::vector<std::size_t>& FragmentTables::action(const BaseFunction& b) {
  auto key = std::make_pair(b.table, b.target);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  std::vector<std::size_t> out;
  for (const auto& t : elems_.at(b.source)) out.push_back(index_of(b.target, f_.map(b, t)));
  return cache_.emplace(key, std::move(out)).first->second;
}

std::size_t leaf_count(const Term& t) {
  if (t.is_var()) return 1;
  std::size_t n = 0;
  for (const auto& a : t.args()) n += leaf_count(a);
  return n;
}

namespace fragments {

FinitaryMonadFragment identity(std::size_t arity_bound) {
  FinitaryMonadFragment f;
  f.name = "identity";
  f.theory = builtin::identity();
  f.arity_bound = arity_bound;
  f.size_bound = 1;
  f.exhaustive = true;
  return f;
}

FinitaryMonadFragment pointed(std::size_t arity_bound) {
  FinitaryMonadFragment f;
  f.name = "pointed";
  f.theory = builtin::pointed();
  f.arity_bound = arity_bound;
  f.size_bound = 1;
  f.exhaustive = true;
  return f;
}

FinitaryMonadFragment free_monoid(std::size_t max_length, std::size_t arity_bound) {
  FinitaryMonadFragment f;
  f.name = "free_monoid";
  f.theory = builtin::monoid();
  f.arity_bound = arity_bound;
  f.size_bound = max_length;
  f.exhaustive = false;
  f.measure = leaf_count;
  f.enumerate = [max_length](std::size_t n) {
    std::vector<Term> out{Term::constant(ops::one)};
    std::vector<std::vector<std::size_t>> layer{{}};
    for (std::size_t len = 1; len <= max_length && n > 0; ++len) {
      std::vector<std::vector<std::size_t>> next;
      for (const auto& w : layer) {
        for (std::size_t a = 0; a < n; ++a) {
          auto w2 = w;
          w2.push_back(a);
          out.push_back(make_word(w2, ops::mul, ops::one));
          next.push_back(std::move(w2));
        }
      }
      layer = std::move(next);
    }
    return out;
  };
  return f;
}

FinitaryMonadFragment from_theory(const TheorySpec& theory, std::size_t size_bound, std::size_t arity_bound) {
  FinitaryMonadFragment f;
  f.name = theory.name;
  f.theory = theory;
  f.arity_bound = arity_bound;
  f.size_bound = size_bound;
  f.exhaustive = false;
  return f;
}

}  // namespace fragments

}  // namespace lawvere

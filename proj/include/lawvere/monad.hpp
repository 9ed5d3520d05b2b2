#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lawvere/theory.hpp"

namespace lawvere {

/// A finitary monad known through the sets F[n], n <= arity_bound, presented
/// as normal terms of a theory. Elements of F[n] are terms over n variables;
/// F acts on functions by renaming, the unit is x_i, and multiplication is
/// substitution followed by normalization.
struct FinitaryMonadFragment {
  std::string name;
  TheorySpec theory;
  std::size_t arity_bound = 4;
  /// F[n] is cut to terms with at most this many nodes (or, with a custom
  /// enumeration, whatever bound it applies).
  std::size_t size_bound = 1;
  /// True when the cut loses nothing, i.e. every F[n] is finite and listed.
  bool exhaustive = false;
  /// Size reported for elements; node count unless set.
  std::function<std::size_t(const Term&)> measure;
  /// Custom enumeration of F[n]; defaults to enumerate_terms.
  std::function<std::vector<Term>(std::size_t)> enumerate;
  /// Custom multiplication; defaults to substitute-then-normalize.
  std::function<Term(const Term&, std::span<const Term>)> bind_fn;

  /// F[n]; throws structural_error if n > arity_bound.
  std::vector<Term> elements(std::size_t n) const;
  /// F(f) for f: [n] -> [n'].
  Term map(const BaseFunction& f, const Term& t) const;
  Term unit(std::size_t i) const { return Term::var(i); }
  Term bind(const Term& t, std::span<const Term> sigma) const;
  std::size_t size_of(const Term& t) const { return measure ? measure(t) : t.size(); }
};

namespace fragments {
/// F X = X.
FinitaryMonadFragment identity(std::size_t arity_bound = 4);
/// F X = X + 1.
FinitaryMonadFragment pointed(std::size_t arity_bound = 4);
/// Words of length at most max_length.
FinitaryMonadFragment free_monoid(std::size_t max_length, std::size_t arity_bound = 4);
/// Normal forms of any theory with at most size_bound nodes.
FinitaryMonadFragment from_theory(const TheorySpec& theory, std::size_t size_bound, std::size_t arity_bound = 4);
}  // namespace fragments

/// F[0..bound] listed once, with F of functions cached as index tables.
class FragmentTables {
 public:
  FragmentTables(const FinitaryMonadFragment& f, std::size_t bound);

  std::size_t bound() const { return elems_.size() - 1; }
  std::size_t size(std::size_t k) const { return elems_.at(k).size(); }
  const Term& element(std::size_t k, std::size_t i) const { return elems_.at(k).at(i); }
  const std::vector<Term>& elements(std::size_t k) const { return elems_.at(k); }
  /// Index of t in F[k]; throws structural_error if absent.
  std::size_t index_of(std::size_t k, const Term& t) const;
  /// F(b) as a table F[b.source] -> F[b.target]. Throws structural_error if
  /// the listed elements are not closed under F(b).
  const std::vector<std::size_t>& action(const BaseFunction& b);
  const FinitaryMonadFragment& fragment() const { return f_; }

 private:
  const FinitaryMonadFragment& f_;
  std::vector<std::vector<Term>> elems_;
  std::vector<std::map<Term, std::size_t>> index_;
  std::map<std::pair<std::vector<std::size_t>, std::size_t>, std::vector<std::size_t>> cache_;
};

/// Number of variable leaves; the length of a word.
std::size_t leaf_count(const Term& t);

}  // namespace lawvere

#include "lawvere/theories.hpp"

#include <algorithm>

namespace lawvere {

const OperationSymbol* TheorySpec::find(std::string_view id) const {
  for (const auto& op : signature) {
    if (op.id == id) return &op;
  }
  return nullptr;
}

bool TheorySpec::covers(const Term& t) const {
  if (t.is_var()) return true;
  const auto* op = find(t.op().id);
  if (op == nullptr || op->arity != t.op().arity) return false;
  return std::all_of(t.args().begin(), t.args().end(), [&](const Term& a) { return covers(a); });
}

Term normalize(const TheorySpec& theory, const Term& t) {
  if (!theory.covers(t)) {
    throw structural_error("term " + to_prefix(t) + " uses an operation outside theory '" +
                           theory.name + "'");
  }
  return theory.normalizer(t);
}

namespace {

// All ways to write `total` as an ordered sum of `parts` positive sizes.
void compositions(std::size_t total, std::size_t parts, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
  if (parts == 0) {
    if (total == 0) out.push_back(cur);
    return;
  }
  for (std::size_t s = 1; s + (parts - 1) <= total; ++s) {
    cur.push_back(s);
    compositions(total - s, parts - 1, cur, out);
    cur.pop_back();
  }
}

void product_fill(const std::vector<std::vector<Term>>& by_size, const std::vector<std::size_t>& sizes,
                  std::size_t pos, std::vector<Term>& args, const OperationSymbol& op,
                  std::vector<Term>& out) {
  if (pos == sizes.size()) {
    out.push_back(Term::app(op, args));
    return;
  }
  for (const auto& t : by_size[sizes[pos]]) {
    args.push_back(t);
    product_fill(by_size, sizes, pos + 1, args, op, out);
    args.pop_back();
  }
}

}  // namespace

std::vector<Term> enumerate_raw_terms(const std::vector<OperationSymbol>& signature, std::size_t k,
                                      std::size_t size_bound) {
  std::vector<std::vector<Term>> by_size(size_bound + 1);
  for (std::size_t n = 1; n <= size_bound; ++n) {
    auto& bucket = by_size[n];
    if (n == 1) {
      for (std::size_t i = 0; i < k; ++i) bucket.push_back(Term::var(i));
      for (const auto& op : signature) {
        if (op.arity == 0) bucket.push_back(Term::constant(op));
      }
      continue;
    }
    for (const auto& op : signature) {
      if (op.arity == 0) continue;
      std::vector<std::vector<std::size_t>> splits;
      std::vector<std::size_t> cur;
      compositions(n - 1, op.arity, cur, splits);
      for (const auto& sizes : splits) {
        std::vector<Term> args;
        product_fill(by_size, sizes, 0, args, op, bucket);
      }
    }
  }
  std::vector<Term> out;
  for (auto& bucket : by_size) {
    out.insert(out.end(), bucket.begin(), bucket.end());
  }
  return out;
}

std::vector<Term> enumerate_terms(const TheorySpec& theory, std::size_t k, std::size_t size_bound) {
  std::vector<Term> out;
  for (const auto& t : enumerate_raw_terms(theory.signature, k, size_bound)) {
    if (theory.normalizer(t) == t) out.push_back(t);
  }
  return out;
}

Term random_term(const TheorySpec& theory, std::size_t k, std::size_t max_depth,
                 std::mt19937_64& rng) {
  std::vector<const OperationSymbol*> constants, compound;
  for (const auto& op : theory.signature) {
    (op.arity == 0 ? constants : compound).push_back(&op);
  }
  auto leaf = [&]() -> Term {
    bool use_var = k > 0 && (constants.empty() || std::uniform_int_distribution<int>(0, 3)(rng) != 0);
    if (use_var) return Term::var(std::uniform_int_distribution<std::size_t>(0, k - 1)(rng));
    if (constants.empty()) throw structural_error("theory '" + theory.name + "' has no closed terms");
    return Term::constant(*constants[std::uniform_int_distribution<std::size_t>(0, constants.size() - 1)(rng)]);
  };
  if (max_depth == 0 || compound.empty() || std::uniform_int_distribution<int>(0, 2)(rng) == 0) {
    return leaf();
  }
  const auto& op = *compound[std::uniform_int_distribution<std::size_t>(0, compound.size() - 1)(rng)];
  std::vector<Term> args;
  for (std::size_t i = 0; i < op.arity; ++i) args.push_back(random_term(theory, k, max_depth - 1, rng));
  return Term::app(op, std::move(args));
}

std::vector<std::size_t> word_of(const Term& t) {
  std::vector<std::size_t> letters;
  auto walk = [&](auto&& self, const Term& u) -> void {
    if (u.is_var()) {
      letters.push_back(u.index());
    } else if (u.op().id == "mul") {
      self(self, u.args()[0]);
      self(self, u.args()[1]);
    } else if (u.op().id == "one") {
      // unit contributes nothing
    } else {
      throw structural_error("not a word: " + to_prefix(t));
    }
  };
  walk(walk, t);
  return letters;
}

Term make_word(const std::vector<std::size_t>& letters, const OperationSymbol& mul,
               const std::optional<OperationSymbol>& unit) {
  if (letters.empty()) {
    if (!unit) throw structural_error("empty word in a theory without unit");
    return Term::constant(*unit);
  }
  Term acc = Term::var(letters[0]);
  for (std::size_t i = 1; i < letters.size(); ++i) acc = Term::app(mul, {acc, Term::var(letters[i])});
  return acc;
}

std::map<std::size_t, long long> coefficients_of(const Term& t) {
  std::map<std::size_t, long long> c;
  auto walk = [&](auto&& self, const Term& u, long long sign) -> void {
    if (u.is_var()) {
      c[u.index()] += sign;
    } else if (u.op().id == "add") {
      self(self, u.args()[0], sign);
      self(self, u.args()[1], sign);
    } else if (u.op().id == "neg") {
      self(self, u.args()[0], -sign);
    } else if (u.op().id != "zero") {
      throw structural_error("not an abelian-group term: " + to_prefix(t));
    }
  };
  walk(walk, t, 1);
  std::erase_if(c, [](const auto& kv) { return kv.second == 0; });
  return c;
}

Term make_combination(const std::map<std::size_t, long long>& coefficients) {
  std::optional<Term> acc;
  for (const auto& [index, coef] : coefficients) {
    Term summand = coef < 0 ? Term::app(ops::neg, {Term::var(index)}) : Term::var(index);
    for (long long i = 0; i < (coef < 0 ? -coef : coef); ++i) {
      acc = acc ? Term::app(ops::add, {*acc, summand}) : summand;
    }
  }
  return acc ? *acc : Term::constant(ops::zero);
}

namespace builtin {

TheorySpec monoid() {
  TheorySpec t;
  t.name = "monoid";
  t.signature = {ops::mul, ops::one};
  t.normalizer = [](const Term& u) { return make_word(word_of(u), ops::mul, ops::one); };
  t.identities = {"(xy)z = x(yz)", "1x = x = x1"};
  return t;
}

TheorySpec semigroup() {
  TheorySpec t;
  t.name = "semigroup";
  t.signature = {ops::smul};
  t.normalizer = [](const Term& u) {
    if (!u.is_var() && u.op().id == "one") throw structural_error("semigroup has no unit");
    return make_word(word_of(u), ops::smul, std::nullopt);
  };
  t.identities = {"(xy)z = x(yz)"};
  return t;
}

TheorySpec abelian_group() {
  TheorySpec t;
  t.name = "abelian_group";
  t.signature = {ops::add, ops::neg, ops::zero};
  t.normalizer = [](const Term& u) { return make_combination(coefficients_of(u)); };
  t.identities = {"(x+y)+z = x+(y+z)", "x+y = y+x", "x+0 = x", "x+(-x) = 0"};
  return t;
}

TheorySpec pointed() {
  TheorySpec t;
  t.name = "pointed";
  t.signature = {ops::pt};
  t.normalizer = [](const Term& u) { return u; };
  return t;
}

TheorySpec commutative_monoid() {
  TheorySpec t;
  t.name = "commutative_monoid";
  t.signature = {ops::cadd, ops::czero};
  t.normalizer = [](const Term& u) {
    std::map<std::size_t, long long> counts;
    auto walk = [&](auto&& self, const Term& v) -> void {
      if (v.is_var()) {
        ++counts[v.index()];
      } else if (v.op().id == "cadd") {
        self(self, v.args()[0]);
        self(self, v.args()[1]);
      } else if (v.op().id != "czero") {
        throw structural_error("not a commutative-monoid term: " + to_prefix(u));
      }
    };
    walk(walk, u);
    std::optional<Term> acc;
    for (const auto& [index, n] : counts) {
      for (long long i = 0; i < n; ++i) {
        acc = acc ? Term::app(ops::cadd, {*acc, Term::var(index)}) : Term::var(index);
      }
    }
    return acc ? *acc : Term::constant(ops::czero);
  };
  t.identities = {"(x+y)+z = x+(y+z)", "x+y = y+x", "x+0 = x"};
  return t;
}

TheorySpec identity() {
  TheorySpec t;
  t.name = "identity";
  t.normalizer = [](const Term& u) { return u; };
  return t;
}

}  // namespace builtin

}  // namespace lawvere

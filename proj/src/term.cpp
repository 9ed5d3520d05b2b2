#include "lawvere/term.hpp"

#include <algorithm>
#include <utility>

namespace lawvere {

struct Term::Node {
  bool is_var = false;
  std::size_t index = 0;
  OperationSymbol op;
  std::vector<Term> args;
  std::size_t size = 1;
  std::size_t depth = 0;
  std::size_t var_bound = 0;
};

Term Term::var(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->is_var = true;
  n->index = index;
  n->var_bound = index + 1;
  return Term(std::move(n));
}

Term Term::app(const OperationSymbol& op, std::vector<Term> args) {
  if (args.size() != op.arity) {
    throw structural_error("operation '" + op.id + "' expects " + std::to_string(op.arity) +
                           " arguments, got " + std::to_string(args.size()));
  }
  auto n = std::make_shared<Node>();
  n->op = op;
  for (const auto& a : args) {
    n->size += a.size();
    n->depth = std::max(n->depth, a.depth() + 1);
    n->var_bound = std::max(n->var_bound, a.var_bound());
  }
  n->args = std::move(args);
  return Term(std::move(n));
}

bool Term::is_var() const { return node_->is_var; }
std::size_t Term::index() const { return node_->index; }
const OperationSymbol& Term::op() const { return node_->op; }
std::span<const Term> Term::args() const { return node_->args; }
std::size_t Term::size() const { return node_->size; }
std::size_t Term::depth() const { return node_->depth; }
std::size_t Term::var_bound() const { return node_->var_bound; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_var() != b.is_var()) return false;
  if (a.is_var()) return a.index() == b.index();
  if (a.size() != b.size() || !(a.op() == b.op())) return false;
  auto xs = a.args();
  auto ys = b.args();
  return std::equal(xs.begin(), xs.end(), ys.begin(), ys.end());
}

namespace {

struct LeafKey {
  int kind;  // 0 variable, 1 constant
  std::size_t index;
  std::string id;
  auto operator<=>(const LeafKey&) const = default;
};

void collect_leaves(const Term& t, std::vector<LeafKey>& out) {
  if (t.is_var()) {
    out.push_back({0, t.index(), {}});
  } else if (t.args().empty()) {
    out.push_back({1, 0, t.op().id});
  } else {
    for (const auto& a : t.args()) collect_leaves(a, out);
  }
}

std::strong_ordering structural(const Term& a, const Term& b) {
  if (a.is_var() != b.is_var()) {
    return a.is_var() ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (a.is_var()) return a.index() <=> b.index();
  if (auto c = a.op().id <=> b.op().id; c != 0) return c;
  if (auto c = a.op().arity <=> b.op().arity; c != 0) return c;
  auto xs = a.args();
  auto ys = b.args();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (auto c = structural(xs[i], ys[i]); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  std::vector<LeafKey> la, lb;
  collect_leaves(a, la);
  collect_leaves(b, lb);
  if (auto c = std::lexicographical_compare_three_way(la.begin(), la.end(), lb.begin(), lb.end());
      c != 0) {
    return c;
  }
  return structural(a, b);
}

Term substitute(const Term& t, std::span<const Term> sigma) {
  if (t.is_var()) {
    if (t.index() >= sigma.size()) {
      throw structural_error("substitution has " + std::to_string(sigma.size()) +
                             " entries but term mentions x" + std::to_string(t.index()));
    }
    return sigma[t.index()];
  }
  if (t.var_bound() == 0) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(substitute(a, sigma));
  return Term::app(t.op(), std::move(args));
}

Term substitute(const Term& t, std::size_t ambient, std::span<const Term> sigma) {
  if (sigma.size() != ambient) {
    throw structural_error("substitution length " + std::to_string(sigma.size()) +
                           " does not match ambient arity " + std::to_string(ambient));
  }
  if (!t.well_formed(ambient)) {
    throw structural_error("term " + to_prefix(t) + " is not over " + std::to_string(ambient) +
                           " variables");
  }
  return substitute(t, sigma);
}

Term rename(const Term& t, std::span<const std::size_t> f) {
  if (t.is_var()) {
    if (t.index() >= f.size()) throw structural_error("renaming does not cover x" + std::to_string(t.index()));
    return Term::var(f[t.index()]);
  }
  if (t.var_bound() == 0) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(rename(a, f));
  return Term::app(t.op(), std::move(args));
}

std::vector<Term> substitute_all(std::span<const Term> sigma, std::span<const Term> tau) {
  std::vector<Term> out;
  out.reserve(sigma.size());
  for (const auto& s : sigma) out.push_back(substitute(s, tau));
  return out;
}

std::vector<Term> variables(std::size_t k) {
  std::vector<Term> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(Term::var(i));
  return out;
}

std::string to_prefix(const Term& t) {
  if (t.is_var()) return "x" + std::to_string(t.index());
  std::string s = t.op().id;
  if (t.args().empty()) return s;
  s += '(';
  bool first = true;
  for (const auto& a : t.args()) {
    if (!first) s += ',';
    first = false;
    s += to_prefix(a);
  }
  s += ')';
  return s;
}

bool occurs_op(const Term& t, const std::string& op_id) {
  if (t.is_var()) return false;
  if (t.op().id == op_id) return true;
  return std::any_of(t.args().begin(), t.args().end(),
                     [&](const Term& a) { return occurs_op(a, op_id); });
}

}  // namespace lawvere

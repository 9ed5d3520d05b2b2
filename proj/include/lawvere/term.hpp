#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lawvere {

/// Raised for malformed input: arity mismatches, unknown symbols, layering
/// violations, out-of-range indices.
class structural_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct OperationSymbol {
  std::string id;
  std::size_t arity = 0;
  std::string theory_tag;

  friend bool operator==(const OperationSymbol& a, const OperationSymbol& b) {
    return a.id == b.id && a.arity == b.arity;
  }
};

/// Immutable syntax tree over positional variables x0, x1, ...
///
/// Terms do not carry their ambient arity; operations that need it take it
/// explicitly and check `max_var() < k`.
class Term {
 public:
  static Term var(std::size_t index);
  static Term app(const OperationSymbol& op, std::vector<Term> args);
  static Term constant(const OperationSymbol& op) { return app(op, {}); }

  bool is_var() const;
  std::size_t index() const;  // requires is_var()
  const OperationSymbol& op() const;  // requires !is_var()
  std::span<const Term> args() const;

  /// Node count of the syntax tree.
  std::size_t size() const;
  std::size_t depth() const;
  /// One past the largest variable index, 0 for closed terms.
  std::size_t var_bound() const;
  bool well_formed(std::size_t ambient) const { return var_bound() <= ambient; }

  friend bool operator==(const Term& a, const Term& b);
  /// Total order: leaf sequences compared lexicographically (variables by
  /// index before constants), ties broken structurally. On flattened words this
  /// is the lexicographic word order.
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Simultaneous replacement of x_i by sigma[i]. Throws if t mentions a variable
/// outside sigma.
Term substitute(const Term& t, std::span<const Term> sigma);

/// As above, but also checks that sigma has exactly `ambient` entries.
Term substitute(const Term& t, std::size_t ambient, std::span<const Term> sigma);

/// x_i -> x_{f[i]}.
Term rename(const Term& t, std::span<const std::size_t> f);

/// Entrywise substitution: (sigma o tau)[i] = substitute(sigma[i], tau).
std::vector<Term> substitute_all(std::span<const Term> sigma, std::span<const Term> tau);

std::vector<Term> variables(std::size_t k);

/// Prefix form, e.g. "mul(x0,add(x1,zero))". Stable; used for debugging and
/// as a canonical key.
std::string to_prefix(const Term& t);

bool occurs_op(const Term& t, const std::string& op_id);

}  // namespace lawvere

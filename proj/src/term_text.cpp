#include "lawvere/term_text.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace lawvere {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const TheorySpec& theory, std::size_t arity)
      : text_(text), theory_(theory), arity_(arity) {}

  Term run() {
    skip();
    if (pos_ >= text_.size()) throw parse_error("empty term", pos_);
    Term t = sum();
    skip();
    if (pos_ != text_.size()) throw parse_error(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return t;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool at_digit() {
    skip();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }
  bool at_atom_start() {
    skip();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return std::islower(static_cast<unsigned char>(c)) || c == '(' || c == '#';
  }

  const OperationSymbol& op_for(std::initializer_list<const char*> ids, const char* what) {
    for (const char* id : ids) {
      if (const auto* op = theory_.find(id)) return *op;
    }
    throw parse_error(std::string("theory '") + theory_.name + "' has no " + what, pos_);
  }

  long long integer() {
    skip();
    std::size_t start = pos_;
    long long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 1000000) throw parse_error("integer too large", start);
      ++pos_;
    }
    if (start == pos_) throw parse_error("expected integer", pos_);
    return v;
  }

  Term repeat_sum(const Term& t, long long n) {
    if (n == 0) return Term::constant(op_for({"zero", "czero"}, "zero"));
    std::optional<Term> acc;
    for (long long i = 0; i < n; ++i) {
      acc = acc ? Term::app(op_for({"add", "cadd"}, "addition"), {*acc, t}) : t;
    }
    return *acc;
  }

  Term sum() {
    std::optional<Term> acc;
    bool negate = false;
    if (peek('-')) {
      ++pos_;
      negate = true;
    }
    while (true) {
      Term s = summand();
      if (negate) s = Term::app(op_for({"neg"}, "negation"), {s});
      acc = acc ? Term::app(op_for({"add", "cadd"}, "addition"), {*acc, s}) : s;
      if (peek('+')) {
        ++pos_;
        negate = false;
      } else if (peek('-')) {
        ++pos_;
        negate = true;
      } else {
        return *acc;
      }
    }
  }

  Term summand() {
    if (at_digit()) {
      long long n = integer();
      if (at_atom_start()) return repeat_sum(product(std::nullopt), n);
      if (peek('*')) {
        ++pos_;
        return repeat_sum(product(std::nullopt), n);
      }
      if (n == 0) return Term::constant(op_for({"zero", "czero"}, "zero"));
      Term unit = Term::constant(op_for({"one", "pt"}, "unit"));
      return repeat_sum(unit, n);
    }
    return product(std::nullopt);
  }

  Term product(std::optional<Term> first) {
    std::vector<Term> factors;
    if (first) factors.push_back(*first);
    factors.push_back(power());
    while (true) {
      if (peek('*')) {
        ++pos_;
        factors.push_back(power());
      } else if (at_atom_start()) {
        factors.push_back(power());
      } else {
        break;
      }
    }
    Term acc = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) {
      acc = Term::app(op_for({"mul"}, "multiplication"), {acc, factors[i]});
    }
    return acc;
  }

  Term power() {
    Term a = atom();
    if (peek('^')) {
      ++pos_;
      std::size_t where = pos_;
      long long n = integer();
      if (n < 1) throw parse_error("exponent must be positive", where);
      Term acc = a;
      for (long long i = 1; i < n; ++i) acc = Term::app(op_for({"mul"}, "multiplication"), {acc, a});
      return acc;
    }
    return a;
  }

  Term atom() {
    skip();
    if (pos_ >= text_.size()) throw parse_error("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Term t = sum();
      if (!peek(')')) throw parse_error("expected ')'", pos_);
      ++pos_;
      return t;
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      ++pos_;
      return variable(static_cast<std::size_t>(c - 'a'), pos_ - 1);
    }
    if (c == '#') {
      ++pos_;
      std::size_t where = pos_;
      return variable(static_cast<std::size_t>(integer()), where);
    }
    if (c == '0') {
      ++pos_;
      return Term::constant(op_for({"zero", "czero"}, "zero"));
    }
    if (c == '1') {
      ++pos_;
      return Term::constant(op_for({"one", "pt"}, "unit"));
    }
    throw parse_error(std::string("unexpected '") + c + "'", pos_);
  }

  Term variable(std::size_t index, std::size_t where) {
    if (index >= arity_) {
      throw parse_error("variable " + std::to_string(index) + " beyond declared arity " +
                            std::to_string(arity_),
                        where);
    }
    return Term::var(index);
  }

  std::string_view text_;
  const TheorySpec& theory_;
  std::size_t arity_;
  std::size_t pos_ = 0;
};

bool is_op(const Term& t, std::string_view id) { return !t.is_var() && t.op().id == id; }
bool is_sum_op(const Term& t) { return is_op(t, "add") || is_op(t, "cadd"); }

void flatten(const Term& t, bool (*pred)(const Term&), std::vector<Term>& out) {
  if (pred(t)) {
    for (const auto& a : t.args()) flatten(a, pred, out);
  } else {
    out.push_back(t);
  }
}

bool is_mul(const Term& t) { return is_op(t, "mul"); }

std::string print_sum(const Term& t);

std::string print_var(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "#" + std::to_string(i);
}

// A factor inside a product.
std::string print_factor(const Term& t) {
  if (t.is_var()) return print_var(t.index());
  if (is_sum_op(t) || is_op(t, "neg")) return "(" + print_sum(t) + ")";
  if (is_mul(t)) return "(" + print_sum(t) + ")";
  if (t.args().empty()) {
    if (t.op().id == "one" || t.op().id == "pt") return "1";
    if (t.op().id == "zero" || t.op().id == "czero") return "0";
  }
  return "(" + print_sum(t) + ")";
}

std::string print_product(const Term& t) {
  std::vector<Term> fs;
  flatten(t, is_mul, fs);
  std::string out;
  for (std::size_t i = 0; i < fs.size();) {
    std::size_t run = 1;
    while (i + run < fs.size() && fs[i + run].is_var() && fs[i].is_var() && fs[i + run] == fs[i]) ++run;
    std::string f = print_factor(fs[i]);
    bool numeric = f == "0" || f == "1";
    if (!out.empty() && numeric) out += '*';
    out += f;
    if (run > 1) out += "^" + std::to_string(run);
    i += run;
  }
  return out;
}

// A summand without its sign.
std::string print_unsigned(const Term& t) {
  if (is_mul(t)) return print_product(t);
  if (is_sum_op(t)) return "(" + print_sum(t) + ")";
  return print_factor(t);
}

std::string print_sum(const Term& t) {
  std::vector<Term> summands;
  if (is_sum_op(t)) {
    flatten(t, is_sum_op, summands);
  } else {
    summands.push_back(t);
  }
  std::string out;
  for (std::size_t i = 0; i < summands.size();) {
    std::size_t run = 1;
    while (i + run < summands.size() && summands[i + run] == summands[i]) ++run;
    const Term& s = summands[i];
    bool negative = is_op(s, "neg");
    const Term body = negative ? s.args()[0] : s;
    std::string b = print_unsigned(body);
    if (negative && (is_op(body, "neg"))) b = "(" + b + ")";
    if (negative) {
      out += "-";
    } else if (!out.empty()) {
      out += "+";
    }
    if (run > 1) {
      out += std::to_string(run);
      if (b == "1" || b == "0" || std::isdigit(static_cast<unsigned char>(b[0]))) out += "*";
    }
    out += b;
    i += run;
  }
  return out;
}

}  // namespace

Term parse_raw_term(std::string_view text, const TheorySpec& theory, std::size_t arity) {
  return Parser(text, theory, arity).run();
}

Term parse_term(std::string_view text, const TheorySpec& theory, std::size_t arity) {
  return normalize(theory, parse_raw_term(text, theory, arity));
}

std::string print_term(const Term& t) { return print_sum(t); }

}  // namespace lawvere

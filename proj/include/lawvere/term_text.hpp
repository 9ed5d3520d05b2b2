#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "lawvere/theories.hpp"

// Surface syntax for terms.
//
//   sum     := ['-'] summand { ('+' | '-') summand }
//   summand := INT [product] | product
//   product := power { ['*'] power }
//   power   := atom ['^' INT]
//   atom    := letter | '#' INT | '(' sum ')' | '0' | '1'
//
// Letters a..z are the variables x0..x25, '#n' is x_n. Juxtaposition or '*'
// is the theory's `mul`, '+' its `add` (or `cadd`), prefix '-' is `neg`,
// '1' the unit or point, '0' the zero. An integer prefix n repeats a summand
// n times; a bare integer n >= 2 is n copies of '1'. A literal factor '0' or
// '1' after the first factor needs an explicit '*'.

namespace lawvere {

class parse_error : public structural_error {
 public:
  parse_error(const std::string& what, std::size_t position)
      : structural_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses `text` over `arity` variables into a raw term (not normalized).
Term parse_raw_term(std::string_view text, const TheorySpec& theory, std::size_t arity);

/// Parses and normalizes.
Term parse_term(std::string_view text, const TheorySpec& theory, std::size_t arity);

/// Inverse of parse_term on normal forms.
std::string print_term(const Term& t);

}  // namespace lawvere

#pragma once

#include "fomc/formula.hpp"

#include <cstddef>
#include <string>
#include <string_view>

namespace fomc {

class ParseError : public FormulaError {
  public:
    ParseError(std::size_t offset, const std::string & message)
        : FormulaError("parse error at offset " + std::to_string(offset) + ": " + message), offset_(offset)
    {
    }
    std::size_t offset() const { return offset_; }

  private:
    std::size_t offset_;
};

/// Grammar, loosest binding first:
///
///   formula  := quant | implies
///   quant    := ("exists" | "forall") var "." formula
///   implies  := xor ("->" (implies | quant))?
///   xor      := or ("^" or)*       (likewise | over &, & over unary)
///   unary    := "~" unary | "~" quant | atom | "(" formula ")" | quant
///   atom     := E(t,t) | U_name(t) | t=t | t!=t | flag(name) | dist<=K(t,t) | true | false
///   t        := var | "@" name
///
/// A quantifier extends as far right as possible.
Formula parse_formula(std::string_view text);

} // namespace fomc

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rhosk/process.hpp"
#include "rhosk/term.hpp"

namespace rhosk {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// term := "S" | "K" | "I" | "R" | "(" term term ")". `(R t)` is the marker
/// applied to t; R may not appear anywhere else.
Term parse_ski(std::string_view text);

/// term := atom | "(" term term ")"
/// atom := "C" | "0" | "|" | "for" | "!" | "&" | "*" | "S" | "K" | "I"
/// plus `$ident` for a free name token left by translation.
Term parse_comb(std::string_view text);

/// proc    := primary ["|" proc]
/// primary := "0" | "(" proc ")" | "*" name | "for(" binder "<-" name ")" primary
///          | name "!" primary
/// name    := "&" quoted | ident        quoted := "0" | "*" name | "(" proc ")"
/// binder  := ident | "&" quoted (closed)
/// Identifiers are legal only where bound.
Process parse_rho(std::string_view text);
/// A single closed name, e.g. `&0` or `&(&0!0)`.
Name parse_rho_name(std::string_view text);

/// Printers for both term syntaxes; Term::to_string already matches them.
std::string print_term(const Term& t);

}  // namespace rhosk

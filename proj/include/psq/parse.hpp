#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "psq/op_poly.hpp"
#include "psq/phase_poly.hpp"

namespace psq {

/// Syntax or semantic failure while reading an expression; `position` is the
/// zero-based offset into the input text.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& message, size_t position)
        : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    size_t position() const { return position_; }

  private:
    size_t position_;
};

/// Grammar (whitespace insignificant):
///   expr   := '-'? term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := atom ('^' nonneg-int)?
///   atom   := 'x' | 'p' | 'hbar' | 'l' | 'sqrt2' | 'i' | integer | '(' expr ')'
/// Rational constants are spelled with '/'; a divisor must be an invertible
/// coefficient (a single exact term free of x and p).
PhasePoly parse_phase_expr(const std::string& text);

/// Same grammar with the noncommuting atoms 'X','P' (position/momentum) or
/// 'a','ad' (ladder) in place of 'x','p'. The two groups cannot be mixed.
/// Pure coefficient expressions default to `fallback` (XP when omitted).
OpPoly parse_op_expr(const std::string& text,
                     std::optional<Alphabet> fallback = std::nullopt);

}  // namespace psq

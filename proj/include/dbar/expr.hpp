#pragma once

#include <complex>
#include <functional>
#include <string>

// Boundary data from a one-line expression over the node position.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' unary)?
//   primary := number ['i'] | 'i' | 'pi' | 'z' | 'zeta' | 'T'
//            | ('conj' | 'exp') ['(' expr ')'] | '(' expr ')'
//
// z and zeta are the node, T the unit tangent there. A function name without
// an argument applies to z, so "conj" means conj(z).

namespace dbar {

using BoundaryExpression = std::function<std::complex<double>(std::complex<double> z,
                                                              std::complex<double> t)>;

/// Throws DataError with the offending position on a syntax error.
BoundaryExpression parse_expression(const std::string& text);

}  // namespace dbar

#pragma once

#include <map>
#include <string>

namespace measlab {

/// Evaluates an arithmetic expression such as "1 - 1/n" or "2^-k * sqrt(N)".
///
/// Operators + - * / ^ (right-associative) and parentheses; functions sqrt,
/// log, exp, abs; constants pi and inf; any other identifier is looked up in
/// `vars`. Throws ParseError with the 1-based column of the offending token.
double evaluate_expression(const std::string& text, const std::map<std::string, double>& vars = {});

}  // namespace measlab

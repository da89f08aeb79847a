#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ttanova {

// Arithmetic expression over variables x1..xd (z1..zq accepted as synonyms
// for system-level functions). Grammar, loosest first:
//   expression := term (('+' | '-') term)*
//   term       := unary (('*' | '/') unary)*
//   unary      := '-' unary | power
//   power      := primary ('^' nonneg-integer)*
//   primary    := number | func '(' expression ')' | variable | '(' expression ')'
// Binary operators associate left; '^' requires a constant integer
// exponent >= 0.
class Expr {
public:
  enum class Kind { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };

  Kind kind = Kind::Number;
  double number = 0.0;
  int variable = 0;       // 0-based
  int exponent = 0;       // Pow only
  std::string func;       // Call only
  std::vector<Expr> children;

  bool structurally_equal(const Expr& other) const;
  // Highest 1-based variable index referenced (0 when constant).
  int max_variable() const;
};

// Throws SyntaxError{line, column} on malformed input, UnknownSymbol on
// unrecognized identifiers.
Expr parse_expression(std::string_view text);

// IEEE evaluation; a non-finite result raises NumericError.
double evaluate(const Expr& e, std::span<const double> xi);

// Fully parenthesized canonical form; reparses to a structurally
// identical tree.
std::string to_string(const Expr& e);

}  // namespace ttanova

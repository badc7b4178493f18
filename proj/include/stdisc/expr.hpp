#pragma once

// A small expression language for boundary functions of (z1, z2):
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' '-'? integer)?
//   atom   := literal | 'z1' | 'z2' | 'conj' '(' expr ')' | 'exp' '(' expr ')' | '(' expr ')'
//   literal:= float ('i')?
//
// so -z1^2 means -(z1^2). Exponents are bounded by |k| <= 64.

#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "stdisc/error.hpp"

namespace stdisc::expr {

using cplx = std::complex<double>;

enum class NodeKind { Literal, Z1, Z2, Conj, Exp, Neg, Add, Sub, Mul, Div, Pow };

inline constexpr int kMaxExponent = 64;

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind;
  cplx value{};     ///< Literal
  int exponent = 0; ///< Pow
  NodePtr lhs;      ///< unary operand, or left operand
  NodePtr rhs;
};

/// Immutable, cheaply copyable handle to a parsed expression.
class Expr {
 public:
  explicit Expr(NodePtr root) : root_(std::move(root)) {}
  const Node& root() const noexcept { return *root_; }

 private:
  NodePtr root_;
};

enum class ParseErrorCode {
  UnknownIdentifier,
  UnbalancedParenthesis,
  MalformedLiteral,
  ExponentOutOfRange,
  UnexpectedToken,
  UnexpectedEnd,
};

const char* to_string(ParseErrorCode code) noexcept;

class ParseError : public Error {
 public:
  ParseError(ParseErrorCode code, std::size_t offset, const std::string& detail);
  ParseErrorCode code() const noexcept { return code_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  ParseErrorCode code_;
  std::size_t offset_;
};

Expr parse(std::string_view text);

/// Throws DivisionByZero when a divisor has modulus < 1e-300 and Overflow on
/// a non-finite intermediate.
cplx eval(const Expr& e, cplx z1, cplx z2);

/// Fully parenthesized form; parse(to_string(e)) reproduces e.
std::string to_string(const Expr& e);

/// Structural equality (literal values compared exactly).
bool equal(const Expr& a, const Expr& b);

}  // namespace stdisc::expr

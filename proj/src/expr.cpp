#include "stdisc/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

#include "stdisc/io.hpp"

namespace stdisc::expr {

const char* to_string(ParseErrorCode code) noexcept {
  switch (code) {
    case ParseErrorCode::UnknownIdentifier: return "unknown identifier";
    case ParseErrorCode::UnbalancedParenthesis: return "unbalanced parenthesis";
    case ParseErrorCode::MalformedLiteral: return "malformed literal";
    case ParseErrorCode::ExponentOutOfRange: return "exponent out of range";
    case ParseErrorCode::UnexpectedToken: return "unexpected token";
    case ParseErrorCode::UnexpectedEnd: return "unexpected end of input";
  }
  return "parse error";
}

ParseError::ParseError(ParseErrorCode code, std::size_t offset, const std::string& detail)
    : Error(ErrorKind::Parse, std::string(to_string(code)) + " at offset " + std::to_string(offset) +
                                  (detail.empty() ? "" : ": " + detail)),
      code_(code),
      offset_(offset) {}

namespace {

NodePtr make(NodeKind k, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  return std::make_shared<const Node>(Node{k, {}, 0, std::move(lhs), std::move(rhs)});
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Expr run() {
    auto e = parse_expr();
    skip_ws();
    if (pos_ < s_.size()) {
      if (s_[pos_] == ')')
        throw ParseError(ParseErrorCode::UnbalancedParenthesis, pos_, "')' without matching '('");
      throw ParseError(ParseErrorCode::UnexpectedToken, pos_, std::string("'") + s_[pos_] + "'");
    }
    return Expr(std::move(e));
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail_end() {
    if (!open_.empty())
      throw ParseError(ParseErrorCode::UnbalancedParenthesis, open_.back(), "'(' is never closed");
    throw ParseError(ParseErrorCode::UnexpectedEnd, pos_, "expected an operand");
  }

  NodePtr parse_expr() {
    auto lhs = parse_term();
    for (;;) {
      if (accept('+')) lhs = make(NodeKind::Add, lhs, parse_term());
      else if (accept('-')) lhs = make(NodeKind::Sub, lhs, parse_term());
      else return lhs;
    }
  }

  NodePtr parse_term() {
    auto lhs = parse_unary();
    for (;;) {
      if (accept('*')) lhs = make(NodeKind::Mul, lhs, parse_unary());
      else if (accept('/')) lhs = make(NodeKind::Div, lhs, parse_unary());
      else return lhs;
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) return make(NodeKind::Neg, parse_unary());
    return parse_power();
  }

  NodePtr parse_power() {
    auto base = parse_atom();
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t at = pos_;
    bool negative = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    const std::size_t digits_at = pos_;
    while (pos_ < s_.size() && digit(s_[pos_])) ++pos_;
    if (pos_ == digits_at) {
      if (pos_ >= s_.size()) fail_end();
      throw ParseError(ParseErrorCode::UnexpectedToken, pos_, "exponent must be a decimal integer");
    }
    if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E'))
      throw ParseError(ParseErrorCode::UnexpectedToken, pos_, "exponent must be a decimal integer");
    long value = 0;
    const auto res = std::from_chars(s_.data() + digits_at, s_.data() + pos_, value);
    if (res.ec != std::errc() || value > kMaxExponent)
      throw ParseError(ParseErrorCode::ExponentOutOfRange, at, "|exponent| must be <= 64");
    auto node = Node{NodeKind::Pow, {}, static_cast<int>(negative ? -value : value), std::move(base), nullptr};
    return std::make_shared<const Node>(std::move(node));
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail_end();
    const char c = s_[pos_];
    if (c == '(') {
      open_.push_back(pos_++);
      auto inner = parse_expr();
      if (!accept(')')) {
        skip_ws();
        if (pos_ >= s_.size()) fail_end();
        throw ParseError(ParseErrorCode::UnexpectedToken, pos_, std::string("expected ')' but found '") + s_[pos_] + "'");
      }
      open_.pop_back();
      return inner;
    }
    if (digit(c) || c == '.') return parse_literal();
    if (ident_start(c)) return parse_identifier();
    if (c == ')') throw ParseError(ParseErrorCode::UnbalancedParenthesis, pos_, "')' without matching '('");
    throw ParseError(ParseErrorCode::UnexpectedToken, pos_, std::string("'") + c + "'");
  }

  NodePtr parse_literal() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (digit(s_[pos_]) || s_[pos_] == '.')) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      while (pos_ < s_.size() && digit(s_[pos_])) ++pos_;
    }
    double v = 0.0;
    const auto res = std::from_chars(s_.data() + start, s_.data() + pos_, v, std::chars_format::general);
    if (res.ec != std::errc() || res.ptr != s_.data() + pos_ || !std::isfinite(v))
      throw ParseError(ParseErrorCode::MalformedLiteral, start, std::string(s_.substr(start, pos_ - start)));
    cplx value{v, 0.0};
    if (pos_ < s_.size() && s_[pos_] == 'i' && !(pos_ + 1 < s_.size() && ident_char(s_[pos_ + 1]))) {
      ++pos_;
      value = {0.0, v};
    }
    if (pos_ < s_.size() && ident_char(s_[pos_]))
      throw ParseError(ParseErrorCode::MalformedLiteral, start, "literal runs into '" + std::string(1, s_[pos_]) + "'");
    return std::make_shared<const Node>(Node{NodeKind::Literal, value, 0, nullptr, nullptr});
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    const auto name = s_.substr(start, pos_ - start);
    if (name == "z1") return make(NodeKind::Z1);
    if (name == "z2") return make(NodeKind::Z2);
    if (name == "conj" || name == "exp") {
      skip_ws();
      if (pos_ >= s_.size()) fail_end();
      if (s_[pos_] != '(')
        throw ParseError(ParseErrorCode::UnexpectedToken, pos_, "expected '(' after " + std::string(name));
      open_.push_back(pos_++);
      auto arg = parse_expr();
      if (!accept(')')) {
        skip_ws();
        if (pos_ >= s_.size()) fail_end();
        throw ParseError(ParseErrorCode::UnexpectedToken, pos_, "expected ')'");
      }
      open_.pop_back();
      return make(name == "conj" ? NodeKind::Conj : NodeKind::Exp, std::move(arg));
    }
    throw ParseError(ParseErrorCode::UnknownIdentifier, start, "'" + std::string(name) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<std::size_t> open_;
};

cplx checked(cplx v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw Error(ErrorKind::Overflow, "expression evaluation overflowed");
  return v;
}

cplx ipow(cplx base, int k) {
  const bool invert = k < 0;
  unsigned e = static_cast<unsigned>(invert ? -k : k);
  cplx acc{1.0, 0.0};
  while (e) {
    if (e & 1u) acc *= base;
    e >>= 1;
    if (e) base *= base;
  }
  if (invert) {
    if (std::abs(acc) < 1e-300) throw Error(ErrorKind::DivisionByZero, "negative power of zero");
    acc = 1.0 / acc;
  }
  return acc;
}

cplx eval_node(const Node& n, cplx z1, cplx z2) {
  switch (n.kind) {
    case NodeKind::Literal: return n.value;
    case NodeKind::Z1: return z1;
    case NodeKind::Z2: return z2;
    case NodeKind::Conj: return std::conj(eval_node(*n.lhs, z1, z2));
    case NodeKind::Exp: return checked(std::exp(eval_node(*n.lhs, z1, z2)));
    case NodeKind::Neg: return -eval_node(*n.lhs, z1, z2);
    case NodeKind::Add: return checked(eval_node(*n.lhs, z1, z2) + eval_node(*n.rhs, z1, z2));
    case NodeKind::Sub: return checked(eval_node(*n.lhs, z1, z2) - eval_node(*n.rhs, z1, z2));
    case NodeKind::Mul: return checked(eval_node(*n.lhs, z1, z2) * eval_node(*n.rhs, z1, z2));
    case NodeKind::Div: {
      const cplx num = eval_node(*n.lhs, z1, z2);
      const cplx den = eval_node(*n.rhs, z1, z2);
      if (std::abs(den) < 1e-300) throw Error(ErrorKind::DivisionByZero, "division by zero");
      return checked(num / den);
    }
    case NodeKind::Pow: return checked(ipow(eval_node(*n.lhs, z1, z2), n.exponent));
  }
  throw Error(ErrorKind::Internal, "unknown expression node");
}

void print(const Node& n, std::string& out) {
  auto binary = [&](const char* op) {
    out += '(';
    print(*n.lhs, out);
    out += op;
    print(*n.rhs, out);
    out += ')';
  };
  switch (n.kind) {
    case NodeKind::Literal:
      if (n.value.imag() != 0.0) out += format_double(n.value.imag()) + "i";
      else out += format_double(n.value.real());
      return;
    case NodeKind::Z1: out += "z1"; return;
    case NodeKind::Z2: out += "z2"; return;
    case NodeKind::Conj: out += "conj("; print(*n.lhs, out); out += ')'; return;
    case NodeKind::Exp: out += "exp("; print(*n.lhs, out); out += ')'; return;
    case NodeKind::Neg: out += "(-"; print(*n.lhs, out); out += ')'; return;
    case NodeKind::Add: binary(" + "); return;
    case NodeKind::Sub: binary(" - "); return;
    case NodeKind::Mul: binary(" * "); return;
    case NodeKind::Div: binary(" / "); return;
    case NodeKind::Pow:
      out += '(';
      print(*n.lhs, out);
      out += '^' + std::to_string(n.exponent) + ')';
      return;
  }
}

bool equal_node(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.exponent != b.exponent || a.value != b.value) return false;
  if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs) || static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs))
    return false;
  return (!a.lhs || equal_node(*a.lhs, *b.lhs)) && (!a.rhs || equal_node(*a.rhs, *b.rhs));
}

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

cplx eval(const Expr& e, cplx z1, cplx z2) { return eval_node(e.root(), z1, z2); }

std::string to_string(const Expr& e) {
  std::string out;
  print(e.root(), out);
  return out;
}

bool equal(const Expr& a, const Expr& b) { return equal_node(a.root(), b.root()); }

}  // namespace stdisc::expr

#include "ttanova/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "ttanova/errors.hpp"

namespace ttanova {

namespace {

constexpr int kMaxDepth = 256;

const char* const kFunctions[] = {"sin", "cos", "exp", "log", "sqrt", "abs", "tanh"};

bool is_function(const std::string& name) {
  for (const char* f : kFunctions)
    if (name == f) return true;
  return false;
}

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = expression(0);
    skip_space();
    if (pos_ < text_.size()) error("end of input");
    return e;
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void error(const std::string& expected) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    if (pos_ >= text_.size()) col = static_cast<int>(text_.size()) + 1;
    fail("SyntaxError", "line " + std::to_string(line) + ", column " +
                            std::to_string(col) + ": expected " + expected);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void check_depth(int depth) {
    if (depth > kMaxDepth) fail("SyntaxError", "expression nesting exceeds 256 levels");
  }

  Expr expression(int depth) {
    check_depth(depth);
    Expr left = term(depth + 1);
    for (;;) {
      if (accept('+')) {
        Expr node;
        node.kind = Expr::Kind::Add;
        node.children = {std::move(left), term(depth + 1)};
        left = std::move(node);
      } else if (accept('-')) {
        Expr node;
        node.kind = Expr::Kind::Sub;
        node.children = {std::move(left), term(depth + 1)};
        left = std::move(node);
      } else {
        return left;
      }
    }
  }

  Expr term(int depth) {
    check_depth(depth);
    Expr left = unary(depth + 1);
    for (;;) {
      if (accept('*')) {
        Expr node;
        node.kind = Expr::Kind::Mul;
        node.children = {std::move(left), unary(depth + 1)};
        left = std::move(node);
      } else if (accept('/')) {
        Expr node;
        node.kind = Expr::Kind::Div;
        node.children = {std::move(left), unary(depth + 1)};
        left = std::move(node);
      } else {
        return left;
      }
    }
  }

  Expr unary(int depth) {
    check_depth(depth);
    if (accept('-')) {
      Expr node;
      node.kind = Expr::Kind::Neg;
      node.children = {unary(depth + 1)};
      return node;
    }
    return power(depth + 1);
  }

  Expr power(int depth) {
    check_depth(depth);
    Expr left = primary(depth + 1);
    while (accept('^')) {
      skip_space();
      std::size_t start = pos_;
      double v = number_literal();
      int n = static_cast<int>(v);
      if (static_cast<double>(n) != v || n < 0) {
        pos_ = start;
        error("nonnegative integer exponent");
      }
      Expr node;
      node.kind = Expr::Kind::Pow;
      node.exponent = n;
      node.children = {std::move(left)};
      left = std::move(node);
    }
    return left;
  }

  double number_literal() {
    skip_space();
    const char* begin = text_.data() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) error("number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  Expr primary(int depth) {
    check_depth(depth);
    char c = peek();
    if (c == '(') {
      ++pos_;
      Expr e = expression(depth + 1);
      if (!accept(')')) error("')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      Expr e;
      e.kind = Expr::Kind::Number;
      e.number = number_literal();
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t ident_pos = pos_;
      std::string name;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        name += text_[pos_++];
      if (is_function(name)) {
        if (!accept('(')) error("'(' after function name");
        Expr node;
        node.kind = Expr::Kind::Call;
        node.func = name;
        node.children = {expression(depth + 1)};
        if (!accept(')')) error("')'");
        return node;
      }
      // Variables: x<k> or z<k>, k >= 1.
      if (name.size() >= 2 && (name[0] == 'x' || name[0] == 'z')) {
        bool digits = true;
        for (std::size_t i = 1; i < name.size(); ++i)
          if (!std::isdigit(static_cast<unsigned char>(name[i]))) digits = false;
        if (digits) {
          long k = std::strtol(name.c_str() + 1, nullptr, 10);
          if (k >= 1) {
            Expr node;
            node.kind = Expr::Kind::Variable;
            node.variable = static_cast<int>(k - 1);
            return node;
          }
        }
      }
      pos_ = ident_pos;
      fail("UnknownSymbol", "unknown identifier '" + name + "'");
    }
    error("expression");
  }
};

void print(const Expr& e, std::string& out) {
  char buf[32];
  switch (e.kind) {
    case Expr::Kind::Number:
      std::snprintf(buf, sizeof buf, "%.17g", e.number);
      out += buf;
      break;
    case Expr::Kind::Variable:
      out += "x" + std::to_string(e.variable + 1);
      break;
    case Expr::Kind::Neg:
      out += "(-";
      print(e.children[0], out);
      out += ")";
      break;
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
    case Expr::Kind::Mul:
    case Expr::Kind::Div: {
      const char* op = e.kind == Expr::Kind::Add   ? " + "
                       : e.kind == Expr::Kind::Sub ? " - "
                       : e.kind == Expr::Kind::Mul ? " * "
                                                   : " / ";
      out += "(";
      print(e.children[0], out);
      out += op;
      print(e.children[1], out);
      out += ")";
      break;
    }
    case Expr::Kind::Pow:
      out += "(";
      print(e.children[0], out);
      out += "^" + std::to_string(e.exponent) + ")";
      break;
    case Expr::Kind::Call:
      out += e.func + "(";
      print(e.children[0], out);
      out += ")";
      break;
  }
}

double eval_node(const Expr& e, std::span<const double> xi) {
  switch (e.kind) {
    case Expr::Kind::Number: return e.number;
    case Expr::Kind::Variable:
      if (e.variable >= static_cast<int>(xi.size()))
        fail("ConfigError", "expression references x" + std::to_string(e.variable + 1) +
                                " but only " + std::to_string(xi.size()) +
                                " inputs were supplied");
      return xi[e.variable];
    case Expr::Kind::Neg: return -eval_node(e.children[0], xi);
    case Expr::Kind::Add: return eval_node(e.children[0], xi) + eval_node(e.children[1], xi);
    case Expr::Kind::Sub: return eval_node(e.children[0], xi) - eval_node(e.children[1], xi);
    case Expr::Kind::Mul: return eval_node(e.children[0], xi) * eval_node(e.children[1], xi);
    case Expr::Kind::Div: return eval_node(e.children[0], xi) / eval_node(e.children[1], xi);
    case Expr::Kind::Pow: {
      double base = eval_node(e.children[0], xi);
      double r = 1.0;
      for (int i = 0; i < e.exponent; ++i) r *= base;
      return r;
    }
    case Expr::Kind::Call: {
      double a = eval_node(e.children[0], xi);
      if (e.func == "sin") return std::sin(a);
      if (e.func == "cos") return std::cos(a);
      if (e.func == "exp") return std::exp(a);
      if (e.func == "log") return std::log(a);
      if (e.func == "sqrt") return std::sqrt(a);
      if (e.func == "abs") return std::fabs(a);
      if (e.func == "tanh") return std::tanh(a);
      fail("UnknownSymbol", "unknown function '" + e.func + "'");
    }
  }
  return 0.0;
}

}  // namespace

bool Expr::structurally_equal(const Expr& other) const {
  if (kind != other.kind || children.size() != other.children.size()) return false;
  switch (kind) {
    case Kind::Number:
      if (number != other.number) return false;
      break;
    case Kind::Variable:
      if (variable != other.variable) return false;
      break;
    case Kind::Pow:
      if (exponent != other.exponent) return false;
      break;
    case Kind::Call:
      if (func != other.func) return false;
      break;
    default: break;
  }
  for (std::size_t i = 0; i < children.size(); ++i)
    if (!children[i].structurally_equal(other.children[i])) return false;
  return true;
}

int Expr::max_variable() const {
  int m = kind == Kind::Variable ? variable + 1 : 0;
  for (const auto& c : children) m = std::max(m, c.max_variable());
  return m;
}

Expr parse_expression(std::string_view text) { return Parser(text).parse(); }

double evaluate(const Expr& e, std::span<const double> xi) {
  double v = eval_node(e, xi);
  if (!std::isfinite(v))
    fail("NumericError", "expression evaluated to a non-finite value");
  return v;
}

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

}  // namespace ttanova

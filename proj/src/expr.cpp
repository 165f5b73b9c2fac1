// SPDX-License-Identifier: Apache-2.0
#include "gcp/expr.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <functional>

namespace gcp {

namespace {

struct Token {
  enum Type { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } type;
  double number = 0.0;
  std::string ident;
  int offset = 1;  // 1-based
};

class Lexer {
 public:
  Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tok_.offset = static_cast<int>(pos_) + 1;
    if (pos_ >= text_.size()) {
      tok_.type = Token::End;
      return;
    }
    const char c = text_[pos_];
    switch (c) {
      case '+': tok_.type = Token::Plus; ++pos_; return;
      case '-': tok_.type = Token::Minus; ++pos_; return;
      case '*': tok_.type = Token::Star; ++pos_; return;
      case '/': tok_.type = Token::Slash; ++pos_; return;
      case '^': tok_.type = Token::Caret; ++pos_; return;
      case '(': tok_.type = Token::LParen; ++pos_; return;
      case ')': tok_.type = Token::RParen; ++pos_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t end = pos_;
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
      if (end < text_.size() && text_[end] == '.') {
        ++end;
        while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
      }
      if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
        std::size_t exp = end + 1;
        if (exp < text_.size() && (text_[exp] == '+' || text_[exp] == '-')) ++exp;
        if (exp < text_.size() && std::isdigit(static_cast<unsigned char>(text_[exp]))) {
          ++exp;
          while (exp < text_.size() && std::isdigit(static_cast<unsigned char>(text_[exp]))) ++exp;
          end = exp;
        }
      }
      double value = 0.0;
      auto res = std::from_chars(text_.data() + pos_, text_.data() + end, value);
      if (res.ec != std::errc() || res.ptr != text_.data() + end)
        throw ParseError("invalid numeric literal", tok_.offset);
      tok_.type = Token::Number;
      tok_.number = value;
      pos_ = end;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
        ++end;
      tok_.type = Token::Ident;
      tok_.ident = text_.substr(pos_, end - pos_);
      pos_ = end;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", tok_.offset);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  Token tok_;
};

class Parser {
 public:
  Parser(const std::string& text, int s) : lex_(text), arity_(s) {}

  ExprAst run() {
    const int root = parse_expr();
    if (lex_.peek().type != Token::End)
      throw ParseError("unexpected trailing input", lex_.peek().offset);
    return ExprAst(std::move(nodes_), root, arity_);
  }

 private:
  int add(ExprNode n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  int parse_expr() {
    int lhs = parse_term();
    while (lex_.peek().type == Token::Plus || lex_.peek().type == Token::Minus) {
      Token op = lex_.take();
      int rhs = parse_term();
      ExprNode n;
      n.kind = op.type == Token::Plus ? NodeKind::Add : NodeKind::Sub;
      n.lhs = lhs;
      n.rhs = rhs;
      n.offset = op.offset;
      lhs = add(n);
    }
    return lhs;
  }

  int parse_term() {
    int lhs = parse_factor();
    while (lex_.peek().type == Token::Star || lex_.peek().type == Token::Slash) {
      Token op = lex_.take();
      int rhs = parse_factor();
      ExprNode n;
      n.kind = op.type == Token::Star ? NodeKind::Mul : NodeKind::Div;
      n.lhs = lhs;
      n.rhs = rhs;
      n.offset = op.offset;
      lhs = add(n);
    }
    return lhs;
  }

  int parse_factor() {
    if (lex_.peek().type == Token::Minus) {
      Token op = lex_.take();
      int child = parse_factor();
      ExprNode n;
      n.kind = NodeKind::Neg;
      n.lhs = child;
      n.offset = op.offset;
      return add(n);
    }
    return parse_power();
  }

  int parse_power() {
    int base = parse_atom();
    while (lex_.peek().type == Token::Caret) {
      Token op = lex_.take();
      int sign = 1;
      if (lex_.peek().type == Token::Minus) {
        lex_.take();
        sign = -1;
      }
      Token e = lex_.peek();
      if (e.type != Token::Number)
        throw ParseError("exponent must be an integer constant", e.offset);
      const double val = e.number;
      const int as_int = static_cast<int>(val);
      if (val != static_cast<double>(as_int))
        throw ParseError("exponent must be an integer constant", e.offset);
      lex_.take();
      ExprNode n;
      n.kind = NodeKind::Pow;
      n.lhs = base;
      n.exponent = sign * as_int;
      n.offset = op.offset;
      base = add(n);
    }
    return base;
  }

  int parse_atom() {
    Token t = lex_.peek();
    switch (t.type) {
      case Token::Number: {
        lex_.take();
        ExprNode n;
        n.kind = NodeKind::Constant;
        n.value = t.number;
        n.offset = t.offset;
        return add(n);
      }
      case Token::LParen: {
        lex_.take();
        int inner = parse_expr();
        if (lex_.peek().type != Token::RParen)
          throw ParseError("expected ')'", lex_.peek().offset);
        lex_.take();
        return inner;
      }
      case Token::Ident: {
        lex_.take();
        if (t.ident.size() >= 2 && t.ident[0] == 'a' &&
            std::isdigit(static_cast<unsigned char>(t.ident[1]))) {
          int index = 0;
          auto res = std::from_chars(t.ident.data() + 1, t.ident.data() + t.ident.size(), index);
          if (res.ec == std::errc() && res.ptr == t.ident.data() + t.ident.size()) {
            if (index < 1 || index > arity_)
              throw ParseError("parameter " + t.ident + " out of range (s = " +
                                   std::to_string(arity_) + ")",
                               t.offset);
            ExprNode n;
            n.kind = NodeKind::Param;
            n.param = index - 1;
            n.offset = t.offset;
            return add(n);
          }
        }
        FuncId fn;
        if (t.ident == "sin") fn = FuncId::Sin;
        else if (t.ident == "cos") fn = FuncId::Cos;
        else if (t.ident == "tan") fn = FuncId::Tan;
        else if (t.ident == "exp") fn = FuncId::Exp;
        else if (t.ident == "log") fn = FuncId::Log;
        else if (t.ident == "sqrt") fn = FuncId::Sqrt;
        else throw ParseError("unknown identifier '" + t.ident + "'", t.offset);
        if (lex_.peek().type != Token::LParen)
          throw ParseError("expected '(' after function name", lex_.peek().offset);
        lex_.take();
        int arg = parse_expr();
        if (lex_.peek().type != Token::RParen)
          throw ParseError("expected ')'", lex_.peek().offset);
        lex_.take();
        ExprNode n;
        n.kind = NodeKind::Call;
        n.func = fn;
        n.lhs = arg;
        n.offset = t.offset;
        return add(n);
      }
      default:
        throw ParseError("expected expression", t.offset);
    }
  }

  Lexer lex_;
  int arity_;
  std::vector<ExprNode> nodes_;
};

const char* func_name(FuncId f) {
  switch (f) {
    case FuncId::Sin: return "sin";
    case FuncId::Cos: return "cos";
    case FuncId::Tan: return "tan";
    case FuncId::Exp: return "exp";
    case FuncId::Log: return "log";
    case FuncId::Sqrt: return "sqrt";
  }
  return "?";
}

// printer precedence levels; parenthesize children that would not re-parse
// into the same tree shape
int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Neg: return 3;
    case NodeKind::Pow: return 4;
    default: return 5;
  }
}

void print_rec(const ExprAst& ast, int idx, std::string& out) {
  const ExprNode& n = ast.node(idx);
  auto child = [&](int c, bool parens) {
    if (parens) out += '(';
    print_rec(ast, c, out);
    if (parens) out += ')';
  };
  switch (n.kind) {
    case NodeKind::Constant: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      out += buf;
      return;
    }
    case NodeKind::Param:
      out += 'a';
      out += std::to_string(n.param + 1);
      return;
    case NodeKind::Neg:
      out += '-';
      child(n.lhs, precedence(ast.node(n.lhs).kind) < precedence(NodeKind::Neg));
      return;
    case NodeKind::Add:
    case NodeKind::Sub: {
      child(n.lhs, precedence(ast.node(n.lhs).kind) < precedence(n.kind));
      out += n.kind == NodeKind::Add ? " + " : " - ";
      child(n.rhs, precedence(ast.node(n.rhs).kind) <= precedence(n.kind));
      return;
    }
    case NodeKind::Mul:
    case NodeKind::Div: {
      child(n.lhs, precedence(ast.node(n.lhs).kind) < precedence(n.kind));
      out += n.kind == NodeKind::Mul ? "*" : "/";
      child(n.rhs, precedence(ast.node(n.rhs).kind) <= precedence(n.kind));
      return;
    }
    case NodeKind::Pow: {
      child(n.lhs, precedence(ast.node(n.lhs).kind) < precedence(NodeKind::Pow));
      out += '^';
      if (n.exponent < 0) out += '-';
      out += std::to_string(std::abs(n.exponent));
      return;
    }
    case NodeKind::Call: {
      out += func_name(n.func);
      out += '(';
      print_rec(ast, n.lhs, out);
      out += ')';
      return;
    }
  }
}

[[noreturn]] void domain_error(const ExprAst& ast, int idx, const std::string& what) {
  throw EvalDomainError(what, ast.node(idx).offset, print_node(ast, idx));
}

template <typename T>
double value_of(const T& x) {
  if constexpr (std::is_same_v<T, double>) return x;
  else return x.v;
}

template <typename T, typename MakeConst, typename MakeParam>
T eval_rec(const ExprAst& ast, int idx, const MakeConst& mk_const, const MakeParam& mk_param) {
  const ExprNode& n = ast.node(idx);
  auto rec = [&](int c) { return eval_rec<T>(ast, c, mk_const, mk_param); };
  switch (n.kind) {
    case NodeKind::Constant: return mk_const(n.value);
    case NodeKind::Param: return mk_param(n.param);
    case NodeKind::Neg: return -rec(n.lhs);
    case NodeKind::Add: return rec(n.lhs) + rec(n.rhs);
    case NodeKind::Sub: return rec(n.lhs) - rec(n.rhs);
    case NodeKind::Mul: return rec(n.lhs) * rec(n.rhs);
    case NodeKind::Div: {
      T denom = rec(n.rhs);
      if (value_of(denom) == 0.0) domain_error(ast, idx, "division by zero");
      return rec(n.lhs) / denom;
    }
    case NodeKind::Pow: {
      T base = rec(n.lhs);
      if (value_of(base) == 0.0 && n.exponent < 0)
        domain_error(ast, idx, "zero base with negative exponent");
      if constexpr (std::is_same_v<T, double>) return std::pow(base, n.exponent);
      else return powi(base, n.exponent);
    }
    case NodeKind::Call: {
      T arg = rec(n.lhs);
      const double av = value_of(arg);
      if (n.func == FuncId::Log && av <= 0.0)
        domain_error(ast, idx, "log of non-positive argument");
      if (n.func == FuncId::Sqrt && av <= 0.0)
        domain_error(ast, idx, "sqrt of non-positive argument");
      if constexpr (std::is_same_v<T, double>) {
        switch (n.func) {
          case FuncId::Sin: return std::sin(arg);
          case FuncId::Cos: return std::cos(arg);
          case FuncId::Tan: return std::tan(arg);
          case FuncId::Exp: return std::exp(arg);
          case FuncId::Log: return std::log(arg);
          case FuncId::Sqrt: return std::sqrt(arg);
        }
      } else {
        switch (n.func) {
          case FuncId::Sin: return sin(arg);
          case FuncId::Cos: return cos(arg);
          case FuncId::Tan: return tan(arg);
          case FuncId::Exp: return exp(arg);
          case FuncId::Log: return log(arg);
          case FuncId::Sqrt: return sqrt(arg);
        }
      }
      domain_error(ast, idx, "unknown function");
    }
  }
  domain_error(ast, idx, "malformed node");
}

}  // namespace

ExprAst parse(const std::string& text, int s) {
  if (s < 0) throw std::invalid_argument("parse: negative parameter count");
  return Parser(text, s).run();
}

std::string print(const ExprAst& ast) { return print_node(ast, ast.root()); }

std::string print_node(const ExprAst& ast, int node) {
  std::string out;
  print_rec(ast, node, out);
  return out;
}

Jet2 eval_jet2(const ExprAst& ast, const Vec& point) {
  if (point.size() != ast.params())
    throw DimensionMismatch("eval_jet2: point dimension does not match parameter count");
  const int s = ast.params();
  return eval_rec<Jet2>(
      ast, ast.root(), [s](double v) { return Jet2::constant(v, s); },
      [s, &point](int p) { return Jet2::variable(point[p], s, p); });
}

double eval_value(const ExprAst& ast, const Vec& point) {
  if (point.size() != ast.params())
    throw DimensionMismatch("eval_value: point dimension does not match parameter count");
  return eval_rec<double>(
      ast, ast.root(), [](double v) { return v; }, [&point](int p) { return point[p]; });
}

namespace {
bool node_equal(const ExprAst& a, int ia, const ExprAst& b, int ib) {
  const ExprNode& x = a.node(ia);
  const ExprNode& y = b.node(ib);
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case NodeKind::Constant: return x.value == y.value;
    case NodeKind::Param: return x.param == y.param;
    case NodeKind::Neg: return node_equal(a, x.lhs, b, y.lhs);
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div:
      return node_equal(a, x.lhs, b, y.lhs) && node_equal(a, x.rhs, b, y.rhs);
    case NodeKind::Pow: return x.exponent == y.exponent && node_equal(a, x.lhs, b, y.lhs);
    case NodeKind::Call: return x.func == y.func && node_equal(a, x.lhs, b, y.lhs);
  }
  return false;
}
}  // namespace

bool ast_equal(const ExprAst& a, const ExprAst& b) {
  if (a.params() != b.params()) return false;
  return node_equal(a, a.root(), b, b.root());
}

}  // namespace gcp

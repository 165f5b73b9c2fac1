// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "gcp/jet.hpp"
#include "gcp/types.hpp"

namespace gcp {

/// Parse or evaluation failure. Offsets are 1-based byte positions into the
/// expression text.
struct ParseError : Error {
  int offset;
  ParseError(const std::string& msg, int offset_)
      : Error(msg + " (offset " + std::to_string(offset_) + ")"), offset(offset_) {}
};

struct EvalDomainError : Error {
  int offset;
  std::string subexpr;
  EvalDomainError(const std::string& msg, int offset_, std::string subexpr_)
      : Error(msg + " in '" + subexpr_ + "' (offset " + std::to_string(offset_) + ")"),
        offset(offset_),
        subexpr(std::move(subexpr_)) {}
};

enum class NodeKind { Constant, Param, Neg, Add, Sub, Mul, Div, Pow, Call };
enum class FuncId { Sin, Cos, Tan, Exp, Log, Sqrt };

struct ExprNode {
  NodeKind kind = NodeKind::Constant;
  double value = 0.0;  // Constant
  int param = 0;       // Param, 0-based
  FuncId func = FuncId::Sin;
  int lhs = -1;  // first child (also the only child of Neg/Call/Pow)
  int rhs = -1;
  int exponent = 0;  // Pow
  int offset = 1;    // where the node's token starts, 1-based
};

/// Immutable expression tree over parameters a1..as. Nodes live in an arena;
/// the tree is finite and acyclic by construction.
class ExprAst {
 public:
  ExprAst() = default;
  // used by parse(); nodes must form a tree rooted at `root`
  ExprAst(std::vector<ExprNode> nodes, int root, int arity)
      : nodes_(std::move(nodes)), root_(root), arity_(arity) {}

  const ExprNode& node(int i) const { return nodes_[i]; }
  const ExprNode& root_node() const { return nodes_[root_]; }
  int root() const { return root_; }
  int params() const { return arity_; }
  int size() const { return static_cast<int>(nodes_.size()); }

 private:
  std::vector<ExprNode> nodes_;
  int root_ = -1;
  int arity_ = 0;
};

/// Recursive-descent parse of the expression grammar. `s` bounds the
/// parameter indices (a1..as). Throws ParseError.
ExprAst parse(const std::string& text, int s);

/// Canonical printer; parse(print(ast)) reproduces the tree exactly.
std::string print(const ExprAst& ast);
std::string print_node(const ExprAst& ast, int node);

/// Exact value/gradient/Hessian at a point via jet propagation. Throws
/// EvalDomainError on log/sqrt/division/power domain violations.
Jet2 eval_jet2(const ExprAst& ast, const Vec& point);

/// Value-only evaluation (same domain checks).
double eval_value(const ExprAst& ast, const Vec& point);

/// Structural equality of two trees.
bool ast_equal(const ExprAst& a, const ExprAst& b);

}  // namespace gcp

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symred/expr.hpp"

namespace symred {

struct Node {
  NodeKind kind = NodeKind::Constant;
  Rational value;
  std::string name;
  SymbolPtr symbol;
  BuiltinKind builtin = BuiltinKind::Exp;
  std::vector<Expr> children;
  std::vector<int> derivs;
  std::size_t hash = 0;
  std::uint64_t mask = 0;
  bool normalized = true;
};

struct NodeFactory {
  static Expr make(Node n);
};

std::uint64_t name_bit(const std::string& name);

// Rebuilds e's kind with new children through the normalizing constructors.
Expr rebuild(const Expr& e, std::vector<Expr> children);

}  // namespace symred

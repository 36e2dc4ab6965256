#pragma once

#include <map>
#include <string>
#include <vector>

#include "symred/errors.hpp"
#include "symred/expr.hpp"

namespace symred {

/// Names the parser resolves beyond plain variables: declared function
/// symbols and named constants that are substituted on sight (so `t^k` is a
/// rational power once `k` is bound).
struct ParseContext {
  std::vector<SymbolPtr> functions;
  std::map<std::string, Expr> constants;

  SymbolPtr find_function(const std::string& name) const;
};

/// Parses infix text into a normalized expression. Throws ParseError.
Expr parse_expression(const std::string& text, const std::vector<SymbolPtr>& declared = {});
Expr parse_expression(const std::string& text, const ParseContext& context);

bool is_reserved_name(const std::string& name);

}  // namespace symred

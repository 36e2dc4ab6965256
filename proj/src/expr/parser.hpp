#pragma once

#include "lexer.hpp"
#include "symred/parse.hpp"

namespace symred {

// Parses one expression from the stream, stopping before the first token
// that cannot continue it.
Expr parse_expr(TokenStream& ts, const ParseContext& context);

}  // namespace symred

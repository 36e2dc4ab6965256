#include <algorithm>

#include "parser.hpp"

namespace symred {

namespace {

const std::map<std::string, BuiltinKind>& builtins() {
  static const std::map<std::string, BuiltinKind> m = {
      {"exp", BuiltinKind::Exp}, {"ln", BuiltinKind::Ln},     {"sin", BuiltinKind::Sin},
      {"cos", BuiltinKind::Cos}, {"sqrt", BuiltinKind::Sqrt}, {"besseli", BuiltinKind::BesselI}};
  return m;
}

class Parser {
 public:
  Parser(TokenStream& ts, const ParseContext& ctx) : ts_(ts), ctx_(ctx) {}

  Expr expr() {
    std::vector<Expr> terms{term()};
    while (true) {
      if (ts_.accept("+")) {
        terms.push_back(term());
      } else if (ts_.accept("-")) {
        terms.push_back(-term());
      } else {
        break;
      }
    }
    return terms.size() == 1 ? terms.front() : Expr::sum(std::move(terms));
  }

 private:
  Expr term() {
    Expr acc = unary();
    while (true) {
      if (ts_.accept("*")) {
        acc = acc * unary();
      } else if (ts_.is_punct("/")) {
        Token at = ts_.next();
        Expr d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at.line, at.column);
        acc = acc / d;
      } else {
        break;
      }
    }
    return acc;
  }

  Expr unary() {
    if (ts_.accept("-")) return -unary();
    if (ts_.accept("+")) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!ts_.is_punct("^")) return base;
    Token at = ts_.next();
    Expr e = unary();
    if (e.kind() != NodeKind::Constant) throw ParseError("exponent must be a rational constant", at.line, at.column);
    if (base.is_zero() && e.value().sign() <= 0) throw ParseError("zero raised to a non-positive power", at.line, at.column);
    return Pow(base, e.value());
  }

  Rational rational_constant(const char* what) {
    const Token& at = ts_.peek();
    Expr e = expr();
    if (e.kind() != NodeKind::Constant) {
      throw ParseError(std::string(what) + " must be a rational constant", at.line, at.column);
    }
    return e.value();
  }

  std::vector<Expr> arguments() {
    std::vector<Expr> args;
    ts_.expect("(");
    if (!ts_.is_punct(")")) {
      args.push_back(expr());
      while (ts_.accept(",")) args.push_back(expr());
    }
    ts_.expect(")");
    return args;
  }

  std::vector<Expr> formal(const SymbolPtr& sym) {
    std::vector<Expr> args;
    for (const auto& p : sym->params) args.push_back(Expr::variable(p));
    return args;
  }

  Expr apply(const SymbolPtr& sym, const Token& at, std::vector<int> derivs) {
    std::vector<Expr> args;
    if (ts_.is_punct("(")) {
      args = arguments();
      if (args.size() != sym->arity()) {
        throw ParseError("function '" + sym->name + "' expects " + std::to_string(sym->arity()) + " arguments",
                         at.line, at.column);
      }
    } else if (sym->implicit_args || !derivs.empty()) {
      args = formal(sym);
    } else {
      throw ParseError("function '" + sym->name + "' must be applied to arguments", at.line, at.column);
    }
    return Expr::function(sym, std::move(args), std::move(derivs));
  }

  Expr formal_derivative(const Token& at) {
    ts_.expect("(");
    Token name_tok = ts_.peek();
    std::string name = ts_.expect_ident("function name");
    SymbolPtr sym = ctx_.find_function(name);
    if (!sym) throw ParseError("undeclared function symbol '" + name + "'", name_tok.line, name_tok.column);
    std::vector<int> derivs(sym->arity(), 0);
    if (!ts_.is_punct(",")) ts_.fail("expected ',' and a derivative variable");
    while (ts_.accept(",")) {
      Token vt = ts_.peek();
      std::string v = ts_.expect_ident("derivative variable");
      auto it = std::find(sym->params.begin(), sym->params.end(), v);
      if (it == sym->params.end()) {
        throw ParseError("'" + v + "' is not a parameter of '" + name + "'", vt.line, vt.column);
      }
      ++derivs[static_cast<std::size_t>(it - sym->params.begin())];
    }
    ts_.expect(")");
    return apply(sym, at, std::move(derivs));
  }

  Expr total_derivative() {
    ts_.expect("(");
    Expr e = expr();
    if (!ts_.is_punct(",")) ts_.fail("expected ',' and a variable");
    while (ts_.accept(",")) e = differentiate(e, ts_.expect_ident("variable"));
    ts_.expect(")");
    return e;
  }

  Expr primary() {
    const Token tok = ts_.peek();
    if (tok.kind == Token::Kind::Number) {
      ts_.next();
      return Expr::constant(Rational::parse(tok.text));
    }
    if (ts_.accept("(")) {
      Expr e = expr();
      ts_.expect(")");
      return e;
    }
    if (tok.kind != Token::Kind::Ident) ts_.fail("expected an expression");
    ts_.next();
    const std::string& name = tok.text;
    if (name == "i") return Expr::imaginary_unit();
    if (name == "d" && ts_.is_punct("(")) return formal_derivative(tok);
    if (name == "diff" && ts_.is_punct("(")) return total_derivative();
    if (auto b = builtins().find(name); b != builtins().end() && ts_.is_punct("(")) {
      ts_.expect("(");
      Rational order;
      if (b->second == BuiltinKind::BesselI) {
        order = rational_constant("Bessel order");
        ts_.expect(";");
      }
      Expr arg = expr();
      ts_.expect(")");
      return Expr::builtin(b->second, arg, order);
    }
    if (auto c = ctx_.constants.find(name); c != ctx_.constants.end()) return c->second;
    if (SymbolPtr sym = ctx_.find_function(name)) return apply(sym, tok, {});
    if (ts_.is_punct("(")) throw ParseError("undeclared function symbol '" + name + "'", tok.line, tok.column);
    if (is_reserved_name(name)) throw ParseError("'" + name + "' is reserved", tok.line, tok.column);
    return Expr::variable(name);
  }

  TokenStream& ts_;
  const ParseContext& ctx_;
};

}  // namespace

SymbolPtr ParseContext::find_function(const std::string& name) const {
  for (const auto& f : functions) {
    if (f->name == name) return f;
  }
  return nullptr;
}

bool is_reserved_name(const std::string& name) {
  return name == "i" || name == "d" || name == "diff" || builtins().count(name) > 0;
}

Expr parse_expr(TokenStream& ts, const ParseContext& context) { return Parser(ts, context).expr(); }

Expr parse_expression(const std::string& text, const ParseContext& context) {
  TokenStream ts(tokenize(text));
  Expr e = parse_expr(ts, context);
  if (!ts.at_end()) ts.fail("unexpected trailing input");
  return e;
}

Expr parse_expression(const std::string& text, const std::vector<SymbolPtr>& declared) {
  ParseContext ctx;
  ctx.functions = declared;
  return parse_expression(text, ctx);
}

}  // namespace symred

#include <sstream>

#include "symred/expr.hpp"

namespace symred {

namespace {

enum Prec { kSum = 1, kProduct = 2, kPower = 3, kAtom = 4 };

const char* builtin_name(BuiltinKind k) {
  switch (k) {
    case BuiltinKind::Exp: return "exp";
    case BuiltinKind::Ln: return "ln";
    case BuiltinKind::Sin: return "sin";
    case BuiltinKind::Cos: return "cos";
    case BuiltinKind::Sqrt: return "sqrt";
    case BuiltinKind::BesselI: return "besseli";
  }
  return "?";
}

bool formal_args(const Expr& e) {
  const auto& params = e.symbol()->params;
  const auto& args = e.children();
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k].kind() != NodeKind::Variable || args[k].name() != params[k]) return false;
  }
  return true;
}

class Printer {
 public:
  std::string print(const Expr& e, int context) {
    std::string s;
    int p = emit(e, s);
    if (p < context) return "(" + s + ")";
    return s;
  }

 private:
  int emit(const Expr& e, std::string& out) {
    switch (e.kind()) {
      case NodeKind::Constant: {
        const Rational& v = e.value();
        out += v.str();
        if (v.is_negative()) return kSum;
        return v.is_integer() ? kAtom : kProduct;
      }
      case NodeKind::ImaginaryUnit:
        out += "i";
        return kAtom;
      case NodeKind::Variable:
        out += e.name();
        return kAtom;
      case NodeKind::FunctionApp:
        emit_function(e, out);
        return kAtom;
      case NodeKind::Builtin:
        out += builtin_name(e.builtin_kind());
        out += "(";
        if (e.builtin_kind() == BuiltinKind::BesselI) out += e.order().str() + "; ";
        out += print(e.arg(), 0);
        out += ")";
        return kAtom;
      case NodeKind::Power:
        emit_power(e.base(), e.exponent(), out);
        return kPower;
      case NodeKind::Product:
        return emit_product(e, out);
      case NodeKind::Sum:
        emit_sum(e, out);
        return kSum;
    }
    return kAtom;
  }

  void emit_function(const Expr& e, std::string& out) {
    const auto& sym = *e.symbol();
    bool formal = formal_args(e);
    if (e.derivative_order() > 0) {
      out += "d(" + sym.name;
      for (std::size_t k = 0; k < e.derivs().size(); ++k) {
        for (int m = 0; m < e.derivs()[k]; ++m) out += "," + sym.params[k];
      }
      out += ")";
      if (formal) return;
    } else {
      out += sym.name;
      if (formal && sym.implicit_args) return;
    }
    out += "(";
    for (std::size_t k = 0; k < e.children().size(); ++k) {
      if (k) out += ", ";
      out += print(e.children()[k], 0);
    }
    out += ")";
  }

  void emit_power(const Expr& base, const Rational& exponent, std::string& out) {
    out += print(base, kAtom);
    if (exponent.is_one()) return;
    out += "^";
    if (exponent.is_integer() && !exponent.is_negative()) {
      out += exponent.str();
    } else {
      out += "(" + exponent.str() + ")";
    }
  }

  int emit_product(const Expr& e, std::string& out) {
    Rational coef(1);
    std::vector<Expr> num;
    std::vector<std::pair<Expr, Rational>> den;
    for (const auto& f : e.children()) {
      if (f.kind() == NodeKind::Constant) {
        coef *= f.value();
      } else if (f.kind() == NodeKind::Power && f.exponent().is_negative()) {
        den.emplace_back(f.base(), -f.exponent());
      } else {
        num.push_back(f);
      }
    }
    bool negative = coef.is_negative();
    Rational mag = coef.abs();
    if (mag.den() != 1) {
      den.insert(den.begin(), {Expr::constant(Rational(mag.den(), BigInt(1))), Rational(1)});
      mag = Rational(mag.num(), BigInt(1));
    }
    std::string body;
    bool first = true;
    if (!mag.is_one() || num.empty()) {
      body += mag.str();
      first = false;
    }
    for (const auto& f : num) {
      if (!first) body += "*";
      body += print(f, kPower);
      first = false;
    }
    if (!den.empty()) {
      body += "/";
      std::string d;
      for (std::size_t k = 0; k < den.size(); ++k) {
        if (k) d += "*";
        std::string piece;
        emit_power(den[k].first, den[k].second, piece);
        d += piece;
      }
      bool single = den.size() == 1;
      body += single ? d : "(" + d + ")";
    }
    out += negative ? "-" + body : body;
    return negative ? kSum : kProduct;
  }

  void emit_sum(const Expr& e, std::string& out) {
    bool first = true;
    for (const auto& t : e.children()) {
      std::string s;
      emit(t, s);
      if (!first) {
        if (!s.empty() && s[0] == '-') {
          out += " - " + s.substr(1);
          continue;
        }
        out += " + ";
      }
      out += s;
      first = false;
    }
  }
};

}  // namespace

std::string to_string(const Expr& e) { return Printer().print(e, 0); }

}  // namespace symred

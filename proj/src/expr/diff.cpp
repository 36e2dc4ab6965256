#include <unordered_map>

#include "expr_node.hpp"
#include "symred/expr.hpp"

namespace symred {

namespace {

Expr builtin_derivative(const Expr& e) {
  const Expr& u = e.arg();
  switch (e.builtin_kind()) {
    case BuiltinKind::Exp:
      return e;
    case BuiltinKind::Ln:
      return Pow(u, Rational(-1));
    case BuiltinKind::Sin:
      return Cos(u);
    case BuiltinKind::Cos:
      return -Sin(u);
    case BuiltinKind::Sqrt:
      return Rational(1, 2) * Pow(u, Rational(-1, 2));
    case BuiltinKind::BesselI: {
      const Rational& nu = e.order();
      return Rational(1, 2) * (BesselI(nu - Rational(1), u) + BesselI(nu + Rational(1), u));
    }
  }
  return Expr(0);
}

enum class Mode { Total, HoldJets, Jet };

class Differentiator {
 public:
  Differentiator(Mode mode, const std::string& name, std::vector<int> derivs = {})
      : mode_(mode), name_(name), derivs_(std::move(derivs)), bit_(name_bit(name)) {}

  Expr operator()(const Expr& e) {
    if ((e.var_mask() & bit_) == 0) return Expr(0);
    if (auto it = memo_.find(e.get()); it != memo_.end()) return it->second;
    Expr out = compute(e);
    memo_.emplace(e.get(), out);
    return out;
  }

 private:
  Expr compute(const Expr& e) {
    switch (e.kind()) {
      case NodeKind::Constant:
      case NodeKind::ImaginaryUnit:
        return Expr(0);
      case NodeKind::Variable:
        return Expr(mode_ != Mode::Jet && e.name() == name_ ? 1 : 0);
      case NodeKind::FunctionApp: {
        if (e.symbol()->implicit_args && mode_ != Mode::Total) {
          return Expr(mode_ == Mode::Jet && e.symbol()->name == name_ && e.derivs() == derivs_ ? 1 : 0);
        }
        std::vector<Expr> terms;
        const auto& args = e.children();
        for (std::size_t k = 0; k < args.size(); ++k) {
          Expr da = (*this)(args[k]);
          if (da.is_zero()) continue;
          std::vector<int> d = e.derivs();
          ++d[k];
          terms.push_back(da * Expr::function(e.symbol(), args, d));
        }
        return Expr::sum(std::move(terms));
      }
      case NodeKind::Builtin: {
        Expr du = (*this)(e.arg());
        if (du.is_zero()) return Expr(0);
        return builtin_derivative(e) * du;
      }
      case NodeKind::Power: {
        Expr db = (*this)(e.base());
        if (db.is_zero()) return Expr(0);
        const Rational& n = e.exponent();
        return Expr::product({Expr(n), Pow(e.base(), n - Rational(1)), db});
      }
      case NodeKind::Product: {
        const auto& ch = e.children();
        std::vector<Expr> terms;
        for (std::size_t i = 0; i < ch.size(); ++i) {
          Expr dc = (*this)(ch[i]);
          if (dc.is_zero()) continue;
          std::vector<Expr> fs;
          fs.reserve(ch.size());
          for (std::size_t j = 0; j < ch.size(); ++j) fs.push_back(j == i ? dc : ch[j]);
          terms.push_back(Expr::product(std::move(fs)));
        }
        return Expr::sum(std::move(terms));
      }
      case NodeKind::Sum: {
        std::vector<Expr> terms;
        terms.reserve(e.children().size());
        for (const auto& c : e.children()) {
          Expr dc = (*this)(c);
          if (!dc.is_zero()) terms.push_back(std::move(dc));
        }
        return Expr::sum(std::move(terms));
      }
    }
    return Expr(0);
  }

  Mode mode_;
  std::string name_;
  std::vector<int> derivs_;
  std::uint64_t bit_;
  std::unordered_map<const Node*, Expr> memo_;
};

}  // namespace

Expr differentiate(const Expr& e, const std::string& var) {
  return Differentiator(Mode::Total, var)(e);
}

Expr partial(const Expr& e, const PartialTarget& target) {
  if (target.kind == PartialTarget::Kind::Variable) return Differentiator(Mode::HoldJets, target.name)(e);
  return Differentiator(Mode::Jet, target.name, target.derivs)(e);
}

}  // namespace symred

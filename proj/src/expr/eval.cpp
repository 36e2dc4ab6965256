#include "symred/eval.hpp"

#include <cmath>
#include <unordered_map>

#include "expr_node.hpp"

namespace symred {

namespace {

constexpr double kRealSlack = 1e-12;

bool nearly_real(Complex z) { return std::abs(z.imag()) <= kRealSlack * std::max(1.0, std::abs(z.real())); }

Complex int_power(Complex b, long long n) {
  bool invert = n < 0;
  unsigned long long m = invert ? static_cast<unsigned long long>(-n) : static_cast<unsigned long long>(n);
  Complex acc(1.0, 0.0);
  while (m) {
    if (m & 1) acc *= b;
    b *= b;
    m >>= 1;
  }
  return invert ? Complex(1.0, 0.0) / acc : acc;
}

Complex rational_power(Complex b, const Rational& e, const EvalOptions& opts) {
  if (e.is_negative() && std::abs(b) < opts.pole_threshold) throw PointRejected("pole");
  if (auto n = e.to_int(); n && std::abs(*n) < (1LL << 40)) return int_power(b, *n);
  double ed = e.to_double();
  if (opts.branch == Branch::RealDomain) {
    if (!nearly_real(b)) throw PointRejected("fractional power of a complex value in the real domain");
    double x = b.real();
    if (x >= 0) return {std::pow(x, ed), 0.0};
    if (e.den() % 2 == 0) throw PointRejected("even root of a negative value");
    // odd root of a negative real: the real branch
    double mag = std::pow(-x, ed);
    return {e.num() % 2 == 0 ? mag : -mag, 0.0};
  }
  if (b == Complex(0.0, 0.0)) return {0.0, 0.0};
  return std::exp(ed * std::log(b));
}

class Evaluator {
 public:
  Evaluator(const Binding& b, const EvalOptions& o) : binding_(b), opts_(o) {}

  Complex eval(const Expr& e) {
    if (e.kind() == NodeKind::Constant) return {e.value().to_double(), 0.0};
    if (auto it = memo_.find(e.get()); it != memo_.end()) return it->second;
    Complex v = compute(e);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw PointRejected("non-finite value");
    memo_.emplace(e.get(), v);
    return v;
  }

 private:
  Complex compute(const Expr& e) {
    switch (e.kind()) {
      case NodeKind::Constant:
        return {e.value().to_double(), 0.0};
      case NodeKind::ImaginaryUnit:
        return {0.0, 1.0};
      case NodeKind::Variable: {
        auto it = binding_.values.find(e.name());
        if (it == binding_.values.end()) throw UnboundSymbol("unbound variable '" + e.name() + "'");
        return it->second;
      }
      case NodeKind::FunctionApp:
        return function(e);
      case NodeKind::Builtin:
        return builtin(e);
      case NodeKind::Power:
        return rational_power(eval(e.base()), e.exponent(), opts_);
      case NodeKind::Product: {
        Complex acc(1.0, 0.0);
        for (const auto& c : e.children()) acc *= eval(c);
        return acc;
      }
      case NodeKind::Sum: {
        Complex acc(0.0, 0.0);
        for (const auto& c : e.children()) acc += eval(c);
        return acc;
      }
    }
    return {};
  }

  Complex function(const Expr& e) {
    const auto& sym = *e.symbol();
    if (sym.implicit_args) {
      auto it = binding_.jets.find(JetId{sym.name, e.derivs()});
      if (it == binding_.jets.end()) throw UnboundSymbol("unbound jet coordinate '" + to_string(e) + "'");
      return it->second;
    }
    auto fit = binding_.functions.find(sym.name);
    if (fit == binding_.functions.end()) throw UnboundSymbol("uninstantiated function '" + sym.name + "'");
    Binding inner;
    for (std::size_t k = 0; k < sym.params.size(); ++k) inner.values[sym.params[k]] = eval(e.children()[k]);
    inner.functions = binding_.functions;
    return evaluate(derivative_of(sym, fit->second, e.derivs()), inner, opts_);
  }

  const Expr& derivative_of(const FunctionSymbol& sym, const Expr& body, const std::vector<int>& derivs) {
    auto key = JetId{sym.name, derivs};
    auto it = derivs_.find(key);
    if (it != derivs_.end()) return it->second;
    Expr d = body;
    for (std::size_t k = 0; k < derivs.size(); ++k) {
      for (int m = 0; m < derivs[k]; ++m) d = differentiate(d, sym.params[k]);
    }
    return derivs_.emplace(key, d).first->second;
  }

  Complex builtin(const Expr& e) {
    Complex u = eval(e.arg());
    switch (e.builtin_kind()) {
      case BuiltinKind::Exp:
        return std::exp(u);
      case BuiltinKind::Ln:
        if (std::abs(u) < opts_.pole_threshold) throw PointRejected("logarithm of zero");
        if (opts_.branch == Branch::RealDomain) {
          if (!nearly_real(u) || u.real() <= 0) throw PointRejected("logarithm of a non-positive value");
          return {std::log(u.real()), 0.0};
        }
        return std::log(u);
      case BuiltinKind::Sin:
        return std::sin(u);
      case BuiltinKind::Cos:
        return std::cos(u);
      case BuiltinKind::Sqrt:
        return rational_power(u, Rational(1, 2), opts_);
      case BuiltinKind::BesselI:
        return bessel_i(e.order(), u, opts_);
    }
    return {};
  }

  const Binding& binding_;
  const EvalOptions& opts_;
  std::unordered_map<const Node*, Complex> memo_;
  std::map<JetId, Expr> derivs_;
};

}  // namespace

Complex evaluate(const Expr& e, const Binding& b, const EvalOptions& opts) { return Evaluator(b, opts).eval(e); }

Complex bessel_i(const Rational& order, Complex x, const EvalOptions& opts) {
  if (std::abs(x) > 30.0) throw PointRejected("bessel_i argument outside the series guard");
  // I_{-n} = I_n for integer order
  Rational nu = order;
  if (nu.is_integer() && nu.is_negative()) nu = -nu;
  double v = nu.to_double();
  Complex half = x / 2.0;
  if (x == Complex(0.0, 0.0)) return nu.is_zero() ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
  Complex lead;
  if (nu.is_integer()) {
    lead = int_power(half, *nu.to_int());
  } else {
    if (opts.branch == Branch::RealDomain && (!nearly_real(x) || x.real() < 0)) {
      throw PointRejected("fractional-order bessel_i of a negative argument");
    }
    lead = opts.branch == Branch::RealDomain ? Complex(std::pow(half.real(), v), 0.0) : std::exp(v * std::log(half));
  }
  Complex term = lead / std::tgamma(v + 1.0);
  Complex sum = term;
  Complex q = half * half;
  for (int m = 0; m < 1000; ++m) {
    term *= q / ((m + 1.0) * (m + 1.0 + v));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) return sum;
  }
  throw PointRejected("bessel_i series did not converge");
}

}  // namespace symred

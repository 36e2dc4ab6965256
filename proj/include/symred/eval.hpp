#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "symred/errors.hpp"
#include "symred/expr.hpp"

namespace symred {

using Complex = std::complex<double>;

enum class Branch {
  RealDomain,  // fractional powers and logs of negative reals reject the point
  Principal,   // complex principal branch everywhere
};

struct EvalOptions {
  Branch branch = Branch::Principal;
  double pole_threshold = 1e-300;  // |denominator| below this rejects the point
};

using JetId = std::pair<std::string, std::vector<int>>;

/// Values for free variables, jet coordinates (implicit-argument function
/// applications keyed by symbol name and multi-index) and concrete
/// instantiations of opaque function symbols in their formal parameters.
struct Binding {
  std::map<std::string, Complex> values;
  std::map<JetId, Complex> jets;
  std::map<std::string, Expr> functions;

  void set(const std::string& name, Complex v) { values[name] = v; }
};

/// Throws UnboundSymbol or PointRejected.
Complex evaluate(const Expr& e, const Binding& b, const EvalOptions& opts = {});

/// Modified Bessel function of the first kind by its power series. Rejects
/// |x| > 30 and, for fractional order in the real domain, x < 0.
Complex bessel_i(const Rational& order, Complex x, const EvalOptions& opts = {});

}  // namespace symred

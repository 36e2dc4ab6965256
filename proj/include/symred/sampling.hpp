#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "symred/eval.hpp"

namespace symred {

struct Interval {
  double lo = 0;
  double hi = 0;
};

/// A union of disjoint intervals; points are drawn uniformly over its measure.
struct Box {
  std::vector<Interval> pieces;

  static Box symmetric_band(double inner = 0.5, double outer = 2.0) { return {{{-outer, -inner}, {inner, outer}}}; }
  static Box interval(double lo, double hi) { return {{{lo, hi}}}; }
  double measure() const;
  double at(double u) const;  // u in [0, 1)
};

struct SamplePlan {
  Box default_box = Box::symmetric_band();
  std::map<std::string, Box> boxes;
  int count = 20;
  int min_accepted = 12;
  std::vector<std::uint64_t> seeds{1, 2, 3};
  double eps_sing = 1e-6;
  Branch branch = Branch::RealDomain;
  int max_attempts_factor = 50;
  double rank_tol = 1e-9;  // relative pivot threshold for numeric ranks

  const Box& box_for(const std::string& var) const;
  void validate() const;  // throws std::invalid_argument
  EvalOptions eval_options() const { return {branch, eps_sing}; }
};

/// Counter-based generator: the value for (seed, point index, stream) does
/// not depend on how many other values were drawn.
std::uint64_t splitmix64(std::uint64_t x);
double uniform01(std::uint64_t seed, std::uint64_t index, std::uint64_t stream);
std::uint64_t hash_name(const std::string& s);

struct SamplePoint {
  std::uint64_t seed = 0;
  std::uint64_t index = 0;  // attempt index that produced the point
  std::map<std::string, double> coords;
};

/// Draws points over `vars` until plan.count are accepted by `accept` (which
/// may throw PointRejected) or the attempt budget runs out. Throws
/// SamplingStarvation if fewer than plan.min_accepted survive.
std::vector<SamplePoint> sample_accepted(const std::vector<std::string>& vars, const SamplePlan& plan,
                                         std::uint64_t seed,
                                         const std::function<bool(const SamplePoint&)>& accept);

struct Instantiation {
  Expr expr;
  Binding binding;  // functions: symbol name -> polynomial in its formal parameters
};

/// Polynomial stand-in for an opaque symbol: total degree <= 3 in its formal
/// parameters, coefficients uniform in [-2, 2] rounded to multiples of 1/1024.
Expr instantiation_polynomial(const FunctionSymbol& sym, std::uint64_t seed);

/// Replaces every opaque function symbol by its polynomial and formal
/// derivatives by the exact derivatives of that polynomial.
Instantiation instantiate_functions(const Expr& e, std::uint64_t seed);
Expr instantiate_with(const Expr& e, const std::map<std::string, Expr>& polys,
                      const std::map<std::string, SymbolPtr>& symbols);

/// Sampling equality oracle: |e1 - e2| <= max(abs_tol, rel_tol * max(|e1|, |e2|))
/// at every accepted point of every seed. Opaque symbols are instantiated
/// per seed and jet coordinates receive independent random values.
bool numeric_equiv(const Expr& e1, const Expr& e2, const SamplePlan& plan = {}, double abs_tol = 1e-10,
                   double rel_tol = 1e-9);

/// Jet coordinates (implicit-argument applications) occurring in e.
std::vector<JetId> jet_coordinates(const Expr& e);

}  // namespace symred

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symred/eval.hpp"
#include "symred/expr.hpp"
#include "symred/parse.hpp"
#include "symred/sampling.hpp"

namespace symred {

struct JetKey {
  std::size_t dependent = 0;
  std::vector<int> multi;  // one entry per independent

  int order() const;
  friend bool operator==(const JetKey&, const JetKey&) = default;
  friend bool operator<(const JetKey& a, const JetKey& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    if (a.dependent != b.dependent) return a.dependent < b.dependent;
    return a.multi > b.multi;
  }
};

class VariableSpace {
 public:
  VariableSpace() = default;
  VariableSpace(std::vector<std::string> independents, std::vector<std::string> dependents, int max_order);

  const std::vector<std::string>& independents() const { return independents_; }
  const std::vector<std::string>& dependents() const { return dependents_; }
  int max_order() const { return max_order_; }
  std::size_t p() const { return independents_.size(); }
  std::size_t q() const { return dependents_.size(); }

  const SymbolPtr& dependent_symbol(std::size_t alpha) const { return symbols_.at(alpha); }
  std::optional<std::size_t> dependent_index(const std::string& name) const;
  std::optional<std::size_t> independent_index(const std::string& name) const;

  Expr x(std::size_t i) const { return Expr::variable(independents_.at(i)); }
  Expr u(std::size_t alpha) const { return jet(JetKey{alpha, std::vector<int>(p(), 0)}); }
  /// First-order jet coordinate d(u_alpha, x_i).
  Expr du(std::size_t alpha, std::size_t i) const;
  Expr jet(const JetKey& key) const;
  std::string jet_name(const JetKey& key) const;
  JetId jet_id(const JetKey& key) const { return {dependents_.at(key.dependent), key.multi}; }
  std::optional<JetKey> key_of(const JetId& id) const;

  /// Every jet key of order <= n, ordered by (order, dependent, multi-index).
  std::vector<JetKey> jet_keys(int n) const;

  /// Parse context with the dependents declared as implicit symbols.
  ParseContext parse_context() const;

 private:
  std::vector<std::string> independents_;
  std::vector<std::string> dependents_;
  std::vector<SymbolPtr> symbols_;
  int max_order_ = 1;
};

/// Throws std::invalid_argument on duplicate or empty names, or bad counts.
VariableSpace make_space(std::vector<std::string> independents, std::vector<std::string> dependents, int max_order);

/// An explicit ansatz u = f(x) with the loci on which it is singular.
struct CandidateSolution {
  std::string name;
  std::map<std::string, Expr> values;  // dependent name -> expression in independents
  std::vector<Expr> excluded;
  std::map<std::string, Box> boxes;    // per-variable domain restrictions

  void validate(const VariableSpace& space) const;  // throws AnalysisError
};

/// Replaces every jet coordinate by the exact derivative of the candidate.
/// Throws AnalysisError if a dependent appearing in e is not covered.
Expr substitute_candidate(const Expr& e, const CandidateSolution& c, const VariableSpace& space);

struct JetPoint {
  std::string candidate;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  std::vector<double> x;               // in space order
  std::map<JetId, Complex> jets;       // every key up to the requested order

  /// Variable and jet values (no function instantiations).
  Binding binding(const VariableSpace& space) const;
};

/// Evaluates expressions at jet points after instantiating their opaque
/// symbols for one seed. Instantiations are cached per expression node.
class SeededEvaluator {
 public:
  SeededEvaluator(const VariableSpace& space, std::uint64_t seed, EvalOptions opts)
      : space_(space), seed_(seed), opts_(opts) {}
  const Expr& instantiated(const Expr& e);
  Complex operator()(const Expr& e, const JetPoint& pt);
  std::uint64_t seed() const { return seed_; }

 private:
  const VariableSpace& space_;
  std::uint64_t seed_;
  EvalOptions opts_;
  std::map<const void*, std::pair<Expr, Expr>> cache_;  // keeps the source alive
};

/// Sample plan with the candidate's own box overrides applied.
SamplePlan plan_for(const CandidateSolution& c, const SamplePlan& plan);

/// Jet points of the candidate, plan.count per seed, in (seed, index) order.
/// A point is rejected when an excluded locus or any denominator met during
/// evaluation is within plan.eps_sing of zero. `extra` expressions (over the
/// jet) must evaluate at accepted points too.
std::vector<JetPoint> sample_points(const CandidateSolution& c, const SamplePlan& plan, int order,
                                    const VariableSpace& space, const std::vector<Expr>& extra = {});

/// Points with every coordinate (x, u and jet slots up to `order`) drawn
/// independently from the plan's boxes.
std::vector<JetPoint> sample_free_points(const VariableSpace& space, const SamplePlan& plan, int order,
                                         const std::vector<Expr>& extra = {});

std::string jet_point_json(const JetPoint& pt, const VariableSpace& space);

}  // namespace symred

#pragma once

#include <map>
#include <string>
#include <vector>

#include "symred/expr.hpp"
#include "symred/jet.hpp"

namespace symred {

/// v = sum_i xi_i d/dx_i + sum_alpha phi_alpha d/du_alpha with coefficients
/// in (x, u).
struct VectorField {
  std::string name;
  std::vector<Expr> xi;   // p entries
  std::vector<Expr> phi;  // q entries

  void validate(const VariableSpace& space) const;  // throws AnalysisError
};

struct Algebra {
  std::string name;
  std::vector<VectorField> fields;

  std::size_t dim() const { return fields.size(); }
  std::vector<std::string> generator_names() const;
};

struct ExpressionMatrix {
  std::string id;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<Expr>> entries;

  std::size_t rows() const { return entries.size(); }
  std::size_t cols() const { return col_labels.size(); }
  const Expr& at(std::size_t r, std::size_t c) const { return entries.at(r).at(c); }
  std::vector<Expr> flat() const;
  ExpressionMatrix map(const std::function<Expr(const Expr&)>& fn) const;
};

/// Xi1 = {xi^a_i} (r x p) and Xi2 = {xi^a_i, phi^a_alpha} (r x (p+q)).
std::pair<ExpressionMatrix, ExpressionMatrix> xi_matrices(const Algebra& a, const VariableSpace& space);

/// Q with entries phi^a_alpha - sum_i xi^a_i d(u_alpha, x_i) (r x q).
ExpressionMatrix characteristic_matrix(const Algebra& a, const VariableSpace& space);
std::vector<Expr> evolutionary_form(const VectorField& v, const VariableSpace& space);

/// Commutator of first-order operators on (x, u).
VectorField lie_bracket(const VectorField& v, const VectorField& w, const VariableSpace& space);

/// Named field sum_k c_k v_k.
VectorField combine(const Algebra& a, const std::vector<Rational>& coeffs, const std::string& name);

struct BracketFit {
  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<double> coefficients;  // over the `within` basis
  double residual = 0;
  bool fitted = false;
  bool skipped = false;  // bracket involves arbitrary functions
};

struct ClosureReport {
  bool closed = false;
  bool flagged = false;  // ambiguous fit: rank-deficient sample matrix
  bool infinite_family = false;
  std::vector<BracketFit> brackets;
  std::string message;
};

/// Every bracket of A's basis is fitted as a constant combination of
/// `within`'s basis by least squares on sampled (x, u) points, and accepted
/// when the residual is below 1e-8 on every seed. A nonzero bracket that
/// still contains arbitrary functions cannot be matched by constants and is
/// reported as belonging to an infinite family.
ClosureReport closure_check(const Algebra& a, const Algebra& within, const VariableSpace& space,
                            const SamplePlan& plan = {});

/// Prolonged coefficients phi^{alpha,J} for every |J| <= order.
std::map<JetKey, Expr> prolong(const VectorField& v, const VariableSpace& space, int order);

/// pr v applied to a jet expression.
Expr apply_prolongation(const VectorField& v, const Expr& delta, const VariableSpace& space);

}  // namespace symred

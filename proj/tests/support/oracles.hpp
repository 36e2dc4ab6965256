#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "symred/fields.hpp"
#include "symred/linalg.hpp"
#include "symred/workspace.hpp"

namespace symred::testing {

/// Unnormalized random expressions in x, y, z and an opaque f(x, y). Negative
/// and fractional powers, logs and square roots only see positive-definite
/// arguments, so the trees are smooth on all of R^3.
class RandomExpr {
 public:
  explicit RandomExpr(std::uint64_t seed, int max_depth = 4);
  Expr next();
  const std::vector<std::string>& vars() const { return vars_; }

 private:
  Expr gen(int depth);
  Expr leaf();
  Expr positive(int depth);

  std::mt19937_64 rng_;
  int max_depth_;
  std::vector<std::string> vars_{"x", "y", "z"};
  SymbolPtr f_;
};

struct SuiteResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::size_t failed = 0;
  double worst = 0;  // largest observed error measure
  std::string first_failure;

  bool ok() const { return failed == 0 && checked > 0; }
  void fail(const std::string& what);
  std::string summary() const;
};

/// Rank as the largest k with a k x k minor whose determinant, scaled by the
/// Hadamard bound of its rows, exceeds `tol`. Determinants by cofactor
/// expansion.
int minor_rank(const ComplexMatrix& m, double tol = 1e-8);
Complex cofactor_det(const ComplexMatrix& m);

/// A library matrix: Xi1/Xi2 of an algebra on free points, or Q on the jet
/// points of a candidate.
struct LibraryMatrix {
  std::string label;
  std::shared_ptr<const Workspace> ws;
  ExpressionMatrix matrix;
  std::optional<CandidateSolution> candidate;
};
std::vector<LibraryMatrix> library_matrices();

/// Every (model, algebra, candidate) triple of the library, with the
/// workspace re-parsed for the candidate's required parameters.
struct LibraryPair {
  std::string label;
  std::shared_ptr<const Workspace> ws;
  const AlgebraDecl* algebra = nullptr;
  const CandidateDecl* candidate = nullptr;
};
std::vector<LibraryPair> library_pairs();

SuiteResult derivative_vs_fd(std::size_t n, std::uint64_t seed, double h = 1e-6, double rel = 1e-5);
SuiteResult normalize_idempotence(std::size_t n, std::uint64_t seed);
SuiteResult parse_print_library();
SuiteResult bessel_recurrence(double rel = 1e-9);
SuiteResult rank_vs_minor_oracle();
SuiteResult rank_monotonicity();
SuiteResult closure_library();
SuiteResult defect_two_routes();
SuiteResult kernel_contraction();
SuiteResult jet_point_fd(double rel = 1e-5);
SuiteResult prolongation_chain_rule(double rel = 1e-8);
SuiteResult solutions_over_draws();
SuiteResult expected_defects();
SuiteResult byte_identical_json();

}  // namespace symred::testing

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symred/fields.hpp"
#include "symred/jet.hpp"
#include "symred/linalg.hpp"

namespace symred {

struct SeedRanks {
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> points;  // attempt indices of the accepted points
  std::vector<int> ranks;
};

struct RankReport {
  std::string matrix_id;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<SeedRanks> per_seed;
  int generic_rank = 0;
  double tolerance = 1e-9;
  bool non_generic = false;
};

/// Numeric values of a matrix at one jet point.
ComplexMatrix evaluate_matrix(const ExpressionMatrix& m, const JetPoint& pt, SeededEvaluator& ev);

/// Highest jet order among the matrix entries.
int jet_order(const std::vector<Expr>& exprs, const VariableSpace& space);

RankReport rank_at_points(const ExpressionMatrix& m, const std::vector<JetPoint>& pts, const VariableSpace& space,
                          const SamplePlan& plan);

/// Generic rank over sampled points: on the candidate's jet points when one
/// is given, otherwise with every coordinate drawn freely.
RankReport generic_rank(const ExpressionMatrix& m, const VariableSpace& space, const SamplePlan& plan,
                        const CandidateSolution* candidate = nullptr);

enum class Transversality { Strong, ViolatedStrong };
enum class WeakStatus { WeakHolds, WeakFails };

struct TransversalityReport {
  std::string algebra;
  RankReport xi1;
  RankReport xi2;
  Transversality status = Transversality::Strong;
  std::optional<std::string> candidate;
  std::optional<RankReport> xi1_on_candidate;
  std::optional<RankReport> xi2_on_candidate;
  std::optional<WeakStatus> weak;
  bool non_generic() const;
};

TransversalityReport classify_transversality(const Algebra& a, const VariableSpace& space, const SamplePlan& plan,
                                             const CandidateSolution* candidate = nullptr);

struct MinorsReport {
  std::string algebra;
  int rho = 0;      // generic rank of Xi1
  int size = 0;     // order of the minors, rho + 1
  std::size_t examined = 0;
  std::vector<Expr> minors;  // nonzero, pairwise distinct up to sign
  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> positions;  // rows, cols
};

/// All (rho+1)-minors of Xi2 with rho = generic rank of Xi1. Throws
/// AnalysisError when rho equals the smaller dimension of Xi2.
MinorsReport weak_minors(const Algebra& a, const VariableSpace& space, const SamplePlan& plan,
                         std::size_t max_minors = 20000);

/// Symbolic determinant by cofactor expansion.
Expr determinant(const std::vector<std::vector<Expr>>& m);

struct WeakCheck {
  bool holds = false;
  double max_abs = 0;
  std::size_t points = 0;
  std::size_t minors = 0;
};
WeakCheck weak_check_candidate(const Algebra& a, const CandidateSolution& c, const VariableSpace& space,
                               const SamplePlan& plan, double tol = 1e-10);

enum class DefectClass { Invariant, PartiallyInvariant, Generic };

struct DefectReport {
  std::string algebra;
  std::string candidate;
  int delta = 0;
  int s = 0;        // generic rank of Xi2 (orbit dimension)
  int m0 = 0;       // min(s, dim M - p) with dim M = p + q
  DefectClass classification = DefectClass::Invariant;
  RankReport q_rank;
  bool non_generic = false;
};

DefectReport defect(const Algebra& a, const CandidateSolution& c, const VariableSpace& space, const SamplePlan& plan);
bool invariance_check(const Algebra& a, const CandidateSolution& c, const VariableSpace& space,
                      const SamplePlan& plan);

/// Independent route for the invariance decision: substitute the candidate
/// into Q symbolically and test every entry for numeric vanishing.
bool characteristics_vanish(const Algebra& a, const CandidateSolution& c, const VariableSpace& space,
                            const SamplePlan& plan, double tol = 1e-9);

struct KernelReport {
  std::string algebra;
  std::string candidate;
  std::vector<std::string> generator_order;
  int pointwise_kernel_dim = 0;           // r - generic rank of Q on the candidate
  std::vector<int> pointwise_kernel_dims;  // per accepted point
  RealMatrix constant_kernel;              // echelon basis, rows in generator order
  std::optional<std::string> matched;      // declared combination spanning the kernel
  double match_distance = 1.0;
  std::size_t points = 0;
};

KernelReport constant_kernel_generators(const Algebra& a, const CandidateSolution& c, const VariableSpace& space,
                                        const SamplePlan& plan,
                                        const std::map<std::string, std::vector<Rational>>& combinations = {});

struct SymmetryCheck {
  bool holds = false;
  double donor_residual = 0;
  std::vector<double> max_abs;  // per equation
  std::size_t points = 0;
};

/// Per-equation maximum |Delta| over the candidate's jet points.
std::vector<double> max_residuals(const std::vector<Expr>& system, const CandidateSolution& c,
                                  const VariableSpace& space, const SamplePlan& plan, std::size_t* points = nullptr);

/// Checks pr v (Delta) = 0 on jet points of a donor solution. Throws
/// AnalysisError when the donor's own residual is not below 1e-8.
SymmetryCheck symmetry_check(const std::vector<Expr>& system, const VectorField& v, const CandidateSolution& donor,
                             const VariableSpace& space, const SamplePlan& plan, double tol = 1e-7);

std::string to_string(Transversality t);
std::string to_string(WeakStatus w);
std::string to_string(DefectClass d);

}  // namespace symred

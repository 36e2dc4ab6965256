#pragma once

#include <vector>

#include "symred/eval.hpp"

namespace symred {

using RealMatrix = std::vector<std::vector<double>>;
using ComplexMatrix = std::vector<std::vector<Complex>>;

struct RankOptions {
  double rel_tol = 1e-9;     // pivot threshold relative to the largest initial entry
  double abs_floor = 1e-10;  // pivots at or below this are zero regardless of scale
};

/// Rank by Gaussian elimination with full pivoting.
int numeric_rank(ComplexMatrix m, const RankOptions& opts = {});
int numeric_rank(const RealMatrix& m, const RankOptions& opts = {});

/// Orthonormal basis of the right null space of A by SVD; a singular value is
/// zero when below rel_tol times the largest one. Columns are scaled to unit
/// norm before the decomposition.
RealMatrix null_space(const RealMatrix& a, double rel_tol = 1e-8);

/// Reduced row echelon basis of span(vectors): first nonzero entry of each is 1.
RealMatrix echelon_basis(const RealMatrix& vectors, double tol = 1e-10);

/// Largest distance of a unit vector of one span from the other span.
double span_distance(const RealMatrix& a, const RealMatrix& b);

struct LeastSquares {
  std::vector<double> x;
  double max_residual = 0;
  int rank = 0;
};
LeastSquares least_squares(const RealMatrix& a, const std::vector<double>& b);

/// Real rows (Re, Im) of a complex matrix stacked per row.
RealMatrix realify_rows(const ComplexMatrix& m);

}  // namespace symred

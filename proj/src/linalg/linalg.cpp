#include "symred/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace symred {

int numeric_rank(ComplexMatrix m, const RankOptions& opts) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  double scale = 0;
  for (const auto& r : m) {
    for (const auto& v : r) scale = std::max(scale, std::abs(v));
  }
  const double tol = std::max(opts.rel_tol * scale, opts.abs_floor);
  std::vector<std::size_t> colmap(cols);
  for (std::size_t c = 0; c < cols; ++c) colmap[c] = c;
  int rank = 0;
  for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
    std::size_t pr = k, pc = k;
    double best = -1;
    for (std::size_t r = k; r < rows; ++r) {
      for (std::size_t c = k; c < cols; ++c) {
        double a = std::abs(m[r][c]);
        if (a > best) {
          best = a;
          pr = r;
          pc = c;
        }
      }
    }
    if (best <= tol) break;
    std::swap(m[k], m[pr]);
    if (pc != k) {
      for (auto& r : m) std::swap(r[k], r[pc]);
    }
    for (std::size_t r = k + 1; r < rows; ++r) {
      Complex f = m[r][k] / m[k][k];
      if (f == Complex(0.0, 0.0)) continue;
      for (std::size_t c = k; c < cols; ++c) m[r][c] -= f * m[k][c];
    }
    ++rank;
  }
  return rank;
}

int numeric_rank(const RealMatrix& m, const RankOptions& opts) {
  ComplexMatrix c;
  c.reserve(m.size());
  for (const auto& r : m) c.emplace_back(r.begin(), r.end());
  return numeric_rank(std::move(c), opts);
}

namespace {

Eigen::MatrixXd to_eigen(const RealMatrix& a) {
  const Eigen::Index rows = static_cast<Eigen::Index>(a.size());
  const Eigen::Index cols = rows ? static_cast<Eigen::Index>(a[0].size()) : 0;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }
  return m;
}

}  // namespace

RealMatrix null_space(const RealMatrix& a, double rel_tol) {
  if (a.empty()) return {};
  Eigen::MatrixXd m = to_eigen(a);
  const Eigen::Index n = m.cols();
  Eigen::VectorXd scale(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    double s = m.col(c).norm();
    scale(c) = s > 0 ? s : 1.0;
    m.col(c) /= scale(c);
  }
  // pad so the SVD always exposes n right singular vectors
  if (m.rows() < n) {
    Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(n, n);
    padded.topRows(m.rows()) = m;
    m = padded;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  RealMatrix out;
  for (Eigen::Index k = 0; k < n; ++k) {
    double sk = k < s.size() ? s(k) : 0.0;
    if (sk > rel_tol * smax && smax > 0) continue;
    Eigen::VectorXd v = svd.matrixV().col(k).cwiseQuotient(scale);
    v.normalize();
    out.emplace_back(v.data(), v.data() + v.size());
  }
  return out;
}

RealMatrix echelon_basis(const RealMatrix& vectors, double tol) {
  RealMatrix m = vectors;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = r;
    for (std::size_t k = r; k < rows; ++k) {
      if (std::abs(m[k][c]) > std::abs(m[best][c])) best = k;
    }
    if (std::abs(m[best][c]) <= tol) continue;
    std::swap(m[r], m[best]);
    double piv = m[r][c];
    for (auto& v : m[r]) v /= piv;
    for (std::size_t k = 0; k < rows; ++k) {
      if (k == r || m[k][c] == 0.0) continue;
      double f = m[k][c];
      for (std::size_t j = 0; j < cols; ++j) m[k][j] -= f * m[r][j];
    }
    ++r;
  }
  m.resize(r);
  for (auto& row : m) {
    for (auto& v : row) {
      if (std::abs(v) <= tol) v = 0.0;
    }
  }
  return m;
}

double span_distance(const RealMatrix& a, const RealMatrix& b) {
  if (a.size() != b.size()) return 1.0;
  if (a.empty()) return 0.0;
  auto orth = [](const RealMatrix& v) {
    Eigen::MatrixXd m = to_eigen(v).transpose();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    return Eigen::MatrixXd(qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols()));
  };
  Eigen::MatrixXd qa = orth(a);
  Eigen::MatrixXd qb = orth(b);
  Eigen::MatrixXd residual = qa - qb * (qb.transpose() * qa);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

LeastSquares least_squares(const RealMatrix& a, const std::vector<double>& b) {
  LeastSquares out;
  if (a.empty()) return out;
  Eigen::MatrixXd m = to_eigen(a);
  Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  qr.setThreshold(1e-10);
  Eigen::VectorXd x = qr.solve(rhs);
  out.rank = static_cast<int>(qr.rank());
  out.x.assign(x.data(), x.data() + x.size());
  out.max_residual = (m * x - rhs).cwiseAbs().maxCoeff();
  return out;
}

RealMatrix realify_rows(const ComplexMatrix& m) {
  RealMatrix out;
  out.reserve(2 * m.size());
  for (const auto& r : m) {
    std::vector<double> re, im;
    for (const auto& v : r) {
      re.push_back(v.real());
      im.push_back(v.imag());
    }
    out.push_back(std::move(re));
    out.push_back(std::move(im));
  }
  return out;
}

}  // namespace symred

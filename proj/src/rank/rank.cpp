#include "symred/rank.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace symred {

ComplexMatrix evaluate_matrix(const ExpressionMatrix& m, const JetPoint& pt, SeededEvaluator& ev) {
  ComplexMatrix out(m.rows(), std::vector<Complex>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Expr& e = m.at(r, c);
      out[r][c] = e.is_zero() ? Complex(0.0, 0.0) : ev(e, pt);
    }
  }
  return out;
}

int jet_order(const std::vector<Expr>& exprs, const VariableSpace& space) {
  int order = 0;
  for (const auto& e : exprs) {
    for (const auto& id : jet_coordinates(e)) {
      if (auto k = space.key_of(id)) order = std::max(order, k->order());
    }
  }
  return order;
}

namespace {

template <typename Fn>
void for_each_seed(const std::vector<JetPoint>& pts, const VariableSpace& space, const SamplePlan& plan, Fn&& fn) {
  std::size_t i = 0;
  while (i < pts.size()) {
    std::uint64_t seed = pts[i].seed;
    SeededEvaluator ev(space, seed, plan.eval_options());
    std::size_t j = i;
    while (j < pts.size() && pts[j].seed == seed) ++j;
    fn(seed, ev, i, j);
    i = j;
  }
}

void summarize(RankReport& rep) {
  int lo = -1, hi = -1;
  for (const auto& s : rep.per_seed) {
    for (int r : s.ranks) {
      lo = lo < 0 ? r : std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  rep.generic_rank = std::max(hi, 0);
  rep.non_generic = lo != hi;
}

}  // namespace

RankReport rank_at_points(const ExpressionMatrix& m, const std::vector<JetPoint>& pts, const VariableSpace& space,
                          const SamplePlan& plan) {
  RankReport rep;
  rep.matrix_id = m.id;
  rep.rows = m.rows();
  rep.cols = m.cols();
  RankOptions opts;
  opts.rel_tol = plan.rank_tol;
  rep.tolerance = opts.rel_tol;
  for_each_seed(pts, space, plan, [&](std::uint64_t seed, SeededEvaluator& ev, std::size_t b, std::size_t e) {
    SeedRanks sr;
    sr.seed = seed;
    for (std::size_t k = b; k < e; ++k) {
      sr.points.push_back(pts[k].index);
      sr.ranks.push_back(numeric_rank(evaluate_matrix(m, pts[k], ev), opts));
    }
    rep.per_seed.push_back(std::move(sr));
  });
  summarize(rep);
  return rep;
}

RankReport generic_rank(const ExpressionMatrix& m, const VariableSpace& space, const SamplePlan& plan,
                        const CandidateSolution* candidate) {
  auto entries = m.flat();
  int order = jet_order(entries, space);
  auto pts = candidate ? sample_points(*candidate, plan, order, space, entries)
                       : sample_free_points(space, plan, order, entries);
  return rank_at_points(m, pts, space, plan);
}

bool TransversalityReport::non_generic() const {
  return xi1.non_generic || xi2.non_generic || (xi1_on_candidate && xi1_on_candidate->non_generic) ||
         (xi2_on_candidate && xi2_on_candidate->non_generic);
}

TransversalityReport classify_transversality(const Algebra& a, const VariableSpace& space, const SamplePlan& plan,
                                             const CandidateSolution* candidate) {
  TransversalityReport rep;
  rep.algebra = a.name;
  auto [x1, x2] = xi_matrices(a, space);
  rep.xi1 = generic_rank(x1, space, plan);
  rep.xi2 = generic_rank(x2, space, plan);
  rep.status = rep.xi1.generic_rank == rep.xi2.generic_rank ? Transversality::Strong : Transversality::ViolatedStrong;
  if (candidate) {
    rep.candidate = candidate->name;
    rep.xi1_on_candidate = generic_rank(x1, space, plan, candidate);
    rep.xi2_on_candidate = generic_rank(x2, space, plan, candidate);
    rep.weak = rep.xi1_on_candidate->generic_rank == rep.xi2_on_candidate->generic_rank ? WeakStatus::WeakHolds
                                                                                        : WeakStatus::WeakFails;
  }
  return rep;
}

Expr determinant(const std::vector<std::vector<Expr>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return Expr(1);
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  std::vector<Expr> terms;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<Expr>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Expr> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(m[r][k]);
      }
      sub.push_back(std::move(row));
    }
    Expr minor = determinant(sub);
    if (minor.is_zero()) continue;
    Expr t = m[0][c] * minor;
    terms.push_back(c % 2 ? -t : t);
  }
  return Expr::sum(std::move(terms));
}

namespace {

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace

MinorsReport weak_minors(const Algebra& a, const VariableSpace& space, const SamplePlan& plan,
                         std::size_t max_minors) {
  MinorsReport rep;
  rep.algebra = a.name;
  auto [x1, x2] = xi_matrices(a, space);
  rep.rho = generic_rank(x1, space, plan).generic_rank;
  rep.size = rep.rho + 1;
  const std::size_t k = static_cast<std::size_t>(rep.size);
  if (static_cast<std::size_t>(rep.rho) >= std::min(x2.rows(), x2.cols())) {
    throw AnalysisError("rank of Xi1 equals the smaller dimension of Xi2: no minors exist");
  }
  auto row_sets = subsets(x2.rows(), k);
  auto col_sets = subsets(x2.cols(), k);
  if (row_sets.size() * col_sets.size() > max_minors) throw AnalysisError("too many minors to enumerate");

  SamplePlan sig_plan = plan;
  sig_plan.seeds = {plan.seeds.front()};
  sig_plan.count = 8;
  sig_plan.min_accepted = 4;
  auto pts = sample_free_points(space, sig_plan, 0, x2.flat());
  SeededEvaluator ev(space, sig_plan.seeds.front(), sig_plan.eval_options());

  std::vector<std::vector<Complex>> signatures;
  for (const auto& rs : row_sets) {
    for (const auto& cs : col_sets) {
      ++rep.examined;
      std::vector<std::vector<Expr>> sub;
      for (auto r : rs) {
        std::vector<Expr> row;
        for (auto c : cs) row.push_back(x2.at(r, c));
        sub.push_back(std::move(row));
      }
      Expr d = determinant(sub);
      if (d.is_zero()) continue;
      std::vector<Complex> sig;
      double scale = 0;
      bool usable = true;
      for (const auto& pt : pts) {
        try {
          sig.push_back(ev(d, pt));
        } catch (const PointRejected&) {
          usable = false;
          break;
        }
        scale = std::max(scale, std::abs(sig.back()));
      }
      if (usable && scale <= 1e-12) continue;
      bool duplicate = false;
      if (usable) {
        for (const auto& other : signatures) {
          if (other.size() != sig.size()) continue;
          for (double sgn : {1.0, -1.0}) {
            bool same = true;
            for (std::size_t i = 0; i < sig.size() && same; ++i) {
              double tol = 1e-9 * std::max({1.0, std::abs(sig[i]), std::abs(other[i])});
              same = std::abs(sig[i] - sgn * other[i]) <= tol;
            }
            duplicate = duplicate || same;
          }
          if (duplicate) break;
        }
      }
      if (duplicate) continue;
      signatures.push_back(usable ? sig : std::vector<Complex>{});
      rep.minors.push_back(d);
      rep.positions.emplace_back(rs, cs);
    }
  }
  return rep;
}

WeakCheck weak_check_candidate(const Algebra& a, const CandidateSolution& c, const VariableSpace& space,
                               const SamplePlan& plan, double tol) {
  WeakCheck out;
  auto minors = weak_minors(a, space, plan).minors;
  out.minors = minors.size();
  auto pts = sample_points(c, plan, 0, space, minors);
  out.points = pts.size();
  for_each_seed(pts, space, plan, [&](std::uint64_t, SeededEvaluator& ev, std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      for (const auto& m : minors) out.max_abs = std::max(out.max_abs, std::abs(ev(m, pts[k])));
    }
  });
  out.holds = out.max_abs < tol;
  return out;
}

DefectReport defect(const Algebra& a, const CandidateSolution& c, const VariableSpace& space, const SamplePlan& plan) {
  DefectReport rep;
  rep.algebra = a.name;
  rep.candidate = c.name;
  ExpressionMatrix q = characteristic_matrix(a, space);
  rep.q_rank = generic_rank(q, space, plan, &c);
  rep.delta = rep.q_rank.generic_rank;
  auto x2 = xi_matrices(a, space).second;
  rep.s = generic_rank(x2, space, plan).generic_rank;
  rep.m0 = std::min(rep.s, static_cast<int>(space.q()));
  rep.non_generic = rep.q_rank.non_generic;
  if (rep.delta == 0) {
    rep.classification = DefectClass::Invariant;
  } else if (rep.delta < rep.m0) {
    rep.classification = DefectClass::PartiallyInvariant;
  } else {
    rep.classification = DefectClass::Generic;
  }
  return rep;
}

bool invariance_check(const Algebra& a, const CandidateSolution& c, const VariableSpace& space,
                      const SamplePlan& plan) {
  return defect(a, c, space, plan).delta == 0;
}

bool characteristics_vanish(const Algebra& a, const CandidateSolution& c, const VariableSpace& space,
                            const SamplePlan& plan, double tol) {
  auto qc = characteristic_matrix(a, space).map([&](const Expr& e) { return substitute_candidate(e, c, space); });
  auto entries = qc.flat();
  auto pts = sample_points(c, plan, 0, space, entries);
  bool vanish = true;
  for_each_seed(pts, space, plan, [&](std::uint64_t, SeededEvaluator& ev, std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      for (const auto& x : entries) {
        if (!x.is_zero() && std::abs(ev(x, pts[k])) > tol) vanish = false;
      }
    }
  });
  return vanish;
}

KernelReport constant_kernel_generators(const Algebra& a, const CandidateSolution& c, const VariableSpace& space,
                                        const SamplePlan& plan,
                                        const std::map<std::string, std::vector<Rational>>& combinations) {
  KernelReport rep;
  rep.algebra = a.name;
  rep.candidate = c.name;
  rep.generator_order = a.generator_names();
  ExpressionMatrix q = characteristic_matrix(a, space);
  auto pts = sample_points(c, plan, 1, space, q.flat());
  rep.points = pts.size();
  ComplexMatrix stack;
  int max_rank = 0;
  for_each_seed(pts, space, plan, [&](std::uint64_t, SeededEvaluator& ev, std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      ComplexMatrix qv = evaluate_matrix(q, pts[k], ev);
      int rk = numeric_rank(qv, RankOptions{plan.rank_tol});
      max_rank = std::max(max_rank, rk);
      rep.pointwise_kernel_dims.push_back(static_cast<int>(a.dim()) - rk);
      for (std::size_t alpha = 0; alpha < space.q(); ++alpha) {
        std::vector<Complex> row;
        for (std::size_t g = 0; g < a.dim(); ++g) row.push_back(qv[g][alpha]);
        stack.push_back(std::move(row));
      }
    }
  });
  rep.pointwise_kernel_dim = static_cast<int>(a.dim()) - max_rank;
  rep.constant_kernel = echelon_basis(null_space(realify_rows(stack), 1e-8));
  for (const auto& [name, coeffs] : combinations) {
    std::vector<double> v;
    for (const auto& r : coeffs) v.push_back(r.to_double());
    double d = span_distance(rep.constant_kernel, {v});
    if (d < rep.match_distance) rep.match_distance = d;
    if (d < 1e-8) rep.matched = name;
  }
  return rep;
}

std::vector<double> max_residuals(const std::vector<Expr>& system, const CandidateSolution& c,
                                  const VariableSpace& space, const SamplePlan& plan, std::size_t* points) {
  int order = jet_order(system, space);
  auto pts = sample_points(c, plan, order, space, system);
  if (points) *points = pts.size();
  std::vector<double> out(system.size(), 0.0);
  for_each_seed(pts, space, plan, [&](std::uint64_t, SeededEvaluator& ev, std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      for (std::size_t i = 0; i < system.size(); ++i) out[i] = std::max(out[i], std::abs(ev(system[i], pts[k])));
    }
  });
  return out;
}

SymmetryCheck symmetry_check(const std::vector<Expr>& system, const VectorField& v, const CandidateSolution& donor,
                             const VariableSpace& space, const SamplePlan& plan, double tol) {
  SymmetryCheck out;
  auto donor_res = max_residuals(system, donor, space, plan);
  out.donor_residual = donor_res.empty() ? 0.0 : *std::max_element(donor_res.begin(), donor_res.end());
  if (!(out.donor_residual < 1e-8)) {
    throw AnalysisError("donor '" + donor.name + "' is not a solution (max residual " +
                        std::to_string(out.donor_residual) + ")");
  }
  std::vector<Expr> prv;
  for (const auto& d : system) prv.push_back(apply_prolongation(v, d, space));
  auto pts = sample_points(donor, plan, jet_order(system, space), space, prv);
  out.points = pts.size();
  out.max_abs.assign(prv.size(), 0.0);
  for_each_seed(pts, space, plan, [&](std::uint64_t, SeededEvaluator& ev, std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      for (std::size_t i = 0; i < prv.size(); ++i) out.max_abs[i] = std::max(out.max_abs[i], std::abs(ev(prv[i], pts[k])));
    }
  });
  out.holds = std::all_of(out.max_abs.begin(), out.max_abs.end(), [&](double m) { return m < tol; });
  return out;
}

std::string to_string(Transversality t) { return t == Transversality::Strong ? "Strong" : "ViolatedStrong"; }
std::string to_string(WeakStatus w) { return w == WeakStatus::WeakHolds ? "WeakHolds" : "WeakFails"; }
std::string to_string(DefectClass d) {
  switch (d) {
    case DefectClass::Invariant: return "Invariant";
    case DefectClass::PartiallyInvariant: return "PartiallyInvariant";
    case DefectClass::Generic: return "Generic";
  }
  return "";
}

}  // namespace symred

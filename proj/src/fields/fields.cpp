#include "symred/fields.hpp"

#include <algorithm>
#include <cmath>

#include "symred/linalg.hpp"

namespace symred {

void VectorField::validate(const VariableSpace& space) const {
  if (xi.size() != space.p() || phi.size() != space.q()) {
    throw AnalysisError("field '" + name + "' needs " + std::to_string(space.p()) + " xi and " +
                        std::to_string(space.q()) + " phi coefficients");
  }
  for (const auto* list : {&xi, &phi}) {
    for (const auto& e : *list) {
      if (contains_jets(e, 1)) throw AnalysisError("field '" + name + "' has a coefficient depending on derivatives");
    }
  }
}

std::vector<std::string> Algebra::generator_names() const {
  std::vector<std::string> out;
  for (const auto& f : fields) out.push_back(f.name);
  return out;
}

std::vector<Expr> ExpressionMatrix::flat() const {
  std::vector<Expr> out;
  for (const auto& r : entries) out.insert(out.end(), r.begin(), r.end());
  return out;
}

ExpressionMatrix ExpressionMatrix::map(const std::function<Expr(const Expr&)>& fn) const {
  ExpressionMatrix out = *this;
  for (auto& r : out.entries) {
    for (auto& e : r) e = fn(e);
  }
  return out;
}

std::pair<ExpressionMatrix, ExpressionMatrix> xi_matrices(const Algebra& a, const VariableSpace& space) {
  ExpressionMatrix x1, x2;
  x1.id = "Xi1";
  x2.id = "Xi2";
  x1.col_labels = space.independents();
  x2.col_labels = space.independents();
  for (const auto& d : space.dependents()) x2.col_labels.push_back(d);
  for (const auto& f : a.fields) {
    f.validate(space);
    x1.row_labels.push_back(f.name);
    x2.row_labels.push_back(f.name);
    x1.entries.push_back(f.xi);
    std::vector<Expr> row = f.xi;
    row.insert(row.end(), f.phi.begin(), f.phi.end());
    x2.entries.push_back(std::move(row));
  }
  return {x1, x2};
}

std::vector<Expr> evolutionary_form(const VectorField& v, const VariableSpace& space) {
  v.validate(space);
  std::vector<Expr> out;
  for (std::size_t a = 0; a < space.q(); ++a) {
    std::vector<Expr> terms{v.phi[a]};
    for (std::size_t i = 0; i < space.p(); ++i) {
      if (!v.xi[i].is_zero()) terms.push_back(-(v.xi[i] * space.du(a, i)));
    }
    out.push_back(Expr::sum(std::move(terms)));
  }
  return out;
}

ExpressionMatrix characteristic_matrix(const Algebra& a, const VariableSpace& space) {
  ExpressionMatrix q;
  q.id = "Q";
  q.col_labels = space.dependents();
  for (const auto& f : a.fields) {
    q.row_labels.push_back(f.name);
    q.entries.push_back(evolutionary_form(f, space));
  }
  return q;
}

namespace {

std::vector<Expr> components(const VectorField& v) {
  std::vector<Expr> c = v.xi;
  c.insert(c.end(), v.phi.begin(), v.phi.end());
  return c;
}

std::vector<PartialTarget> coordinates(const VariableSpace& space) {
  std::vector<PartialTarget> out;
  for (const auto& x : space.independents()) out.push_back(PartialTarget::variable(x));
  for (const auto& u : space.dependents()) out.push_back(PartialTarget::jet(u, std::vector<int>(space.p(), 0)));
  return out;
}

}  // namespace

VectorField lie_bracket(const VectorField& v, const VectorField& w, const VariableSpace& space) {
  v.validate(space);
  w.validate(space);
  const auto cv = components(v);
  const auto cw = components(w);
  const auto coords = coordinates(space);
  const std::size_t n = coords.size();
  std::vector<Expr> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Expr> terms;
    for (std::size_t j = 0; j < n; ++j) {
      if (!cv[j].is_zero()) terms.push_back(cv[j] * partial(cw[k], coords[j]));
      if (!cw[j].is_zero()) terms.push_back(-(cw[j] * partial(cv[k], coords[j])));
    }
    out[k] = Expr::sum(std::move(terms));
  }
  VectorField b;
  b.name = "[" + v.name + "," + w.name + "]";
  b.xi.assign(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(space.p()));
  b.phi.assign(out.begin() + static_cast<std::ptrdiff_t>(space.p()), out.end());
  return b;
}

VectorField combine(const Algebra& a, const std::vector<Rational>& coeffs, const std::string& name) {
  if (coeffs.size() != a.dim()) throw AnalysisError("combination length does not match algebra '" + a.name + "'");
  VectorField out;
  out.name = name;
  std::size_t p = a.fields.front().xi.size(), q = a.fields.front().phi.size();
  out.xi.assign(p, Expr(0));
  out.phi.assign(q, Expr(0));
  for (std::size_t k = 0; k < a.dim(); ++k) {
    if (coeffs[k].is_zero()) continue;
    for (std::size_t i = 0; i < p; ++i) out.xi[i] = out.xi[i] + Expr(coeffs[k]) * a.fields[k].xi[i];
    for (std::size_t i = 0; i < q; ++i) out.phi[i] = out.phi[i] + Expr(coeffs[k]) * a.fields[k].phi[i];
  }
  return out;
}

ClosureReport closure_check(const Algebra& a, const Algebra& within, const VariableSpace& space,
                            const SamplePlan& plan) {
  ClosureReport rep;
  rep.closed = true;
  std::vector<std::vector<Expr>> basis;
  for (const auto& f : within.fields) basis.push_back(components(f));
  const std::size_t ncomp = space.p() + space.q();
  for (std::size_t l = 0; l < a.dim(); ++l) {
    for (std::size_t r = l + 1; r < a.dim(); ++r) {
      BracketFit fit;
      fit.left = l;
      fit.right = r;
      auto bc = components(lie_bracket(a.fields[l], a.fields[r], space));
      bool zero = std::all_of(bc.begin(), bc.end(), [](const Expr& e) { return e.is_zero(); });
      bool opaque = std::any_of(bc.begin(), bc.end(), [](const Expr& e) { return !opaque_symbols(e).empty(); });
      if (zero) {
        fit.coefficients.assign(within.dim(), 0.0);
        fit.fitted = true;
        rep.brackets.push_back(fit);
        continue;
      }
      if (opaque) {
        fit.skipped = true;
        rep.infinite_family = true;
        rep.brackets.push_back(fit);
        continue;
      }
      std::vector<Expr> extra = bc;
      for (const auto& w : basis) extra.insert(extra.end(), w.begin(), w.end());
      bool ok = true;
      for (std::uint64_t seed : plan.seeds) {
        SamplePlan p1 = plan;
        p1.seeds = {seed};
        for (int attempt = 0; attempt < 2; ++attempt) {
          auto pts = sample_free_points(space, p1, 0, extra);
          SeededEvaluator ev(space, seed, p1.eval_options());
          ComplexMatrix am;
          std::vector<Complex> bv;
          for (const auto& pt : pts) {
            for (std::size_t c = 0; c < ncomp; ++c) {
              std::vector<Complex> row;
              for (const auto& w : basis) row.push_back(ev(w[c], pt));
              am.push_back(std::move(row));
              bv.push_back(ev(bc[c], pt));
            }
          }
          RealMatrix ar = realify_rows(am);
          std::vector<double> br;
          double scale = 1.0;
          for (const auto& v : bv) {
            br.push_back(v.real());
            br.push_back(v.imag());
            scale = std::max(scale, std::abs(v));
          }
          LeastSquares ls = least_squares(ar, br);
          if (ls.rank < static_cast<int>(within.dim()) && attempt == 0) {
            p1.count *= 2;
            continue;
          }
          if (ls.rank < static_cast<int>(within.dim())) rep.flagged = true;
          fit.coefficients = ls.x;
          fit.residual = std::max(fit.residual, ls.max_residual / scale);
          if (fit.residual >= 1e-8) ok = false;
          break;
        }
      }
      fit.fitted = ok;
      if (!ok) rep.closed = false;
      // snap near-integral structure constants for reporting
      for (auto& c : fit.coefficients) {
        if (std::abs(c - std::round(c)) < 1e-9) c = std::round(c);
        if (c == 0.0) c = 0.0;
      }
      rep.brackets.push_back(fit);
    }
  }
  if (!rep.closed) {
    rep.message = "a bracket leaves the span of '" + within.name + "'";
  } else if (rep.infinite_family) {
    rep.message = "brackets with arbitrary functions were not fitted";
  }
  return rep;
}

std::map<JetKey, Expr> prolong(const VectorField& v, const VariableSpace& space, int order) {
  if (order > space.max_order()) throw AnalysisError("prolongation order exceeds the space order");
  v.validate(space);
  std::map<JetKey, Expr> out;
  std::vector<std::vector<Expr>> dxi(space.p());  // dxi[i][j] = D_i xi_j
  for (std::size_t i = 0; i < space.p(); ++i) {
    for (std::size_t j = 0; j < space.p(); ++j) dxi[i].push_back(differentiate(v.xi[j], space.independents()[i]));
  }
  for (const auto& key : space.jet_keys(order)) {
    if (key.order() == 0) {
      out[key] = v.phi[key.dependent];
      continue;
    }
    JetKey parent = key;
    std::size_t i = 0;
    while (parent.multi[i] == 0) ++i;
    --parent.multi[i];
    std::vector<Expr> terms{differentiate(out.at(parent), space.independents()[i])};
    for (std::size_t j = 0; j < space.p(); ++j) {
      if (dxi[i][j].is_zero()) continue;
      JetKey shifted = parent;
      ++shifted.multi[j];
      terms.push_back(-(dxi[i][j] * space.jet(shifted)));
    }
    out[key] = Expr::sum(std::move(terms));
  }
  return out;
}

Expr apply_prolongation(const VectorField& v, const Expr& delta, const VariableSpace& space) {
  int order = 0;
  std::vector<JetKey> keys;
  for (const auto& id : jet_coordinates(delta)) {
    auto k = space.key_of(id);
    if (!k) continue;
    order = std::max(order, k->order());
    keys.push_back(*k);
  }
  auto pr = prolong(v, space, order);
  std::vector<Expr> terms;
  for (std::size_t i = 0; i < space.p(); ++i) {
    if (v.xi[i].is_zero()) continue;
    terms.push_back(v.xi[i] * partial(delta, PartialTarget::variable(space.independents()[i])));
  }
  for (const auto& k : keys) {
    const Expr& c = pr.at(k);
    if (c.is_zero()) continue;
    terms.push_back(c * partial(delta, PartialTarget::jet(space.dependents()[k.dependent], k.multi)));
  }
  return Expr::sum(std::move(terms));
}

}  // namespace symred

#include <algorithm>
#include <cmath>

#include "symred/linalg.hpp"
#include "symred/models.hpp"
#include "symred/rank.hpp"

namespace symred {

double ResidualReport::max() const {
  return max_abs.empty() ? 0.0 : *std::max_element(max_abs.begin(), max_abs.end());
}

double ConstraintCheck::constraint_residual() const {
  return constraint_max.empty() ? 0.0 : *std::max_element(constraint_max.begin(), constraint_max.end());
}

double ConstraintCheck::full_residual() const {
  return full_max.empty() ? 0.0 : *std::max_element(full_max.begin(), full_max.end());
}

namespace {

std::vector<std::string> labels_of(const SystemDecl& s) {
  std::vector<std::string> out;
  for (const auto& e : s.equations) out.push_back(e.label);
  return out;
}

template <typename Fn>
void for_each_point(const std::vector<JetPoint>& pts, const VariableSpace& space, const SamplePlan& plan, Fn&& fn) {
  std::size_t i = 0;
  while (i < pts.size()) {
    SeededEvaluator ev(space, pts[i].seed, plan.eval_options());
    std::uint64_t seed = pts[i].seed;
    for (; i < pts.size() && pts[i].seed == seed; ++i) fn(ev, pts[i]);
  }
}

}  // namespace

ResidualReport residual(const Workspace& ws_in, const std::string& system, const std::string& candidate,
                        const SamplePlan& plan) {
  Workspace ws = workspace_for_candidate(ws_in, candidate);
  const auto& sys = ws.system(system);
  ResidualReport rep;
  rep.system = system;
  rep.candidate = candidate;
  rep.labels = labels_of(sys);
  rep.max_abs = max_residuals(sys.residuals(), ws.candidate(candidate).candidate, ws.space, plan, &rep.points);
  return rep;
}

ResidualReport vnls_residual(const Workspace& ws, const std::string& candidate, const SamplePlan& plan) {
  SamplePlan p = plan;
  p.branch = Branch::Principal;
  return residual(ws, "vnse", candidate, p);
}

std::string to_string(OdeKind k) {
  switch (k) {
    case OdeKind::IF7General: return "IF7_general";
    case OdeKind::IF9K1: return "IF9_k1";
    case OdeKind::IFK2: return "IF_k2";
  }
  return "";
}

std::string to_string(ConstraintSet c) {
  switch (c) {
    case ConstraintSet::E83_E86: return "E83_E86";
    case ConstraintSet::IF12: return "IF12";
    case ConstraintSet::LNS: return "LNS";
  }
  return "";
}

std::optional<OdeKind> parse_ode_kind(const std::string& s) {
  for (auto k : {OdeKind::IF7General, OdeKind::IF9K1, OdeKind::IFK2}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::optional<ConstraintSet> parse_constraint_set(const std::string& s) {
  for (auto c : {ConstraintSet::E83_E86, ConstraintSet::IF12, ConstraintSet::LNS}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

OdeCheck reduced_ode_check(OdeKind kind, const std::map<std::string, Rational>& params, const SamplePlan& plan,
                           const std::optional<Expr>& w_override, Amplitude amplitude) {
  const std::string src = builtin_source("isentropic");
  bool k1 = kind == OdeKind::IF9K1;
  if (kind == OdeKind::IF7General) {
    auto it = params.find("k");
    if (it == params.end()) throw AnalysisError("IF7_general needs a value for k (-1 or -2)");
    if (it->second == Rational(-1)) {
      k1 = true;
    } else if (!(it->second == Rational(-2))) {
      throw AnalysisError("closed forms exist only for k = -1 and k = -2");
    }
  }
  std::string name = k1 ? "example3_k_minus1"
                        : (amplitude == Amplitude::Printed ? "example3_k_minus2" : "example3_k_minus2_if6");
  auto merged = parse_workspace(src).candidate(name).requires_;
  for (const auto& [p, v] : params) {
    if (p == "k" && !(merged.at("k") == v)) throw AnalysisError("candidate '" + name + "' is stated for another k");
    merged[p] = v;
  }
  Workspace ws = parse_workspace(src, merged);
  CandidateSolution c = ws.candidate(name).candidate;
  Rational k = ws.params.at("k").value;

  const Expr t = Expr::variable("t");
  const Expr z = Expr::variable("z");
  Expr w = w_override ? *w_override : substitute(c.values.at("u3"), {{"z", Expr(1)}});
  Expr amp = substitute(c.values.at("a"), {{"z", Expr(1)}});
  if (w_override) c.values["u3"] = z * w;
  Expr w1 = differentiate(w, "t");
  Expr w2 = differentiate(w1, "t");
  Expr kk(k);
  Expr ode = kind == OdeKind::IF9K1
                 ? w2 + 2 * w * w1 - (Expr(4) / t) * (w1 + w * w)
                 : w2 + 2 * (2 + 1 / kk) * w * w1 + 2 * (1 + 1 / kk) * w * w * w + (4 / (kk * t)) * (w1 + w * w);
  Expr relation = amp - Sqrt(-(w * w + w1) / kk);

  OdeCheck out;
  out.kind = kind;
  out.k = k;
  out.candidate = name;
  SamplePlan p = plan_for(c, plan);
  EvalOptions opts = p.eval_options();
  for (auto seed : p.seeds) {
    auto pts = sample_accepted({"t"}, p, seed, [&](const SamplePoint& sp) {
      Binding b;
      b.set("t", sp.coords.at("t"));
      out.ode_residual = std::max(out.ode_residual, std::abs(evaluate(ode, b, opts)));
      out.relation_residual = std::max(out.relation_residual, std::abs(evaluate(relation, b, opts)));
      return true;
    });
    out.points += pts.size();
  }
  std::size_t n = 0;
  auto fluid = max_residuals(ws.system("isentropic").residuals(), c, ws.space, p, &n);
  out.fluid_residual = *std::max_element(fluid.begin(), fluid.end());
  return out;
}

namespace {

struct Transfer {
  std::string full;
  std::string constraints;
  std::vector<std::vector<Expr>> m;  // rows: full equations, cols: constraints
};

Transfer transfer_for(ConstraintSet id, const Workspace& ws) {
  const Expr x = Expr::variable("x"), y = Expr::variable("y"), t = Expr::variable("t");
  switch (id) {
    case ConstraintSet::E83_E86: {
      Expr it2 = Pow(t, -2);
      return {"euler", "e83_e86", {{it2, 0, 0, 0}, {0, it2, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}};
    }
    case ConstraintSet::IF12: {
      auto alpha = ws.space.dependent_index("a");
      if (!alpha) throw AnalysisError("IF12 needs the isentropic workspace");
      Expr ka = Expr(ws.params.at("k").value) * ws.space.u(*alpha);
      return {"isentropic", "if12", {{ka, 0, 0, 0}, {0, ka, 0, 0}, {0, 0, 1, 0}, {x / t, y / t, 0, 1}}};
    }
    case ConstraintSet::LNS:
      return {"ns", "lns", {{0}, {0}, {1}, {0}}};
  }
  throw AnalysisError("unknown constraint set");
}

}  // namespace

ConstraintCheck derived_constraint_check(ConstraintSet id, const Workspace& ws_in, const std::string& candidate,
                                         const SamplePlan& plan, double tol) {
  Workspace ws = workspace_for_candidate(ws_in, candidate);
  Transfer tr = transfer_for(id, ws);
  if (!ws.systems.find(tr.full) || !ws.systems.find(tr.constraints)) {
    throw AnalysisError(to_string(id) + " needs systems '" + tr.full + "' and '" + tr.constraints + "'");
  }
  const auto& full = ws.system(tr.full);
  const auto& cons = ws.system(tr.constraints);
  auto r = full.residuals();
  auto cs = cons.residuals();
  if (tr.m.size() != r.size() || tr.m.front().size() != cs.size()) throw AnalysisError("transfer matrix shape mismatch");
  const auto& c = ws.candidate(candidate).candidate;

  std::vector<Expr> all = r;
  all.insert(all.end(), cs.begin(), cs.end());
  for (const auto& row : tr.m) all.insert(all.end(), row.begin(), row.end());
  int order = jet_order(all, ws.space);
  auto pts = sample_points(c, plan, order, ws.space, all);

  ConstraintCheck out;
  out.id = to_string(id);
  out.candidate = candidate;
  out.full_labels = labels_of(full);
  out.constraint_labels = labels_of(cons);
  out.full_max.assign(r.size(), 0.0);
  out.constraint_max.assign(cs.size(), 0.0);
  out.points = pts.size();
  out.transfer_rank = static_cast<int>(cs.size());
  for_each_point(pts, ws.space, plan, [&](SeededEvaluator& ev, const JetPoint& pt) {
    std::vector<Complex> cv;
    for (std::size_t j = 0; j < cs.size(); ++j) {
      cv.push_back(ev(cs[j], pt));
      out.constraint_max[j] = std::max(out.constraint_max[j], std::abs(cv.back()));
    }
    ComplexMatrix m(r.size(), std::vector<Complex>(cs.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
      Complex rv = ev(r[i], pt);
      out.full_max[i] = std::max(out.full_max[i], std::abs(rv));
      Complex mc = 0;
      for (std::size_t j = 0; j < cs.size(); ++j) {
        m[i][j] = ev(tr.m[i][j], pt);
        mc += m[i][j] * cv[j];
      }
      double scale = std::max({1.0, std::abs(rv), std::abs(mc)});
      out.transfer_max = std::max(out.transfer_max, std::abs(rv - mc) / scale);
    }
    out.transfer_rank = std::min(out.transfer_rank, numeric_rank(m));
  });
  if (!(out.transfer_max < tol)) {
    throw AnalysisError("candidate '" + candidate + "' lies outside the class of " + out.id +
                        " (transfer mismatch " + std::to_string(out.transfer_max) + ")");
  }
  out.equivalent = out.transfer_rank == static_cast<int>(cs.size());
  return out;
}

double finite_difference(const Expr& e, const std::vector<std::string>& vars, const std::vector<double>& at,
                         const std::vector<int>& multi, double h, const EvalOptions& opts) {
  auto it = std::find_if(multi.begin(), multi.end(), [](int m) { return m > 0; });
  if (it == multi.end()) {
    Binding b;
    for (std::size_t i = 0; i < vars.size(); ++i) b.set(vars[i], at[i]);
    return evaluate(e, b, opts).real();
  }
  auto i = static_cast<std::size_t>(it - multi.begin());
  auto lower = multi;
  --lower[i];
  auto plus = at, minus = at;
  double step = h * std::max(1.0, std::abs(at[i]));
  plus[i] += step;
  minus[i] -= step;
  return (finite_difference(e, vars, plus, lower, h, opts) - finite_difference(e, vars, minus, lower, h, opts)) /
         (2 * step);
}

DiscrepancyReport discrepancy_report(const Workspace& ws_in, const std::string& system, const std::string& candidate,
                                     const SamplePlan& plan, double tol) {
  Workspace ws = workspace_for_candidate(ws_in, candidate);
  const auto& sys = ws.system(system);
  const auto& c = ws.candidate(candidate).candidate;
  const auto& space = ws.space;
  auto r = sys.residuals();
  int order = jet_order(r, space);
  auto pts = sample_points(c, plan, order, space, r);

  DiscrepancyReport out;
  out.system = system;
  out.candidate = candidate;
  out.tol = tol;
  out.labels = labels_of(sys);
  out.max_abs.assign(r.size(), 0.0);
  std::vector<std::size_t> worst(r.size(), 0);
  std::size_t idx = 0;
  for_each_point(pts, space, plan, [&](SeededEvaluator& ev, const JetPoint& pt) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      double v = std::abs(ev(r[i], pt));
      if (v > out.max_abs[i]) {
        out.max_abs[i] = v;
        worst[i] = idx;
      }
    }
    ++idx;
  });
  auto failing = std::find_if(out.max_abs.begin(), out.max_abs.end(), [&](double m) { return !(m < tol); });
  out.passes = failing == out.max_abs.end();
  if (out.passes) return out;

  auto eq = static_cast<std::size_t>(failing - out.max_abs.begin());
  out.equation = out.labels[eq];
  const JetPoint& pt = pts[worst[eq]];
  out.seed = pt.seed;
  for (std::size_t i = 0; i < space.p(); ++i) out.point.emplace_back(space.independents()[i], pt.x[i]);

  SeededEvaluator ev(space, pt.seed, plan.eval_options());
  EvalOptions opts = plan.eval_options();
  Binding fd = pt.binding(space);
  fd.jets.clear();
  for (const auto& id : jet_coordinates(r[eq])) {
    auto key = space.key_of(id);
    if (!key) continue;
    const Expr& value = ev.instantiated(c.values.at(space.dependents()[key->dependent]));
    double h = key->order() <= 1 ? 1e-6 : 1e-4;
    fd.jets[id] = finite_difference(value, space.independents(), pt.x, key->multi, h, opts);
  }
  const Expr& lhs = r[eq];
  Complex sym_total = ev(lhs, pt);
  out.symbolic_residual = std::abs(sym_total);
  out.fd_residual = std::abs(evaluate(lhs, fd, opts));
  std::vector<Expr> terms = lhs.kind() == NodeKind::Sum ? lhs.children() : std::vector<Expr>{lhs};
  double best = -1;
  for (const auto& term : terms) {
    Complex sv = ev(term, pt);
    out.terms.push_back({to_string(term), std::abs(sv), std::abs(evaluate(term, fd, opts))});
    double left = std::abs(sym_total - sv);
    if (best < 0 || left < best) {
      best = left;
      out.dominant_term = to_string(term);
    }
  }
  return out;
}

}  // namespace symred

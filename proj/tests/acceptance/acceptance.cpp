// Acceptance checks: one line per criterion, "PASS" or "FAIL" followed by the
// measured values. Exit status is 0 when every selected criterion passes.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "oracles.hpp"
#include "symred/models.hpp"
#include "symred/rank.hpp"
#include "symred/report.hpp"

using namespace symred;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Settings {
  std::string manifest;
  std::string artifacts;
};

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << v;
  return os.str();
}

struct Model {
  Workspace ws;
  SamplePlan plan;
  explicit Model(const char* id) : ws(builtin(id).workspace), plan(default_plan(ws)) {}
  const Algebra& alg(const std::string& n) const { return ws.algebra(n).algebra; }
  const CandidateSolution& cand(const std::string& n) const { return ws.candidate(n).candidate; }
};

Outcome rank_reproduction(const Settings&) {
  Model ns("navier_stokes");
  auto [x1, x2] = xi_matrices(ns.alg("rot3"), ns.ws.space);
  auto r1 = generic_rank(x1, ns.ws.space, ns.plan);
  auto r2 = generic_rank(x2, ns.ws.space, ns.plan);
  bool every = r1.per_seed.size() == 3 && r2.per_seed.size() == 3;
  for (const auto& s : r1.per_seed) every = every && *std::max_element(s.ranks.begin(), s.ranks.end()) == 2;
  for (const auto& s : r2.per_seed) every = every && *std::max_element(s.ranks.begin(), s.ranks.end()) == 3;
  return {r1.generic_rank == 2 && r2.generic_rank == 3 && every && !r1.non_generic && !r2.non_generic,
          "rank Ξ1=" + std::to_string(r1.generic_rank) + ", rank Ξ2=" + std::to_string(r2.generic_rank) + " on " +
              std::to_string(r1.per_seed.size()) + " seeds"};
}

Outcome weak_class(const Settings&) {
  Model ns("navier_stokes");
  auto wc = weak_check_candidate(ns.alg("rot3"), ns.cand("Sl1"), ns.ws.space, ns.plan, 1e-10);
  auto d = defect(ns.alg("rot3"), ns.cand("fp"), ns.ws.space, ns.plan);
  auto r = residual(ns.ws, "ns", "sol", ns.plan);
  auto lap = residual(ns.ws, "laplacian", "sol", ns.plan);
  bool pass = wc.holds && wc.max_abs < 1e-10 && d.delta == 0 && r.max() < 1e-8 && lap.max() < 1e-8 &&
              r.points >= 36 && lap.points >= 36;
  return {pass, "max minor on Sl1 " + sci(wc.max_abs) + ", rank Q on fp " + std::to_string(d.delta) +
                    ", sol residual " + sci(r.max()) + ", max laplacian " + sci(lap.max()) + " at " +
                    std::to_string(lap.points) + " points"};
}

Outcome invariant_solution(const Settings&) {
  auto base = builtin("navier_stokes").workspace;
  double worst = 0;
  for (std::uint64_t draw : {1u, 2u, 3u}) {
    auto ws = builtin("navier_stokes", draw_params(base, draw, {"k", "c1", "c2"})).workspace;
    worst = std::max(worst, residual(ws, "ns", "S25S26", default_plan(ws)).max());
  }
  Model ns("navier_stokes");
  bool inv = invariance_check(ns.alg("g2"), ns.cand("S25S26"), ns.ws.space, ns.plan);
  return {worst < 1e-8 && inv,
          "S25S26 residual " + sci(worst) + " over 3 draws, invariant under g2: " + (inv ? "yes" : "no")};
}

std::string ode_detail(const OdeCheck& c) {
  return "ode " + sci(c.ode_residual) + ", amplitude relation " + sci(c.relation_residual) + ", fluid " +
         sci(c.fluid_residual);
}

Outcome painleve_k2(const Settings&) {
  Model is("isentropic");
  auto printed = reduced_ode_check(OdeKind::IFK2, {}, is.plan);
  auto derived = reduced_ode_check(OdeKind::IFK2, {}, is.plan, std::nullopt, Amplitude::FromRelation);
  return {printed.passed(1e-7),
          "printed closed forms: " + ode_detail(printed) + "; amplitude taken from the relation instead: " +
              ode_detail(derived)};
}

Outcome painleve_k1(const Settings&) {
  Model is("isentropic");
  auto c = reduced_ode_check(OdeKind::IF9K1, {}, is.plan);
  auto rec = testing::bessel_recurrence(1e-9);
  return {c.ode_residual < 1e-6 && c.fluid_residual < 1e-6 && rec.ok(),
          "Bessel quotient " + ode_detail(c) + "; recurrence worst " + sci(rec.worst) + " over " +
              std::to_string(rec.checked) + " points"};
}

Outcome schroedinger(const Settings& s) {
  Model v("vnls3");
  double r = vnls_residual(v.ws, "example4", v.plan).max();
  std::ifstream in(s.manifest);
  if (!in) return {false, "cannot read manifest " + s.manifest};
  auto m = Json::parse(in)["measured"]["example4_defect"];
  int recorded = m["delta"];
  std::vector<int> deltas;
  for (const auto& seeds : m["seeds"]) {
    SamplePlan p = v.plan;
    p.seeds = seeds.get<std::vector<std::uint64_t>>();
    deltas.push_back(defect(v.alg(m["algebra"]), v.cand(m["candidate"]), v.ws.space, p).delta);
  }
  bool stable = std::all_of(deltas.begin(), deltas.end(), [&](int d) { return d == recorded; });
  double r0 = vnls_residual(v.ws, "example4_t0_limit", v.plan).max();
  auto d0 = defect(v.alg("rotation"), v.cand("example4_t0_limit"), v.ws.space, v.plan);
  bool inv = invariance_check(v.alg("rotation"), v.cand("example4_t0_limit"), v.ws.space, v.plan);
  std::string ds;
  for (int d : deltas) ds += (ds.empty() ? "" : ",") + std::to_string(d);
  return {r < 1e-8 && stable && r0 < 1e-8 && inv && d0.delta == 0,
          "residual " + sci(r) + ", δ under subSE " + ds + " (recorded " + std::to_string(recorded) +
              "), t0=0 residual " + sci(r0) + " with δ=" + std::to_string(d0.delta) + " under rotation"};
}

Outcome kernel_reduction(const Settings&) {
  Model is("isentropic");
  auto d = defect(is.alg("gal_p3"), is.cand("IF11"), is.ws.space, is.plan);
  const auto& full = is.ws.algebra("full12");
  auto k = constant_kernel_generators(full.algebra, is.cand("IF11"), is.ws.space, is.plan, full.combinations);
  bool match = k.matched == std::optional<std::string>("K3_t0P3") && k.match_distance < 1e-8;
  return {d.delta == 1 && k.pointwise_kernel_dim == 8 && k.constant_kernel.size() == 1 && match,
          "δ=" + std::to_string(d.delta) + ", pointwise kernel " + std::to_string(k.pointwise_kernel_dim) +
              ", constant kernel " + std::to_string(k.constant_kernel.size()) + " spanning " +
              k.matched.value_or("nothing declared") + " (distance " + sci(k.match_distance) + ")"};
}

Outcome laplace_translations(const Settings&) {
  Model le("laplace_fo");
  auto t = classify_transversality(le.alg("trans2"), le.ws.space, le.plan);
  auto sle = defect(le.alg("trans2"), le.cand("SLE"), le.ws.space, le.plan);
  auto c = defect(le.alg("trans2"), le.cand("constant"), le.ws.space, le.plan);
  return {t.status == Transversality::Strong && sle.delta == 1 && c.delta == 0,
          to_string(t.status) + ", δ(SLE)=" + std::to_string(sle.delta) + ", δ(constant)=" + std::to_string(c.delta)};
}

Outcome galilei(const Settings& s) {
  Model eu("euler");
  auto t = classify_transversality(eu.alg("gal3"), eu.ws.space, eu.plan);
  auto d = defect(eu.alg("gal3"), eu.cand("E1E2"), eu.ws.space, eu.plan);
  bool sub = t.status == Transversality::Strong && d.delta == 2;
  std::string head = to_string(t.status) + ", δ(E1E2)=" + std::to_string(d.delta);
  auto rep = discrepancy_report(eu.ws, "euler", "SE", eu.plan, 1e-6);
  double worst = *std::max_element(rep.max_abs.begin(), rep.max_abs.end());
  if (rep.passes) return {sub, head + ", SE residual " + sci(worst)};
  std::filesystem::create_directories(s.artifacts);
  auto path = std::filesystem::path(s.artifacts) / "se_discrepancy.json";
  std::ofstream(path) << dump(to_json(rep));
  bool fd_agrees = std::abs(rep.fd_residual - rep.symbolic_residual) <= 1e-4 * std::abs(rep.symbolic_residual);
  bool pinpointed = rep.equation.has_value() && !rep.dominant_term.empty() && fd_agrees;
  return {sub && pinpointed, head + ", SE residual " + sci(worst) + " fails; discrepancy report " + path.string() +
                                 ": first failing " + rep.equation.value_or("?") + ", term " + rep.dominant_term +
                                 ", symbolic " + sci(rep.symbolic_residual) + " vs finite difference " +
                                 sci(rep.fd_residual)};
}

Outcome parametrizing(const Settings&) {
  Model eu("euler"), ns("navier_stokes");
  auto e = derived_constraint_check(ConstraintSet::E83_E86, eu.ws, "example8_euler", eu.plan);
  auto n = derived_constraint_check(ConstraintSet::LNS, ns.ws, "example8_ns", ns.plan);
  bool pass = e.constraint_residual() < 1e-8 && e.full_residual() < 1e-8 && n.constraint_residual() < 1e-8 &&
              n.full_residual() < 1e-8;
  return {pass, "Euler constraints " + sci(e.constraint_residual()) + ", full " + sci(e.full_residual()) +
                    "; linear parametrizing equation " + sci(n.constraint_residual()) + ", full Navier-Stokes " +
                    sci(n.full_residual())};
}

Outcome isentropic_constraints(const Settings&) {
  Model is("isentropic");
  SamplePlan p = is.plan;
  p.count = 20;
  auto cls = derived_constraint_check(ConstraintSet::IF12, is.ws, "IF4_class", p, 1e-9);
  auto sol = derived_constraint_check(ConstraintSet::IF12, is.ws, "IF11", p, 1e-9);
  bool pass = cls.equivalent && cls.transfer_max < 1e-9 && cls.points >= 20 && sol.constraint_residual() < 1e-8;
  return {pass, "class transfer mismatch " + sci(cls.transfer_max) + " at " + std::to_string(cls.points) +
                    " points, IF11 constraint residual " + sci(sol.constraint_residual())};
}

Outcome properties(const Settings&) {
  std::vector<testing::SuiteResult> suites{
      testing::derivative_vs_fd(1000, 2024), testing::rank_vs_minor_oracle(), testing::closure_library(),
      testing::normalize_idempotence(1000, 77), testing::byte_identical_json()};
  bool pass = true;
  std::string detail;
  for (const auto& s : suites) {
    pass = pass && s.ok();
    detail += (detail.empty() ? "" : "; ") + s.summary();
  }
  return {pass, detail};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome(const Settings&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::vector<int> only;
  Settings s;
  s.manifest = SYMRED_MANIFEST;
  s.artifacts = "acceptance_artifacts";
  app.add_option("--criterion", only, "run only these criteria");
  app.add_option("--manifest", s.manifest, "regression manifest");
  app.add_option("--artifacts", s.artifacts, "directory for generated reports");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "rank reproduction", rank_reproduction},
      {2, "weak class and radial solution", weak_class},
      {3, "invariant Navier-Stokes solution", invariant_solution},
      {4, "reduced ODE chain, k=-2", painleve_k2},
      {5, "reduced ODE chain, k=-1", painleve_k1},
      {6, "Schroedinger solution and defect", schroedinger},
      {7, "kernel and reducibility", kernel_reduction},
      {8, "translations of the Laplace system", laplace_translations},
      {9, "Galilei algebra and Euler solution", galilei},
      {10, "parametrizing constraint systems", parametrizing},
      {11, "isentropic constraint system", isentropic_constraints},
      {12, "property suites", properties},
  };
  bool all = true;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run(s);
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << std::setw(2) << c.id << " " << c.title << ": " << o.detail
              << " [" << std::fixed << std::setprecision(1) << secs << " s]" << std::defaultfloat << "\n";
  }
  return all ? 0 : 1;
}

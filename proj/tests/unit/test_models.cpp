#include "doctest.h"

#include <set>

#include "symred/models.hpp"
#include "symred/rank.hpp"

using namespace symred;

namespace {

double solution_residual(const Workspace& ws, const std::string& cand, const SamplePlan& plan) {
  if (ws.systems.find("vnse")) return vnls_residual(ws, cand, plan).max();
  return residual(ws, ws.systems.begin()->first, cand, plan).max();
}

}  // namespace

TEST_CASE("builtin registry") {
  auto ids = builtin_ids();
  CHECK(ids.size() == 5);
  for (const auto& id : ids) {
    auto m = builtin(id);
    CHECK(m.id == id);
    CHECK_FALSE(m.title.empty());
    CHECK_FALSE(m.workspace.candidates.empty());
  }
  CHECK_THROWS_AS(builtin("heat"), AnalysisError);
  CHECK_THROWS_AS(load_workspace("builtin:heat"), AnalysisError);
  CHECK(load_workspace("builtin:euler").space.p() == 4);
}

TEST_CASE("claimed solutions satisfy their systems") {
  // the SE family does not satisfy the Euler momentum equations
  const std::set<std::string> known_failures{"SE"};
  for (const auto& id : builtin_ids()) {
    auto ws = builtin(id).workspace;
    auto plan = default_plan(ws);
    for (const auto& [name, decl] : ws.candidates) {
      if (!decl.solution) continue;
      CAPTURE(name);
      double r = solution_residual(ws, name, plan);
      if (known_failures.contains(name)) {
        CHECK(r > 1.0);
      } else {
        CHECK(r < 1e-8);
      }
    }
  }
}

TEST_CASE("solutions hold across parameter draws") {
  for (const char* id : {"navier_stokes", "euler", "isentropic", "laplace_fo"}) {
    auto base = builtin(id).workspace;
    for (std::uint64_t seed : {11u, 12u, 13u}) {
      auto ws = builtin(id, draw_params(base, seed)).workspace;
      auto plan = default_plan(ws);
      for (const auto& [name, decl] : ws.candidates) {
        if (!decl.solution || name == "SE" || !decl.requires_.empty()) continue;
        CAPTURE(id);
        CAPTURE(name);
        CHECK(solution_residual(ws, name, plan) < 1e-8);
      }
    }
  }
}

TEST_CASE("parameter draws stay on grid inside range") {
  auto ws = builtin("navier_stokes").workspace;
  auto a = draw_params(ws, 5);
  CHECK(a == draw_params(ws, 5));
  for (const auto& [name, v] : a) {
    const auto& range = ws.params.at(name).range;
    REQUIRE(range.has_value());
    CHECK(range->first <= v);
    CHECK(v <= range->second);
    CHECK((v * Rational(64)).is_integer());
    CHECK_FALSE(v.is_zero());
  }
  auto only = draw_params(ws, 5, {"nu"});
  CHECK(only.size() == 1);
}

TEST_CASE("non-solution and shear candidates") {
  auto ws = builtin("navier_stokes").workspace;
  auto plan = default_plan(ws);
  auto shear = residual(ws, "ns", "shear", plan);
  CHECK(shear.max() > 0.5);
  CHECK(shear.labels.size() == 4);
  CHECK(shear.points >= plan.min_accepted);
}

TEST_CASE("reduced ODE chain") {
  auto plan = default_plan(builtin("isentropic").workspace);
  auto k1 = reduced_ode_check(OdeKind::IF9K1, {}, plan);
  CHECK(k1.passed(1e-8));
  auto g1 = reduced_ode_check(OdeKind::IF7General, {{"k", Rational(-1)}}, plan);
  CHECK(g1.passed(1e-8));

  auto printed = reduced_ode_check(OdeKind::IFK2, {}, plan);
  CHECK(printed.ode_residual < 1e-8);
  CHECK(printed.relation_residual > 0.1);
  CHECK(printed.fluid_residual > 1.0);
  CHECK(reduced_ode_check(OdeKind::IFK2, {}, plan, std::nullopt, Amplitude::FromRelation).passed(1e-8));

  auto fault = reduced_ode_check(OdeKind::IF9K1, {}, plan, parse_expression("5*t^3"));
  CHECK(fault.ode_residual > 1.0);
}

TEST_CASE("constraint systems transfer to the full system") {
  auto eu = builtin("euler").workspace;
  auto ns = builtin("navier_stokes").workspace;
  auto is = builtin("isentropic").workspace;
  struct Row {
    ConstraintSet id;
    const Workspace* ws;
    const char* cand;
  };
  for (const Row& r : {Row{ConstraintSet::E83_E86, &eu, "example8_euler"}, Row{ConstraintSet::E83_E86, &eu, "E81_class"},
                       Row{ConstraintSet::LNS, &ns, "example8_ns"}, Row{ConstraintSet::LNS, &ns, "example8_ns_class"},
                       Row{ConstraintSet::IF12, &is, "IF4_class"}, Row{ConstraintSet::IF12, &is, "IF11"}}) {
    CAPTURE(r.cand);
    auto c = derived_constraint_check(r.id, *r.ws, r.cand, default_plan(*r.ws));
    CHECK(c.equivalent);
    CHECK(c.transfer_max < 1e-9);
    CHECK(c.transfer_rank == static_cast<int>(c.constraint_labels.size()));
  }
  auto c = derived_constraint_check(ConstraintSet::IF12, is, "IF11", default_plan(is));
  CHECK(c.constraint_residual() < 1e-8);
  CHECK(c.full_residual() < 1e-8);

  auto outside = parse_workspace(builtin_source("isentropic") +
                                 "\ncandidate swirl { u1 = y; u2 = -x; u3 = 0; a = 1; }\n");
  CHECK_THROWS_AS(derived_constraint_check(ConstraintSet::IF12, outside, "swirl", default_plan(outside)),
                  AnalysisError);
}

TEST_CASE("enum names round trip") {
  for (auto k : {OdeKind::IF7General, OdeKind::IF9K1, OdeKind::IFK2}) CHECK(parse_ode_kind(to_string(k)) == k);
  for (auto c : {ConstraintSet::E83_E86, ConstraintSet::IF12, ConstraintSet::LNS}) {
    CHECK(parse_constraint_set(to_string(c)) == c);
  }
  CHECK_FALSE(parse_ode_kind("nope").has_value());
}

TEST_CASE("schroedinger candidates") {
  auto ws = builtin("vnls3").workspace;
  auto plan = default_plan(ws);
  CHECK(vnls_residual(ws, "example4", plan).max() < 1e-8);
  CHECK(vnls_residual(ws, "zero", plan).max() == 0.0);
  auto d = defect(ws.algebra("subSE").algebra, ws.candidate("example4").candidate, ws.space, plan);
  CHECK(d.delta == 1);
}

TEST_CASE("export round trip for every builtin") {
  for (const auto& id : builtin_ids()) {
    CAPTURE(id);
    auto ws = builtin(id).workspace;
    auto text = export_workspace(ws);
    auto again = parse_workspace(text);
    CHECK(export_workspace(again) == text);
    CHECK(again.candidates.size() == ws.candidates.size());
    CHECK(again.algebras.size() == ws.algebras.size());
  }
}

TEST_CASE("discrepancy report") {
  auto ws = builtin("euler").workspace;
  auto plan = default_plan(ws);
  auto rep = discrepancy_report(ws, "euler", "SE", plan, 1e-8);
  CHECK_FALSE(rep.passes);
  REQUIRE(rep.equation.has_value());
  CHECK(*rep.equation == "eul1x");
  CHECK(rep.symbolic_residual > 1.0);
  CHECK(std::abs(rep.fd_residual - rep.symbolic_residual) < 1e-3 * rep.symbolic_residual);
  CHECK_FALSE(rep.terms.empty());
  CHECK_FALSE(rep.dominant_term.empty());

  auto ok = discrepancy_report(ws, "euler", "example8_euler", plan, 1e-8);
  CHECK(ok.passes);
  CHECK_FALSE(ok.equation.has_value());
}

TEST_CASE("finite differences of instantiated expressions") {
  Expr e = parse_expression("sin(x)*y^2");
  EvalOptions opts;
  double d = finite_difference(e, {"x", "y"}, {0.3, 1.5}, {1, 1}, 1e-4, opts);
  CHECK(d == doctest::Approx(std::cos(0.3) * 3.0).epsilon(1e-6));
}

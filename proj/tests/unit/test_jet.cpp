#include "doctest.h"

#include <cmath>

#include "symred/jet.hpp"
#include "symred/models.hpp"

using namespace symred;

TEST_CASE("make_space registers jet coordinates") {
  auto ns = make_space({"x", "y", "z", "t"}, {"u1", "u2", "u3", "p"}, 2);
  CHECK(ns.p() == 4);
  CHECK(ns.q() == 4);
  CHECK(ns.jet_name(JetKey{0, {1, 0, 0, 0}}) == "d(u1,x)");
  CHECK(ns.jet_name(JetKey{3, {0, 1, 0, 1}}) == "d(p,y,t)");
  CHECK(ns.jet_keys(2).size() == 4 * 15);
  auto le = make_space({"x", "y"}, {"u", "v", "w"}, 1);
  CHECK(le.p() == 2);
  CHECK(le.q() == 3);
  CHECK_THROWS(make_space({"x", "y"}, {"x"}, 1));
  CHECK_THROWS(make_space({"x"}, {"u"}, 0));
  CHECK_THROWS(make_space({"d"}, {"u"}, 1));
}

TEST_CASE("substitute_candidate differentiates the ansatz") {
  auto space = make_space({"x", "t"}, {"u1"}, 1);
  CandidateSolution c{"c", {{"u1", parse_expression("2*x/t")}}, {}, {}};
  Expr e = substitute_candidate(parse_expression("d(u1,t)", {space.dependent_symbol(0)}), c, space);
  CHECK(e == parse_expression("-2*x/t^2"));
  CandidateSolution missing{"m", {}, {}, {}};
  CHECK_THROWS_AS(substitute_candidate(space.u(0), missing, space), AnalysisError);
}

TEST_CASE("radial class annihilates the rotation characteristic") {
  auto ws = builtin("navier_stokes").workspace;
  const auto& fp = ws.candidate("fp").candidate;
  const auto& sl1 = ws.candidate("Sl1").candidate;
  // L3 characteristic components for u1 and p
  Expr q_u1 = parse_expression("u2 - (y*d(u1,x) - x*d(u1,y))", ws.space.parse_context());
  Expr q_p = parse_expression("-(y*d(p,x) - x*d(p,y))", ws.space.parse_context());
  SamplePlan plan;
  CHECK(numeric_equiv(substitute_candidate(q_u1, fp, ws.space), Expr(0), plan));
  CHECK(numeric_equiv(substitute_candidate(q_p, fp, ws.space), Expr(0), plan));
  CHECK_FALSE(numeric_equiv(substitute_candidate(q_p, sl1, ws.space), Expr(0), plan));
}

TEST_CASE("sample points respect loci and are deterministic") {
  auto ws = builtin("navier_stokes").workspace;
  SamplePlan plan;
  const auto& sol = ws.candidate("sol").candidate;
  auto pts = sample_points(sol, plan, 1, ws.space);
  CHECK(pts.size() == 60);
  for (const auto& pt : pts) {
    double r = std::sqrt(pt.x[0] * pt.x[0] + pt.x[1] * pt.x[1] + pt.x[2] * pt.x[2]);
    CHECK(r > plan.eps_sing);
  }
  auto again = sample_points(sol, plan, 1, ws.space);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(pts[i].x == again[i].x);
    CHECK(jet_point_json(pts[i], ws.space) == jet_point_json(again[i], ws.space));
  }

  CandidateSolution cst{"const", {{"u1", Expr(1)}, {"u2", Expr(2)}, {"u3", Expr(3)}, {"p", Expr(4)}}, {}, {}};
  for (const auto& pt : sample_points(cst, plan, 2, ws.space)) {
    for (const auto& [id, v] : pt.jets) {
      int order = 0;
      for (int m : id.second) order += m;
      if (order > 0) CHECK(std::abs(v) == 0.0);
    }
  }
}

TEST_CASE("candidate boxes restrict sampling") {
  auto ws = builtin("navier_stokes").workspace;
  for (const auto& pt : sample_points(ws.candidate("S25S26").candidate, SamplePlan{}, 1, ws.space)) {
    CHECK(pt.x[3] >= 0.5);
    CHECK(pt.x[3] <= 2.0);
  }
  CandidateSolution bad{"bad", {{"u1", Expr(1)}, {"u2", Expr(1)}, {"u3", Expr(1)}, {"p", Expr(1)}},
                        {parse_expression("x - x")}, {}};
  CHECK_THROWS_AS(sample_points(bad, SamplePlan{}, 1, ws.space), SamplingStarvation);
}

TEST_CASE("jet point JSON has a documented field order") {
  auto space = make_space({"x"}, {"u"}, 1);
  CandidateSolution c{"sq", {{"u", parse_expression("x^2")}}, {}, {}};
  SamplePlan plan;
  plan.seeds = {9};
  auto pts = sample_points(c, plan, 1, space);
  std::string j = jet_point_json(pts.front(), space);
  CHECK(j.find("{\"candidate\":\"sq\",\"seed\":9,\"index\":") == 0);
  CHECK(j.find("\"jets\":[[\"u\",") != std::string::npos);
  CHECK(j.find("[\"d(u,x)\",") != std::string::npos);
}

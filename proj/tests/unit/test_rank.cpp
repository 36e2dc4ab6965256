#include "doctest.h"

#include "symred/models.hpp"
#include "symred/rank.hpp"

using namespace symred;

namespace {

struct Fixture {
  Workspace ws;
  SamplePlan plan;
  explicit Fixture(const char* id) : ws(builtin(id).workspace), plan(default_plan(ws)) {}
  const Algebra& alg(const char* n) const { return ws.algebra(n).algebra; }
  const CandidateSolution& cand(const char* n) const { return ws.candidate(n).candidate; }
};

}  // namespace

TEST_CASE("generic ranks") {
  Fixture ns("navier_stokes");
  auto [x1, x2] = xi_matrices(ns.alg("rot3"), ns.ws.space);
  auto r1 = generic_rank(x1, ns.ws.space, ns.plan);
  auto r2 = generic_rank(x2, ns.ws.space, ns.plan);
  CHECK(r1.generic_rank == 2);
  CHECK(r2.generic_rank == 3);
  CHECK(r1.per_seed.size() == 3);
  CHECK_FALSE(r1.non_generic);

  ExpressionMatrix zero{"Z", {"a", "b"}, {"c", "d", "e"}, {{0, 0, 0}, {0, 0, 0}}};
  CHECK(generic_rank(zero, ns.ws.space, ns.plan).generic_rank == 0);

  Fixture is("isentropic");
  auto [i1, i2] = xi_matrices(is.alg("if3"), is.ws.space);
  CHECK(generic_rank(i1, is.ws.space, is.plan).generic_rank == 3);
  CHECK(generic_rank(i2, is.ws.space, is.plan).generic_rank == 4);
}

TEST_CASE("transversality classification") {
  Fixture eu("euler");
  CHECK(classify_transversality(eu.alg("gal3"), eu.ws.space, eu.plan).status == Transversality::Strong);

  Fixture ns("navier_stokes");
  auto rot = classify_transversality(ns.alg("rot3"), ns.ws.space, ns.plan, &ns.cand("Sl1"));
  CHECK(rot.status == Transversality::ViolatedStrong);
  CHECK(rot.weak == WeakStatus::WeakHolds);

  Fixture is("isentropic");
  for (const char* c : {"IF11", "IF4_class", "IF5_class"}) {
    auto rep = classify_transversality(is.alg("gal_p3"), is.ws.space, is.plan, &is.cand(c));
    CHECK(rep.status == Transversality::ViolatedStrong);
    CHECK(rep.weak == WeakStatus::WeakFails);
  }
}

TEST_CASE("weak minors") {
  Fixture ns("navier_stokes");
  auto rep = weak_minors(ns.alg("rot3"), ns.ws.space, ns.plan);
  CHECK(rep.rho == 2);
  CHECK(rep.size == 3);
  Expr target = parse_expression("z*(u2*z - u3*y)", ns.ws.context());
  bool found = false;
  for (const auto& m : rep.minors) {
    found = found || numeric_equiv(m, target, ns.plan) || numeric_equiv(m, -target, ns.plan);
  }
  CHECK(found);
  CHECK(weak_check_candidate(ns.alg("rot3"), ns.cand("Sl1"), ns.ws.space, ns.plan).holds);
  CandidateSolution uniform{"uniform", {{"u1", Expr(1)}, {"u2", Expr(0)}, {"u3", Expr(0)}, {"p", Expr(0)}}, {}, {}};
  CHECK_FALSE(weak_check_candidate(ns.alg("rot3"), uniform, ns.ws.space, ns.plan).holds);

  // the boost subalgebra forces u1 = k x / t, u2 = k y / t
  CHECK(weak_check_candidate(ns.alg("g2"), ns.cand("S25S26"), ns.ws.space, ns.plan).holds);
  CHECK(weak_check_candidate(ns.alg("g2"), ns.cand("example8_ns_class"), ns.ws.space, ns.plan).holds);
  CHECK_FALSE(weak_check_candidate(ns.alg("g2"), ns.cand("sol"), ns.ws.space, ns.plan).holds);

  Fixture is("isentropic");
  CHECK(weak_check_candidate(is.alg("if3"), is.cand("IF5_class"), is.ws.space, is.plan).holds);

  Fixture le("laplace_fo");
  CHECK_THROWS_AS(weak_minors(le.alg("trans2"), le.ws.space, le.plan), AnalysisError);
}

TEST_CASE("symbolic determinant") {
  Expr a = Expr::variable("a"), b = Expr::variable("b");
  CHECK(determinant({{a, b}, {b, a}}) == a * a - b * b);
  CHECK(determinant({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}}) == Expr(-3));
}

TEST_CASE("defects") {
  Fixture is("isentropic");
  auto d = defect(is.alg("gal_p3"), is.cand("IF11"), is.ws.space, is.plan);
  CHECK(d.delta == 1);
  CHECK(d.classification == DefectClass::PartiallyInvariant);

  Fixture le("laplace_fo");
  CHECK(defect(le.alg("trans2"), le.cand("SLE"), le.ws.space, le.plan).delta == 1);
  CHECK(defect(le.alg("trans2"), le.cand("constant"), le.ws.space, le.plan).delta == 0);
  CandidateSolution x_free{"x_free", {{"u", parse_expression("2*y + 1")}, {"v", Expr(0)}, {"w", Expr(2)}}, {}, {}};
  Algebra px{"px", {le.ws.fields.at("Px")}};
  auto dx = defect(px, x_free, le.ws.space, le.plan);
  CHECK(dx.delta == 0);
  CHECK(dx.classification == DefectClass::Invariant);

  Fixture eu("euler");
  auto e12 = defect(eu.alg("gal3"), eu.cand("E1E2"), eu.ws.space, eu.plan);
  CHECK(e12.delta == 2);
  CHECK(e12.m0 == 3);
}

TEST_CASE("invariance by two routes") {
  Fixture ns("navier_stokes");
  CHECK(invariance_check(ns.alg("rot3"), ns.cand("sol"), ns.ws.space, ns.plan));
  CHECK(characteristics_vanish(ns.alg("rot3"), ns.cand("sol"), ns.ws.space, ns.plan));
  CHECK(invariance_check(ns.alg("g2"), ns.cand("S25S26"), ns.ws.space, ns.plan));
  CHECK(characteristics_vanish(ns.alg("g2"), ns.cand("S25S26"), ns.ws.space, ns.plan));

  Fixture v("vnls3");
  CHECK_FALSE(invariance_check(v.alg("subSE"), v.cand("example4"), v.ws.space, v.plan));
  CHECK_FALSE(characteristics_vanish(v.alg("subSE"), v.cand("example4"), v.ws.space, v.plan));
  CHECK(invariance_check(v.alg("rotation"), v.cand("example4_t0_limit"), v.ws.space, v.plan));
  CHECK_FALSE(invariance_check(v.alg("rotation"), v.cand("example4"), v.ws.space, v.plan));
}

TEST_CASE("constant kernels") {
  Fixture is("isentropic");
  const auto& full = is.ws.algebra("full12");
  auto k = constant_kernel_generators(full.algebra, is.cand("IF11"), is.ws.space, is.plan, full.combinations);
  CHECK(k.pointwise_kernel_dim == 8);
  REQUIRE(k.constant_kernel.size() == 1);
  CHECK(k.matched == std::optional<std::string>("K3_t0P3"));
  CHECK(k.generator_order.size() == 12);
  CHECK(k.constant_kernel[0][3] == doctest::Approx(1.0));
  CHECK(k.constant_kernel[0][6] == doctest::Approx(1.0));

  Fixture le("laplace_fo");
  auto kc = constant_kernel_generators(le.alg("trans2"), le.cand("constant"), le.ws.space, le.plan);
  CHECK(kc.constant_kernel.size() == 2);

  Fixture eu("euler");
  auto ke = constant_kernel_generators(eu.alg("euler_full"), eu.cand("SE"), eu.ws.space, eu.plan);
  CHECK(ke.constant_kernel.empty());
}

TEST_CASE("symmetry checks on donor solutions") {
  Fixture ns("navier_stokes");
  auto sys = ns.ws.system("ns").residuals();
  CHECK(symmetry_check(sys, ns.ws.fields.at("L3"), ns.cand("S25S26"), ns.ws.space, ns.plan).holds);
  CHECK(symmetry_check(sys, ns.ws.fields.at("B1"), ns.cand("sol"), ns.ws.space, ns.plan).holds);
  CHECK(symmetry_check(sys, ns.ws.fields.at("X"), ns.cand("S25S26"), ns.ws.space, ns.plan).holds);
  CHECK_FALSE(symmetry_check(sys, ns.ws.fields.at("S1"), ns.cand("sol"), ns.ws.space, ns.plan).holds);
  CHECK_THROWS_AS(symmetry_check(sys, ns.ws.fields.at("L3"), ns.cand("Sl1"), ns.ws.space, ns.plan), AnalysisError);
}

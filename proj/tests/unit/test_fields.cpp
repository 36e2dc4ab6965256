#include "doctest.h"

#include "symred/fields.hpp"
#include "symred/models.hpp"

using namespace symred;

namespace {

Expr P(const Workspace& ws, const char* text) { return parse_expression(text, ws.context()); }

bool same_field(const VectorField& a, const VectorField& b, double sign = 1) {
  for (std::size_t i = 0; i < a.xi.size(); ++i) {
    if (!(a.xi[i] == Expr(Rational::from_double(sign)) * b.xi[i])) return false;
  }
  for (std::size_t i = 0; i < a.phi.size(); ++i) {
    if (!(a.phi[i] == Expr(Rational::from_double(sign)) * b.phi[i])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("coefficient matrices of the rotation algebra") {
  auto ws = builtin("navier_stokes").workspace;
  auto [x1, x2] = xi_matrices(ws.algebra("rot3").algebra, ws.space);
  CHECK(x1.rows() == 3);
  CHECK(x1.cols() == 4);
  CHECK(x2.cols() == 8);
  CHECK(x1.at(0, 1) == P(ws, "z"));
  CHECK(x1.at(2, 0) == P(ws, "y"));
  CHECK(x2.at(1, 4) == P(ws, "-u3"));
  CHECK(x2.at(2, 5) == P(ws, "-u1"));
  CHECK(x1.row_labels == std::vector<std::string>{"L1", "L2", "L3"});
  CHECK(x2.col_labels.back() == "p");

  auto [g1, g2] = xi_matrices(ws.algebra("g2").algebra, ws.space);
  CHECK(g2.rows() == 4);
  CHECK(g2.cols() == 8);
  CHECK(g2.at(2, 0) == P(ws, "t^(3/2)"));
  CHECK(g2.at(2, 7) == P(ws, "-(3/4)*t^(-1/2)*x"));
}

TEST_CASE("translations give a constant coefficient matrix") {
  auto ws = builtin("laplace_fo").workspace;
  auto [x1, x2] = xi_matrices(ws.algebra("trans2").algebra, ws.space);
  CHECK(x1.at(0, 0) == Expr(1));
  CHECK(x1.at(0, 1) == Expr(0));
  CHECK(x1.at(1, 1) == Expr(1));
  for (std::size_t c = 2; c < x2.cols(); ++c) CHECK(x2.at(0, c).is_zero());
  auto q = characteristic_matrix(ws.algebra("trans2").algebra, ws.space);
  CHECK(q.id == "Q");
  CHECK(q.at(0, 0) == P(ws, "-d(u,x)"));
  CHECK(q.at(1, 2) == P(ws, "-d(w,y)"));
}

TEST_CASE("characteristics and evolutionary form") {
  auto is = builtin("isentropic").workspace;
  auto q = characteristic_matrix(Algebra{"k3", {is.fields.at("K3")}}, is.space);
  CHECK(q.at(0, 0) == P(is, "-t*d(u1,z)"));
  CHECK(q.at(0, 2) == P(is, "1 - t*d(u3,z)"));
  CHECK(q.at(0, 3) == P(is, "-t*d(a,z)"));

  auto ns = builtin("navier_stokes").workspace;
  auto ev = evolutionary_form(ns.fields.at("T"), ns.space);
  CHECK(ev[0] == P(ns, "-d(u1,t)"));
  auto b1 = evolutionary_form(ns.fields.at("B1"), ns.space);
  CHECK(b1[0] == P(ns, "d(alpha,t) - alpha(t)*d(u1,x)"));
  CHECK(b1[1] == P(ns, "-alpha(t)*d(u2,x)"));
  CHECK(b1[3] == P(ns, "-d(alpha,t,t)*x - alpha(t)*d(p,x)"));

  for (const auto& id : builtin_ids()) {
    auto ws = builtin(id).workspace;
    for (const auto& [name, decl] : ws.algebras) {
      auto qm = characteristic_matrix(decl.algebra, ws.space);
      for (std::size_t r = 0; r < decl.algebra.dim(); ++r) {
        CHECK(evolutionary_form(decl.algebra.fields[r], ws.space) == qm.entries[r]);
      }
    }
  }
}

TEST_CASE("lie brackets") {
  auto ns = builtin("navier_stokes").workspace;
  auto le = builtin("laplace_fo").workspace;
  auto zero = lie_bracket(le.fields.at("Px"), le.fields.at("Py"), le.space);
  for (const auto& e : zero.xi) CHECK(e.is_zero());
  auto l12 = lie_bracket(ns.fields.at("L1"), ns.fields.at("L2"), ns.space);
  CHECK(same_field(l12, ns.fields.at("L3")));
  auto l23 = lie_bracket(ns.fields.at("L2"), ns.fields.at("L3"), ns.space);
  CHECK(same_field(l23, ns.fields.at("L1")));
  // [D, X] for X = t^k boost: eigenvector of the dilation
  auto dx = lie_bracket(ns.fields.at("D"), ns.fields.at("X"), ns.space);
  Rational k = ns.params.at("k").value;
  CHECK(same_field(dx, ns.fields.at("X"), (2 * k - 1).to_double()));
}

TEST_CASE("closure of subalgebras") {
  auto ns = builtin("navier_stokes").workspace;
  const auto& rot = ns.algebra("rot3").algebra;
  auto rep = closure_check(rot, rot, ns.space);
  CHECK(rep.closed);
  CHECK_FALSE(rep.flagged);
  REQUIRE(rep.brackets.size() == 3);
  // [L1, L2] = L3, [L1, L3] = -L2, [L2, L3] = L1
  CHECK(rep.brackets[0].coefficients == std::vector<double>{0, 0, 1});
  CHECK(rep.brackets[1].coefficients == std::vector<double>{0, -1, 0});
  CHECK(rep.brackets[2].coefficients == std::vector<double>{1, 0, 0});

  auto eu = builtin("euler").workspace;
  Algebra k1{"k1", {eu.fields.at("K1")}};
  Algebra k1l3{"k1l3", {eu.fields.at("K1"), eu.fields.at("L3")}};
  CHECK_FALSE(closure_check(k1l3, k1, eu.space).closed);
  Algebra k1d2{"k1d2", {eu.fields.at("K1"), eu.fields.at("D2")}};
  CHECK(closure_check(k1d2, Algebra{"k1d2", k1d2.fields}, eu.space).closed);

  auto full = closure_check(ns.algebra("ns_full").algebra, ns.algebra("ns_full").algebra, ns.space);
  CHECK(full.closed);
  CHECK(full.infinite_family);
}

TEST_CASE("prolongation") {
  auto ns = builtin("navier_stokes").workspace;
  auto px = prolong(VectorField{"px", {Expr(1), 0, 0, 0}, {0, 0, 0, 0}}, ns.space, 2);
  for (const auto& [key, e] : px) CHECK(e.is_zero());
  VectorField scale{"s", {0, 0, 0, 0}, {ns.space.u(0), ns.space.u(1), ns.space.u(2), ns.space.u(3)}};
  for (const auto& [key, e] : prolong(scale, ns.space, 2)) CHECK(e == ns.space.jet(key));
  CHECK_THROWS_AS(prolong(scale, ns.space, 3), AnalysisError);
}

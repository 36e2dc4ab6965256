#include "doctest.h"

#include <sstream>

#include "cli.hpp"
#include "symred/report.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = symred::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& piece) { return text.find(piece) != std::string::npos; }

}  // namespace

TEST_CASE("classify output") {
  auto r = run({"classify", "builtin:navier_stokes", "--algebra", "rot3", "--candidate", "Sl1"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "rank Ξ1=2, rank Ξ2=3, strong transversality VIOLATED"));
  CHECK(has(r.out, "weak transversality HOLDS"));
  auto s = run({"classify", "builtin:euler", "--algebra", "gal3"});
  CHECK(s.code == 0);
  CHECK(has(s.out, "STRONG"));
}

TEST_CASE("defect and kernel output") {
  auto d = run({"defect", "builtin:isentropic", "--algebra", "gal_p3", "--candidate", "IF11"});
  CHECK(d.code == 0);
  CHECK(has(d.out, "δ=1"));
  auto k = run({"kernel", "builtin:isentropic", "--algebra", "full12", "--candidate", "IF11"});
  CHECK(k.code == 0);
  CHECK(has(k.out, "constant kernel dimension 1"));
  CHECK(has(k.out, "spans K3_t0P3"));
}

TEST_CASE("verify exit codes") {
  CHECK(run({"verify", "builtin:isentropic", "--candidate", "IF11"}).code == 0);
  auto se = run({"verify", "builtin:euler", "--candidate", "SE"});
  CHECK(se.code == 2);
  CHECK(has(se.out, "FAIL"));
  CHECK(run({"verify", "builtin:isentropic", "--candidate", "IF11", "--constraints", "IF12"}).code == 0);
  CHECK(run({"verify", "builtin:isentropic", "--ode", "IF_k2"}).code == 2);
  CHECK(run({"verify", "builtin:isentropic", "--ode", "IF_k2", "--amplitude", "relation"}).code == 0);
  auto disc = run({"verify", "builtin:euler", "--candidate", "SE", "--discrepancy"});
  CHECK(disc.code == 2);
  CHECK(has(disc.out, "eul1x"));
}

TEST_CASE("usage and resolution errors exit 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"classify", "builtin:navier_stokes"}).code == 1);
  auto u = run({"classify", "builtin:navier_stokes", "--algebra", "nope"});
  CHECK(u.code == 1);
  CHECK_FALSE(u.err.empty());
  CHECK(run({"classify", "builtin:heat", "--algebra", "rot3"}).code == 1);
  CHECK(run({"classify", "/nonexistent/file.sr", "--algebra", "rot3"}).code == 1);
  CHECK(run({"defect", "builtin:navier_stokes", "--algebra", "rot3", "--candidate", "sol", "--param", "zz=1"}).code ==
        1);
  CHECK(run({"verify", "builtin:isentropic", "--ode", "bogus"}).code == 1);
}

TEST_CASE("closure, minors, symcheck and models") {
  auto c = run({"closure", "builtin:navier_stokes", "--algebra", "rot3"});
  CHECK(c.code == 0);
  CHECK(has(c.out, "closed"));
  auto m = run({"minors", "builtin:navier_stokes", "--algebra", "rot3"});
  CHECK(has(m.out, "18 distinct"));
  CHECK(run({"minors", "builtin:laplace_fo", "--algebra", "trans2"}).code == 1);
  auto s = run({"symcheck", "builtin:navier_stokes", "--field", "L3", "--candidate", "S25S26"});
  CHECK(s.code == 0);
  auto models = run({"models"});
  CHECK(has(models.out, "vnls3"));
  auto exported = run({"models", "--export", "laplace_fo"});
  CHECK(exported.code == 0);
  CHECK(has(exported.out, "candidate SLE"));
}

TEST_CASE("json reports are byte identical under a fixed seed") {
  std::vector<std::string> args{"kernel", "builtin:isentropic", "--algebra", "full12", "--candidate", "IF11",
                                "--seed", "7", "--json", "-"};
  auto a = run(args);
  auto b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto j = symred::Json::parse(a.out);
  CHECK(j["schema"] == symred::kReportSchema);
  CHECK(j["command"] == "kernel");
  CHECK(j["plan"]["seeds"] == symred::Json::array({7, 8, 9}));
  CHECK(j["report"]["pointwise_kernel_dim"] == 8);

  auto other = run({"kernel", "builtin:isentropic", "--algebra", "full12", "--candidate", "IF11", "--seed", "8",
                    "--json", "-"});
  CHECK(other.out != a.out);
}

TEST_CASE("parameter overrides reach the analysis") {
  auto r = run({"verify", "builtin:navier_stokes", "--candidate", "S25S26", "--param", "nu=3/4", "--param", "k=5/4"});
  CHECK(r.code == 0);
}

#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "symred/models.hpp"
#include "symred/report.hpp"

namespace symred::cli {

namespace {

struct Common {
  std::string workspace;
  std::vector<std::string> params;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<double> tol;
  std::string json;
  std::string plan;
};

void add_common(CLI::App* sub, Common& c, bool workspace = true) {
  if (workspace) sub->add_option("workspace", c.workspace, "workspace file or builtin:<id>")->required();
  sub->add_option("--param", c.params, "override a parameter, NAME=VALUE (repeatable)");
  sub->add_option("--seed", c.seed, "first of three consecutive sampling seeds");
  sub->add_option("--samples", c.samples, "accepted sample points per seed");
  sub->add_option("--tol", c.tol, "tolerance (residual checks) or relative pivot threshold (rank commands)");
  sub->add_option("--json", c.json, "write the JSON report to PATH ('-' for stdout)");
  sub->add_option("--plan", c.plan, "named sample plan of the workspace");
}

std::map<std::string, Rational> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, Rational> out;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--param", "expected NAME=VALUE, got '" + item + "'");
    try {
      out[item.substr(0, eq)] = Rational::parse(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--param", "'" + item.substr(eq + 1) + "' is not a rational number");
    }
  }
  return out;
}

struct Context {
  Workspace ws;
  SamplePlan plan;
};

Context load(const Common& c, bool rank_command) {
  Context ctx{load_workspace(c.workspace, parse_params(c.params)), {}};
  if (!c.plan.empty()) {
    const auto* p = ctx.ws.plans.find(c.plan);
    if (!p) throw AnalysisError("unknown plan '" + c.plan + "'");
    ctx.plan = *p;
  } else {
    ctx.plan = default_plan(ctx.ws);
  }
  if (c.seed) ctx.plan.seeds = {*c.seed, *c.seed + 1, *c.seed + 2};
  if (c.samples) {
    ctx.plan.count = *c.samples;
    ctx.plan.min_accepted = std::min(ctx.plan.min_accepted, *c.samples);
  }
  if (rank_command && c.tol) ctx.plan.rank_tol = *c.tol;
  ctx.plan.validate();
  return ctx;
}

void emit_json(const Common& c, const std::string& command, const SamplePlan& plan, Json report, std::ostream& out) {
  if (c.json.empty()) return;
  std::string text = dump(envelope(command, plan, std::move(report)));
  if (c.json == "-") {
    out << text;
    return;
  }
  std::ofstream f(c.json);
  if (!f) throw AnalysisError("cannot write '" + c.json + "'");
  f << text;
}

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << v;
  return os.str();
}

std::string rank_line(int r1, int r2) {
  return "rank Ξ1=" + std::to_string(r1) + ", rank Ξ2=" + std::to_string(r2);
}

void print_residuals(std::ostream& out, const std::vector<std::string>& labels, const std::vector<double>& values,
                     double tol) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << "  " << std::left << std::setw(10) << labels[i] << " max|residual| = " << sci(values[i])
        << (values[i] < tol ? "  ok" : "  FAIL") << "\n";
  }
}

const CandidateSolution& candidate_of(const Workspace& ws, const std::string& name) {
  return ws.candidate(name).candidate;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& raw_out, std::ostream& err) {
  std::ostream* out_ptr = &raw_out;
  CLI::App app{"Symmetry reduction toolkit: transversality, defect, kernels and residual checks"};
  app.name("symred");
  app.require_subcommand(1);

  Common cc, cd, cv, cm, ck, cs, cl, cmod;
  std::string algebra, candidate, system, field, within, export_id, constraints, ode, amplitude = "printed";
  bool discrepancy = false, closure = false;

  auto* classify = app.add_subcommand("classify", "ranks of Ξ1 and Ξ2 and the transversality class");
  add_common(classify, cc);
  classify->add_option("--algebra", algebra)->required();
  classify->add_option("--candidate", candidate, "also test weak transversality on this candidate");

  auto* defect_cmd = app.add_subcommand("defect", "defect of a candidate under an algebra");
  add_common(defect_cmd, cd);
  defect_cmd->add_option("--algebra", algebra)->required();
  defect_cmd->add_option("--candidate", candidate)->required();

  auto* verify = app.add_subcommand("verify", "residuals of a candidate in a system");
  add_common(verify, cv);
  verify->add_option("--candidate", candidate);
  verify->add_option("--system", system, "system name (default: the first one)");
  verify->add_option("--constraints", constraints, "E83_E86, IF12 or LNS: intermediate constraint check");
  verify->add_option("--ode", ode, "IF7_general, IF9_k1 or IF_k2: reduced ODE chain");
  verify->add_option("--amplitude", amplitude, "amplitude for IF_k2: printed or relation")
      ->check(CLI::IsMember({"printed", "relation"}));
  verify->add_flag("--discrepancy", discrepancy, "localize the first failing equation");

  auto* minors = app.add_subcommand("minors", "weak transversality minors of Ξ2");
  add_common(minors, cm);
  minors->add_option("--algebra", algebra)->required();
  minors->add_option("--candidate", candidate, "check that the candidate annihilates every minor");

  auto* kernel = app.add_subcommand("kernel", "pointwise and constant left kernel of Q on a candidate");
  add_common(kernel, ck);
  kernel->add_option("--algebra", algebra)->required();
  kernel->add_option("--candidate", candidate)->required();

  auto* symcheck = app.add_subcommand("symcheck", "prolonged field applied to a system on a donor solution");
  add_common(symcheck, cs);
  symcheck->add_option("--field", field)->required();
  symcheck->add_option("--candidate", candidate, "donor solution")->required();
  symcheck->add_option("--system", system);

  auto* closure_cmd = app.add_subcommand("closure", "closure of an algebra under brackets");
  add_common(closure_cmd, cl);
  closure_cmd->add_option("--algebra", algebra)->required();
  closure_cmd->add_option("--within", within, "algebra whose span must contain the brackets (default: itself)");

  auto* models_cmd = app.add_subcommand("models", "list or export the built-in models");
  add_common(models_cmd, cmod, false);
  models_cmd->add_option("--export", export_id, "print the DSL text of a built-in model");
  models_cmd->add_flag("--closure", closure, "check closure of every built-in algebra");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    raw_out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    raw_out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  // with --json - the standard output carries only the JSON document
  std::ostringstream discard;
  for (const Common* c : {&cc, &cd, &cv, &cm, &ck, &cs, &cl, &cmod}) {
    if (c->json == "-") out_ptr = &discard;
  }
  std::ostream& out = *out_ptr;
  try {
    if (classify->parsed()) {
      auto ctx = load(cc, true);
      const auto* c = candidate.empty() ? nullptr : &candidate_of(ctx.ws, candidate);
      auto rep = classify_transversality(ctx.ws.algebra(algebra).algebra, ctx.ws.space, ctx.plan, c);
      out << rank_line(rep.xi1.generic_rank, rep.xi2.generic_rank) << ", "
          << (rep.status == Transversality::Strong ? "STRONG" : "strong transversality VIOLATED") << "\n";
      if (rep.weak) {
        out << "weak transversality " << (*rep.weak == WeakStatus::WeakHolds ? "HOLDS" : "FAILS") << " on "
            << candidate << " (" << rank_line(rep.xi1_on_candidate->generic_rank, rep.xi2_on_candidate->generic_rank)
            << ")\n";
      }
      emit_json(cc, "classify", ctx.plan, to_json(rep), raw_out);
      if (rep.non_generic()) {
        err << "flag: ranks differ across sample points (non_generic)\n";
        return kFlagged;
      }
      return kOk;
    }
    if (defect_cmd->parsed()) {
      auto ctx = load(cd, true);
      Workspace ws = workspace_for_candidate(ctx.ws, candidate);
      auto rep = defect(ws.algebra(algebra).algebra, candidate_of(ws, candidate), ws.space, ctx.plan);
      out << "δ=" << rep.delta << " (s=" << rep.s << ", m0=" << rep.m0 << ", " << to_string(rep.classification)
          << ")\n";
      emit_json(cd, "defect", ctx.plan, to_json(rep), raw_out);
      if (rep.non_generic) {
        err << "flag: rank of Q differs across sample points (non_generic)\n";
        return kFlagged;
      }
      return kOk;
    }
    if (verify->parsed()) {
      auto ctx = load(cv, false);
      double tol = cv.tol.value_or(1e-8);
      if (!ode.empty()) {
        auto kind = parse_ode_kind(ode);
        if (!kind) throw CLI::ValidationError("--ode", "unknown reduced ODE '" + ode + "'");
        auto rep = reduced_ode_check(*kind, parse_params(cv.params), ctx.plan, std::nullopt,
                                     amplitude == "printed" ? Amplitude::Printed : Amplitude::FromRelation);
        out << to_string(*kind) << " (" << rep.candidate << ", k=" << rep.k.str() << ")\n";
        print_residuals(out, {"ode", "relation", "fluid"}, {rep.ode_residual, rep.relation_residual, rep.fluid_residual},
                        tol);
        emit_json(cv, "verify", ctx.plan, to_json(rep), raw_out);
        return rep.passed(tol) ? kOk : kFlagged;
      }
      if (candidate.empty()) throw CLI::RequiredError("--candidate");
      if (!constraints.empty()) {
        auto id = parse_constraint_set(constraints);
        if (!id) throw CLI::ValidationError("--constraints", "unknown constraint set '" + constraints + "'");
        auto rep = derived_constraint_check(*id, ctx.ws, candidate, ctx.plan);
        out << rep.id << " constraints on " << candidate << "\n";
        print_residuals(out, rep.constraint_labels, rep.constraint_max, tol);
        out << "full system\n";
        print_residuals(out, rep.full_labels, rep.full_max, tol);
        out << "transfer mismatch " << sci(rep.transfer_max) << ", equivalent: " << (rep.equivalent ? "yes" : "no")
            << "\n";
        emit_json(cv, "verify", ctx.plan, to_json(rep), raw_out);
        return rep.constraint_residual() < tol && rep.equivalent ? kOk : kFlagged;
      }
      std::string sys = system.empty() ? ctx.ws.systems.begin()->first : system;
      if (ctx.ws.systems.empty()) throw AnalysisError("workspace declares no system");
      SamplePlan plan = ctx.plan;
      if (discrepancy) {
        auto rep = discrepancy_report(ctx.ws, sys, candidate, plan, tol);
        print_residuals(out, rep.labels, rep.max_abs, tol);
        if (rep.equation) {
          out << "first failing equation " << *rep.equation << " at seed " << rep.seed << ":";
          for (const auto& [v, x] : rep.point) out << " " << v << "=" << x;
          out << "\n  residual " << sci(rep.symbolic_residual) << " (finite differences " << sci(rep.fd_residual)
              << "), dominant term " << rep.dominant_term << "\n";
        }
        emit_json(cv, "verify", plan, to_json(rep), raw_out);
        return rep.passes ? kOk : kFlagged;
      }
      auto rep = residual(ctx.ws, sys, candidate, plan);
      out << candidate << " in " << sys << " (" << rep.points << " points)\n";
      print_residuals(out, rep.labels, rep.max_abs, tol);
      emit_json(cv, "verify", plan, to_json(rep), raw_out);
      return rep.max() < tol ? kOk : kFlagged;
    }
    if (minors->parsed()) {
      auto ctx = load(cm, true);
      const auto& a = ctx.ws.algebra(algebra).algebra;
      auto rep = weak_minors(a, ctx.ws.space, ctx.plan);
      out << rep.minors.size() << " distinct " << rep.size << "x" << rep.size << " minors (rank Ξ1=" << rep.rho
          << ")\n";
      for (const auto& m : rep.minors) out << "  " << to_string(m) << "\n";
      Json j = to_json(rep);
      int code = kOk;
      if (!candidate.empty()) {
        auto wc = weak_check_candidate(a, candidate_of(ctx.ws, candidate), ctx.ws.space, ctx.plan, cm.tol.value_or(1e-10));
        out << "minors on " << candidate << ": max " << sci(wc.max_abs) << ", weak transversality "
            << (wc.holds ? "HOLDS" : "FAILS") << "\n";
        j["weak_check"] = to_json(wc);
      }
      emit_json(cm, "minors", ctx.plan, j, raw_out);
      return code;
    }
    if (kernel->parsed()) {
      auto ctx = load(ck, true);
      Workspace ws = workspace_for_candidate(ctx.ws, candidate);
      const auto& decl = ws.algebra(algebra);
      auto rep = constant_kernel_generators(decl.algebra, candidate_of(ws, candidate), ws.space, ctx.plan,
                                            decl.combinations);
      out << "generator order:";
      for (const auto& g : rep.generator_order) out << " " << g;
      out << "\npointwise kernel dimension " << rep.pointwise_kernel_dim << "\nconstant kernel dimension "
          << rep.constant_kernel.size() << "\n";
      for (const auto& row : rep.constant_kernel) {
        out << "  (";
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? ", " : "") << row[i];
        out << ")\n";
      }
      if (rep.matched) out << "spans " << *rep.matched << "\n";
      emit_json(ck, "kernel", ctx.plan, to_json(rep), raw_out);
      return kOk;
    }
    if (symcheck->parsed()) {
      auto ctx = load(cs, false);
      Workspace ws = workspace_for_candidate(ctx.ws, candidate);
      const auto& sys = system.empty() ? ws.default_system() : ws.system(system);
      const auto* f = ws.fields.find(field);
      if (!f) throw AnalysisError("unknown field '" + field + "'");
      auto rep = symmetry_check(sys.residuals(), *f, candidate_of(ws, candidate), ws.space, ctx.plan,
                                cs.tol.value_or(1e-7));
      double worst = rep.max_abs.empty() ? 0.0 : *std::max_element(rep.max_abs.begin(), rep.max_abs.end());
      out << "pr " << field << " on " << candidate << ": max " << sci(worst) << ", "
          << (rep.holds ? "SYMMETRY" : "NOT a symmetry") << "\n";
      emit_json(cs, "symcheck", ctx.plan, to_json(rep), raw_out);
      return kOk;
    }
    if (closure_cmd->parsed()) {
      auto ctx = load(cl, false);
      const auto& a = ctx.ws.algebra(algebra).algebra;
      const auto& w = within.empty() ? a : ctx.ws.algebra(within).algebra;
      auto rep = closure_check(a, w, ctx.ws.space, ctx.plan);
      out << a.name << " within " << w.name << ": " << (rep.closed ? "closed" : "NOT closed");
      if (!rep.message.empty()) out << " (" << rep.message << ")";
      out << "\n";
      emit_json(cl, "closure", ctx.plan, to_json(rep, a, w), raw_out);
      return rep.flagged ? kFlagged : kOk;
    }
    if (models_cmd->parsed()) {
      if (!export_id.empty()) {
        out << export_workspace(builtin(export_id, parse_params(cmod.params)).workspace);
        return kOk;
      }
      Json list = Json::array();
      bool flagged = false;
      for (const auto& id : builtin_ids()) {
        auto m = builtin(id, {});
        Json entry = {{"id", id},
                      {"title", m.title},
                      {"systems", m.workspace.systems.names()},
                      {"algebras", m.workspace.algebras.names()},
                      {"candidates", m.workspace.candidates.names()}};
        out << id << ": " << m.title << "\n  algebras:";
        for (const auto& n : m.workspace.algebras.names()) out << " " << n;
        out << "\n  candidates:";
        for (const auto& n : m.workspace.candidates.names()) out << " " << n;
        out << "\n";
        if (closure) {
          Json cl_json = Json::array();
          for (const auto& [n, a] : m.workspace.algebras) {
            auto rep = closure_check(a.algebra, a.algebra, m.workspace.space, default_plan(m.workspace));
            out << "  " << n << ": " << (rep.closed ? "closed" : "NOT closed") << "\n";
            flagged = flagged || !rep.closed || rep.flagged;
            cl_json.push_back(to_json(rep, a.algebra, a.algebra));
          }
          entry["closure"] = cl_json;
        }
        list.push_back(entry);
      }
      emit_json(cmod, "models", SamplePlan{}, list, raw_out);
      return flagged ? kFlagged : kOk;
    }
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const symred::ParseError& e) {
    err << "parse error at line " << e.line() << ", column " << e.column() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const SamplingStarvation& e) {
    err << "flag: " << e.what() << "\n";
    return kFlagged;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace symred::cli

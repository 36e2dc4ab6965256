#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symred/workspace.hpp"

namespace symred {

struct ModelEntry {
  std::string id;
  std::string title;
  Workspace workspace;
};

std::vector<std::string> builtin_ids();
/// DSL text of a built-in model. Throws AnalysisError for an unknown id.
std::string builtin_source(const std::string& id);
ModelEntry builtin(const std::string& id, const std::map<std::string, Rational>& overrides = {});

/// "builtin:<id>" or a path to a `.sr` file.
Workspace load_workspace(const std::string& location, const std::map<std::string, Rational>& overrides = {});

/// The workspace's `default` plan if it declares one.
SamplePlan default_plan(const Workspace& ws);

/// Parameter values drawn on a 1/64 grid inside the declared ranges. Only
/// parameters listed in `names` are drawn (all ranged ones when empty).
std::map<std::string, Rational> draw_params(const Workspace& ws, std::uint64_t seed,
                                            const std::vector<std::string>& names = {});

struct ResidualReport {
  std::string system;
  std::string candidate;
  std::vector<std::string> labels;
  std::vector<double> max_abs;
  std::size_t points = 0;
  double max() const;
};

/// Substitutes the candidate into each equation of the system and records the
/// largest |value| over the sampled points. The workspace is re-parsed with
/// the candidate's required parameter values first.
ResidualReport residual(const Workspace& ws, const std::string& system, const std::string& candidate,
                        const SamplePlan& plan);

/// Same check forced into complex evaluation, as needed for amplitude-phase
/// candidates of the Schroedinger system.
ResidualReport vnls_residual(const Workspace& ws, const std::string& candidate, const SamplePlan& plan);

enum class OdeKind { IF7General, IF9K1, IFK2 };
enum class Amplitude { Printed, FromRelation };

struct OdeCheck {
  OdeKind kind = OdeKind::IF7General;
  Rational k;
  std::string candidate;
  double ode_residual = 0;        // the second order equation for W
  double relation_residual = 0;   // A against sqrt(-(W^2 + W')/k)
  double fluid_residual = 0;      // assembled fluid candidate in the isentropic system
  std::size_t points = 0;
  bool passed(double tol) const { return ode_residual < tol && relation_residual < tol && fluid_residual < tol; }
};

/// Reduced ODE chain for the similarity class u = (x/t, y/t, zW(t)), a = zA(t).
/// IF7General uses the closed form matching `k` (-1 or -2); `w_override`
/// replaces W (in t) for fault injection.
OdeCheck reduced_ode_check(OdeKind kind, const std::map<std::string, Rational>& params, const SamplePlan& plan,
                           const std::optional<Expr>& w_override = std::nullopt,
                           Amplitude amplitude = Amplitude::Printed);

enum class ConstraintSet { E83_E86, IF12, LNS };

struct ConstraintCheck {
  std::string id;
  std::string candidate;
  std::vector<std::string> constraint_labels;
  std::vector<double> constraint_max;
  std::vector<std::string> full_labels;
  std::vector<double> full_max;
  double transfer_max = 0;  // max |R - M C| / max(1, |R|, |M C|)
  int transfer_rank = 0;    // smallest rank of M over the points
  std::size_t points = 0;
  bool equivalent = false;  // R = M C with M of full column rank
  double constraint_residual() const;
  double full_residual() const;
};

/// Residuals of an intermediate constraint system next to the full system,
/// with the identity R = M C checked pointwise. Throws AnalysisError when the
/// candidate lies outside the class the constraint system was derived for.
ConstraintCheck derived_constraint_check(ConstraintSet id, const Workspace& ws, const std::string& candidate,
                                         const SamplePlan& plan, double tol = 1e-9);

std::string to_string(OdeKind k);
std::string to_string(ConstraintSet c);
std::optional<OdeKind> parse_ode_kind(const std::string& s);
std::optional<ConstraintSet> parse_constraint_set(const std::string& s);

struct TermValue {
  std::string term;
  double symbolic = 0;  // |term| with exact derivatives
  double finite_difference = 0;
};

/// Localizes a residual failure: the first equation over tolerance, the
/// sample point where it is worst, the equation's terms evaluated there, and
/// the same residual recomputed from central finite differences of the
/// candidate so that the failure cannot be blamed on the differentiator.
struct DiscrepancyReport {
  std::string system;
  std::string candidate;
  double tol = 0;
  std::vector<std::string> labels;
  std::vector<double> max_abs;
  bool passes = true;
  std::optional<std::string> equation;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, double>> point;
  double symbolic_residual = 0;
  double fd_residual = 0;
  std::vector<TermValue> terms;
  std::string dominant_term;  // term whose removal leaves the smallest residual
};

DiscrepancyReport discrepancy_report(const Workspace& ws, const std::string& system, const std::string& candidate,
                                     const SamplePlan& plan, double tol);

/// Central finite difference of an instantiated expression in the
/// independents (step h per order).
double finite_difference(const Expr& e, const std::vector<std::string>& vars, const std::vector<double>& at,
                         const std::vector<int>& multi, double h, const EvalOptions& opts);

}  // namespace symred

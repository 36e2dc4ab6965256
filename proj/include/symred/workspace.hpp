#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symred/fields.hpp"
#include "symred/jet.hpp"
#include "symred/sampling.hpp"

namespace symred {

template <typename T>
class NamedList {
 public:
  void add(const std::string& name, T value) {
    if (find(name)) throw std::invalid_argument("duplicate name '" + name + "'");
    items_.emplace_back(name, std::move(value));
  }
  const T* find(const std::string& name) const {
    for (const auto& [n, v] : items_) {
      if (n == name) return &v;
    }
    return nullptr;
  }
  T* find(const std::string& name) {
    for (auto& [n, v] : items_) {
      if (n == name) return &v;
    }
    return nullptr;
  }
  const T& at(const std::string& name) const {
    if (const T* v = find(name)) return *v;
    throw std::out_of_range("unknown name '" + name + "'");
  }
  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [n, _] : items_) out.push_back(n);
    return out;
  }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

 private:
  std::vector<std::pair<std::string, T>> items_;
};

struct Parameter {
  Rational value;
  std::optional<std::pair<Rational, Rational>> range;  // admissible draw range
};

struct Equation {
  std::string label;
  Expr lhs;  // the equation is lhs = 0
};

struct SystemDecl {
  std::vector<Equation> equations;
  std::vector<Expr> residuals() const;
};

struct AlgebraDecl {
  Algebra algebra;
  std::map<std::string, std::vector<Rational>> combinations;  // in generator order
};

struct CandidateDecl {
  CandidateSolution candidate;
  bool solution = false;                      // claimed exact solution of the workspace systems
  std::map<std::string, Rational> requires_;  // parameter values the candidate is stated for
};

/// Parsed `.sr` file: one variable space with its declarations. Parameters
/// and lets are substituted while parsing, so all expressions are concrete.
struct Workspace {
  VariableSpace space;
  std::vector<SymbolPtr> functions;
  NamedList<Parameter> params;
  NamedList<SystemDecl> systems;
  NamedList<VectorField> fields;
  NamedList<AlgebraDecl> algebras;
  NamedList<CandidateDecl> candidates;
  NamedList<SamplePlan> plans;
  std::string source;
  std::map<std::string, Rational> overrides;

  const SystemDecl& system(const std::string& name) const;
  const AlgebraDecl& algebra(const std::string& name) const;
  const CandidateDecl& candidate(const std::string& name) const;
  /// The first system, used when none is named.
  const SystemDecl& default_system() const;
  /// Space names, declared functions and parameter values (lets excluded).
  ParseContext context() const;
};

/// Throws ParseError (with line/column) or AnalysisError on resolution errors.
Workspace parse_workspace(const std::string& text, const std::map<std::string, Rational>& overrides = {});

/// Re-parses the workspace with the candidate's required parameter values.
Workspace workspace_for_candidate(const Workspace& ws, const std::string& candidate);

/// Canonical DSL text with parameters resolved.
std::string export_workspace(const Workspace& ws);

}  // namespace symred

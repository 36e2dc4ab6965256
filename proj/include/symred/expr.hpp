#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symred/rational.hpp"

namespace symred {

enum class NodeKind { Constant, ImaginaryUnit, Variable, FunctionApp, Builtin, Power, Product, Sum };
enum class BuiltinKind { Exp, Ln, Sin, Cos, Sqrt, BesselI };

/// An opaque function symbol such as a(t) or lambda(xi1, xi2).
///
/// Dependent variables of a jet space are also function symbols, with the
/// independents as formal parameters and `implicit_args` set: they print as a
/// bare name and their formal derivatives are the jet coordinates.
struct FunctionSymbol {
  std::string name;
  std::vector<std::string> params;
  bool implicit_args = false;

  std::size_t arity() const { return params.size(); }
};
using SymbolPtr = std::shared_ptr<const FunctionSymbol>;

SymbolPtr make_symbol(std::string name, std::vector<std::string> params, bool implicit_args = false);

struct Node;

/// Immutable symbolic expression. Cheap to copy; safe to share across threads.
///
/// The named constructors and arithmetic operators normalize their result;
/// the `raw_*` constructors build the node verbatim and exist for parsers and
/// generators that want to hand an unnormalized tree to `normalize`.
class Expr {
 public:
  Expr();  // the constant 0
  Expr(long long v);  // NOLINT(google-explicit-constructor)
  Expr(int v) : Expr(static_cast<long long>(v)) {}  // NOLINT(google-explicit-constructor)
  Expr(Rational v);  // NOLINT(google-explicit-constructor)

  static Expr constant(Rational v);
  static Expr imaginary_unit();
  static Expr variable(std::string name);
  static Expr function(SymbolPtr symbol, std::vector<Expr> args, std::vector<int> derivs = {});
  static Expr builtin(BuiltinKind kind, Expr arg, Rational order = Rational());
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr power(Expr base, Rational exponent);

  static Expr raw_sum(std::vector<Expr> terms);
  static Expr raw_product(std::vector<Expr> factors);
  static Expr raw_power(Expr base, Rational exponent);
  static Expr raw_builtin(BuiltinKind kind, Expr arg, Rational order = Rational());

  NodeKind kind() const;
  const Rational& value() const;     // Constant
  const Rational& exponent() const;  // Power
  const Rational& order() const;     // Builtin BesselI
  const std::string& name() const;   // Variable
  const SymbolPtr& symbol() const;   // FunctionApp
  const std::vector<int>& derivs() const;  // FunctionApp
  BuiltinKind builtin_kind() const;
  const std::vector<Expr>& children() const;
  const Expr& base() const;  // Power
  const Expr& arg() const;   // Builtin

  bool is_constant() const { return kind() == NodeKind::Constant; }
  bool is_zero() const;
  bool is_one() const;
  int derivative_order() const;  // FunctionApp: sum of the multi-index

  std::size_t hash() const;
  std::uint64_t var_mask() const;
  const Node* get() const { return node_.get(); }

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  friend struct NodeFactory;
  std::shared_ptr<const Node> node_;
};

/// Canonical total order used to sort children of sums and products.
int compare(const Expr& a, const Expr& b);

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

Expr Pow(const Expr& base, const Rational& exponent);
Expr Exp(const Expr& e);
Expr Ln(const Expr& e);
Expr Sin(const Expr& e);
Expr Cos(const Expr& e);
Expr Sqrt(const Expr& e);
Expr BesselI(const Rational& order, const Expr& e);

/// Flattens, folds constants, merges like terms and equal-base powers and
/// sorts children. Idempotent.
Expr normalize(const Expr& e);

/// Exact partial derivative. Function applications differentiate through
/// their arguments by the chain rule, so a dependent u(x, t) yields the jet
/// coordinate d(u, x): this is the total derivative on a jet space.
Expr differentiate(const Expr& e, const std::string& var);

/// Target of a partial derivative that treats jet coordinates as independent
/// coordinates (as in the prolongation formula).
struct PartialTarget {
  enum class Kind { Variable, Jet } kind = Kind::Variable;
  std::string name;          // variable name or dependent symbol name
  std::vector<int> derivs;   // multi-index for Jet targets
  static PartialTarget variable(std::string n) { return {Kind::Variable, std::move(n), {}}; }
  static PartialTarget jet(std::string n, std::vector<int> d) { return {Kind::Jet, std::move(n), std::move(d)}; }
};

/// Partial derivative that holds every implicit-argument function application
/// (jet coordinate) fixed, except the one named by a Jet target.
Expr partial(const Expr& e, const PartialTarget& target);

/// Bottom-up rewrite. `fn` may return a replacement for a node; otherwise the
/// node is rebuilt from its rewritten children. Memoized on shared subtrees.
Expr transform(const Expr& e, const std::function<std::optional<Expr>(const Expr&)>& fn);

/// Replaces variables by expressions.
Expr substitute(const Expr& e, const std::vector<std::pair<std::string, Expr>>& replacements);

std::set<std::string> free_variables(const Expr& e);
/// Opaque (non-implicit) function symbols appearing in e, by name.
std::vector<SymbolPtr> opaque_symbols(const Expr& e);
/// True if e contains any implicit-argument function application.
bool contains_jets(const Expr& e, int min_order = 0);
bool depends_on(const Expr& e, const std::string& var);
std::size_t node_count(const Expr& e);

std::string to_string(const Expr& e);

}  // namespace symred

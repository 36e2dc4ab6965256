#include "symred/expr.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "expr_node.hpp"

namespace symred {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

int kind_rank(NodeKind k) { return static_cast<int>(k); }

std::size_t combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

const Expr& zero_expr() {
  static const Expr z = Expr::constant(Rational(0));
  return z;
}

}  // namespace

std::uint64_t name_bit(const std::string& name) { return 1ull << (fnv1a(name) % 64); }

Expr NodeFactory::make(Node n) {
  std::size_t h = std::hash<int>{}(kind_rank(n.kind));
  std::uint64_t mask = 0;
  switch (n.kind) {
    case NodeKind::Constant:
      h = combine(h, n.value.hash());
      break;
    case NodeKind::ImaginaryUnit:
      break;
    case NodeKind::Variable:
      h = combine(h, std::hash<std::string>{}(n.name));
      mask = name_bit(n.name);
      break;
    case NodeKind::FunctionApp:
      h = combine(h, std::hash<std::string>{}(n.symbol->name));
      for (int d : n.derivs) h = combine(h, static_cast<std::size_t>(d));
      mask = name_bit(n.symbol->name);
      break;
    case NodeKind::Builtin:
      h = combine(h, static_cast<std::size_t>(n.builtin));
      h = combine(h, n.value.hash());
      break;
    case NodeKind::Power:
      h = combine(h, n.value.hash());
      break;
    case NodeKind::Product:
    case NodeKind::Sum:
      break;
  }
  for (const auto& c : n.children) {
    h = combine(h, c.hash());
    mask |= c.var_mask();
    if (!c.get()->normalized) n.normalized = false;
  }
  n.hash = h;
  n.mask = mask;
  return Expr(std::make_shared<const Node>(std::move(n)));
}

SymbolPtr make_symbol(std::string name, std::vector<std::string> params, bool implicit_args) {
  if (params.empty()) throw std::invalid_argument("function symbol '" + name + "' needs at least one parameter");
  auto s = std::make_shared<FunctionSymbol>();
  s->name = std::move(name);
  s->params = std::move(params);
  s->implicit_args = implicit_args;
  return s;
}

// ---------------------------------------------------------------------------
// Construction

Expr::Expr() : Expr(zero_expr()) {}
Expr::Expr(long long v) : Expr(constant(Rational(v))) {}
Expr::Expr(Rational v) : Expr(constant(std::move(v))) {}

Expr Expr::constant(Rational v) {
  Node n;
  n.kind = NodeKind::Constant;
  n.value = std::move(v);
  return NodeFactory::make(std::move(n));
}

Expr Expr::imaginary_unit() {
  static const Expr i = [] {
    Node n;
    n.kind = NodeKind::ImaginaryUnit;
    return NodeFactory::make(std::move(n));
  }();
  return i;
}

Expr Expr::variable(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty variable name");
  Node n;
  n.kind = NodeKind::Variable;
  n.name = std::move(name);
  return NodeFactory::make(std::move(n));
}

Expr Expr::function(SymbolPtr symbol, std::vector<Expr> args, std::vector<int> derivs) {
  if (!symbol) throw std::invalid_argument("null function symbol");
  if (args.size() != symbol->arity()) {
    throw std::invalid_argument("function '" + symbol->name + "' expects " + std::to_string(symbol->arity()) +
                                " arguments, got " + std::to_string(args.size()));
  }
  if (derivs.empty()) derivs.assign(symbol->arity(), 0);
  if (derivs.size() != symbol->arity()) throw std::invalid_argument("derivative multi-index has wrong length");
  for (int d : derivs) {
    if (d < 0) throw std::invalid_argument("negative derivative multi-index entry");
  }
  Node n;
  n.kind = NodeKind::FunctionApp;
  n.symbol = std::move(symbol);
  n.children = std::move(args);
  n.derivs = std::move(derivs);
  return NodeFactory::make(std::move(n));
}

Expr Expr::raw_builtin(BuiltinKind kind, Expr arg, Rational order) {
  Node n;
  n.kind = NodeKind::Builtin;
  n.builtin = kind;
  n.value = std::move(order);
  n.children = {std::move(arg)};
  n.normalized = false;
  return NodeFactory::make(std::move(n));
}

Expr Expr::raw_power(Expr base, Rational exponent) {
  Node n;
  n.kind = NodeKind::Power;
  n.value = std::move(exponent);
  n.children = {std::move(base)};
  n.normalized = false;
  return NodeFactory::make(std::move(n));
}

Expr Expr::raw_sum(std::vector<Expr> terms) {
  if (terms.empty()) return Expr(0);
  Node n;
  n.kind = NodeKind::Sum;
  n.children = std::move(terms);
  n.normalized = false;
  return NodeFactory::make(std::move(n));
}

Expr Expr::raw_product(std::vector<Expr> factors) {
  if (factors.empty()) return Expr(1);
  Node n;
  n.kind = NodeKind::Product;
  n.children = std::move(factors);
  n.normalized = false;
  return NodeFactory::make(std::move(n));
}

namespace {

Expr normalized_node(NodeKind kind, std::vector<Expr> children, Rational value = Rational(),
                     BuiltinKind builtin = BuiltinKind::Exp) {
  Node n;
  n.kind = kind;
  n.children = std::move(children);
  n.value = std::move(value);
  n.builtin = builtin;
  return NodeFactory::make(std::move(n));
}

std::optional<BigInt> exact_root(const BigInt& v, long long q) {
  if (v < 0) return std::nullopt;
  if (v <= 1) return v;
  double approx = std::pow(v.convert_to<double>(), 1.0 / static_cast<double>(q));
  if (!std::isfinite(approx) || approx > 1e15) return std::nullopt;
  auto guess = static_cast<long long>(std::llround(approx));
  for (long long c = std::max(0LL, guess - 1); c <= guess + 1; ++c) {
    BigInt p = 1;
    for (long long i = 0; i < q; ++i) p *= c;
    if (p == v) return BigInt(c);
  }
  return std::nullopt;
}

std::pair<Rational, Expr> split_coefficient(const Expr& term) {
  if (term.kind() == NodeKind::Constant) return {term.value(), Expr(1)};
  if (term.kind() == NodeKind::Product && term.children().front().kind() == NodeKind::Constant) {
    const auto& ch = term.children();
    if (ch.size() == 2) return {ch[0].value(), ch[1]};
    std::vector<Expr> rest(ch.begin() + 1, ch.end());
    return {ch[0].value(), normalized_node(NodeKind::Product, std::move(rest))};
  }
  return {Rational(1), term};
}

Expr with_coefficient(const Rational& c, const Expr& rest) {
  if (c.is_zero()) return Expr(0);
  if (rest.is_one()) return Expr::constant(c);
  if (c.is_one()) return rest;
  std::vector<Expr> ch;
  ch.emplace_back(Expr::constant(c));
  if (rest.kind() == NodeKind::Product) {
    ch.insert(ch.end(), rest.children().begin(), rest.children().end());
  } else {
    ch.push_back(rest);
  }
  return normalized_node(NodeKind::Product, std::move(ch));
}

Expr normalize_product(std::vector<Expr> factors, int depth);

Expr imaginary_power(long long k) {
  long long m = ((k % 4) + 4) % 4;
  switch (m) {
    case 0: return Expr(1);
    case 1: return Expr::imaginary_unit();
    case 2: return Expr(-1);
    default: return normalized_node(NodeKind::Product, {Expr(-1), Expr::imaginary_unit()});
  }
}

Expr normalize_power(const Expr& base, const Rational& e) {
  if (e.is_zero()) return Expr(1);
  if (e.is_one()) return base;
  switch (base.kind()) {
    case NodeKind::Constant: {
      const Rational& v = base.value();
      if (v.is_zero()) {
        if (e.sign() > 0) return Expr(0);
        break;
      }
      if (v.is_one()) return Expr(1);
      if (auto n = e.to_int(); n && std::abs(*n) <= 4096) return Expr::constant(v.pow(*n));
      if (!v.is_negative()) {
        auto q = e.den().convert_to<long long>();
        auto rn = exact_root(v.num(), q);
        auto rd = exact_root(v.den(), q);
        if (rn && rd) {
          auto p = e.num().convert_to<long long>();
          return Expr::constant(Rational(*rn, *rd).pow(p));
        }
      }
      break;
    }
    case NodeKind::ImaginaryUnit:
      if (auto n = e.to_int()) return imaginary_power(*n);
      break;
    case NodeKind::Power:
      if (e.is_integer()) return normalize_power(base.base(), base.exponent() * e);
      break;
    case NodeKind::Product:
      if (e.is_integer()) {
        std::vector<Expr> fs;
        for (const auto& f : base.children()) fs.push_back(normalize_power(f, e));
        return normalize_product(std::move(fs), 0);
      }
      break;
    default:
      break;
  }
  return normalized_node(NodeKind::Power, {base}, e);
}

Expr normalize_product(std::vector<Expr> factors, int depth) {
  Rational coef(1);
  long long ipow = 0;
  std::map<Expr, Rational, ExprLess> bases;
  std::vector<Expr> stack(factors.rbegin(), factors.rend());
  while (!stack.empty()) {
    Expr f = std::move(stack.back());
    stack.pop_back();
    switch (f.kind()) {
      case NodeKind::Constant:
        coef *= f.value();
        if (coef.is_zero()) return Expr(0);
        break;
      case NodeKind::ImaginaryUnit:
        ++ipow;
        break;
      case NodeKind::Product:
        for (auto it = f.children().rbegin(); it != f.children().rend(); ++it) stack.push_back(*it);
        break;
      case NodeKind::Power:
        if (f.base().kind() == NodeKind::ImaginaryUnit && f.exponent().is_integer()) {
          ipow += *f.exponent().to_int();
        } else {
          bases[f.base()] += f.exponent();
        }
        break;
      default:
        bases[f] += Rational(1);
        break;
    }
  }
  std::vector<Expr> items;
  bool renormalize = false;
  for (auto& [b, e] : bases) {
    if (e.is_zero()) continue;
    Expr item = normalize_power(b, e);
    NodeKind k = item.kind();
    if (k == NodeKind::Constant || k == NodeKind::Product || k == NodeKind::ImaginaryUnit ||
        (k == NodeKind::Power && compare(item.base(), b) != 0)) {
      renormalize = true;
    }
    items.push_back(std::move(item));
  }
  if (renormalize && depth < 8) {
    items.push_back(Expr::constant(coef));
    items.push_back(imaginary_power(ipow));
    return normalize_product(std::move(items), depth + 1);
  }
  Expr ipart = imaginary_power(ipow);
  if (ipart.kind() == NodeKind::Constant) {
    coef *= ipart.value();
  } else if (ipart.kind() == NodeKind::Product) {
    coef *= Rational(-1);
    items.push_back(Expr::imaginary_unit());
  } else {
    items.push_back(ipart);
  }
  std::sort(items.begin(), items.end(), [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
  if (items.empty()) return Expr::constant(coef);
  if (coef.is_one() && items.size() == 1) return items.front();
  std::vector<Expr> ch;
  ch.reserve(items.size() + 1);
  if (!coef.is_one()) ch.push_back(Expr::constant(coef));
  ch.insert(ch.end(), items.begin(), items.end());
  return normalized_node(NodeKind::Product, std::move(ch));
}

Expr normalize_sum(const std::vector<Expr>& terms) {
  std::vector<std::pair<Expr, Rational>> acc;
  std::unordered_map<std::size_t, std::vector<std::size_t>> index;
  Rational constant(0);
  std::vector<Expr> stack(terms.rbegin(), terms.rend());
  while (!stack.empty()) {
    Expr t = std::move(stack.back());
    stack.pop_back();
    if (t.kind() == NodeKind::Sum) {
      for (auto it = t.children().rbegin(); it != t.children().rend(); ++it) stack.push_back(*it);
      continue;
    }
    if (t.kind() == NodeKind::Constant) {
      constant += t.value();
      continue;
    }
    auto [c, rest] = split_coefficient(t);
    auto& slots = index[rest.hash()];
    bool merged = false;
    for (std::size_t s : slots) {
      if (acc[s].first == rest) {
        acc[s].second += c;
        merged = true;
        break;
      }
    }
    if (!merged) {
      slots.push_back(acc.size());
      acc.emplace_back(rest, c);
    }
  }
  std::vector<Expr> out;
  for (auto& [rest, c] : acc) {
    if (c.is_zero()) continue;
    out.push_back(with_coefficient(c, rest));
  }
  std::sort(out.begin(), out.end(), [](const Expr& a, const Expr& b) {
    int r = compare(split_coefficient(a).second, split_coefficient(b).second);
    return r != 0 ? r < 0 : compare(a, b) < 0;
  });
  if (!constant.is_zero()) out.push_back(Expr::constant(constant));
  if (out.empty()) return Expr(0);
  if (out.size() == 1) return out.front();
  return normalized_node(NodeKind::Sum, std::move(out));
}

Expr normalize_builtin(BuiltinKind kind, const Expr& arg, const Rational& order) {
  switch (kind) {
    case BuiltinKind::Sqrt:
      return normalize_power(arg, Rational(1, 2));
    case BuiltinKind::Exp:
      if (arg.is_zero()) return Expr(1);
      if (arg.kind() == NodeKind::Builtin && arg.builtin_kind() == BuiltinKind::Ln) return arg.arg();
      break;
    case BuiltinKind::Ln:
      if (arg.is_one()) return Expr(0);
      break;
    case BuiltinKind::Sin:
      if (arg.is_zero()) return Expr(0);
      break;
    case BuiltinKind::Cos:
      if (arg.is_zero()) return Expr(1);
      break;
    case BuiltinKind::BesselI:
      if (arg.is_zero()) {
        if (order.is_zero()) return Expr(1);
        if (order.sign() > 0) return Expr(0);
      }
      break;
  }
  return normalized_node(NodeKind::Builtin, {arg}, order, kind);
}

}  // namespace

Expr Expr::builtin(BuiltinKind kind, Expr arg, Rational order) { return normalize_builtin(kind, arg, order); }
Expr Expr::sum(std::vector<Expr> terms) { return normalize_sum(terms); }
Expr Expr::product(std::vector<Expr> factors) { return normalize_product(std::move(factors), 0); }
Expr Expr::power(Expr base, Rational exponent) { return normalize_power(base, exponent); }

// ---------------------------------------------------------------------------
// Accessors

NodeKind Expr::kind() const { return node_->kind; }
const Rational& Expr::value() const { return node_->value; }
const Rational& Expr::exponent() const { return node_->value; }
const Rational& Expr::order() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
const SymbolPtr& Expr::symbol() const { return node_->symbol; }
const std::vector<int>& Expr::derivs() const { return node_->derivs; }
BuiltinKind Expr::builtin_kind() const { return node_->builtin; }
const std::vector<Expr>& Expr::children() const { return node_->children; }
const Expr& Expr::base() const { return node_->children.front(); }
const Expr& Expr::arg() const { return node_->children.front(); }
bool Expr::is_zero() const { return node_->kind == NodeKind::Constant && node_->value.is_zero(); }
bool Expr::is_one() const { return node_->kind == NodeKind::Constant && node_->value.is_one(); }
std::size_t Expr::hash() const { return node_->hash; }
std::uint64_t Expr::var_mask() const { return node_->mask; }

int Expr::derivative_order() const {
  int s = 0;
  for (int d : node_->derivs) s += d;
  return s;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

int compare(const Expr& a, const Expr& b) {
  if (a.get() == b.get()) return 0;
  if (a.kind() != b.kind()) return kind_rank(a.kind()) < kind_rank(b.kind()) ? -1 : 1;
  auto cmp_children = [](const std::vector<Expr>& x, const std::vector<Expr>& y) {
    std::size_t n = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (int r = compare(x[i], y[i]); r != 0) return r;
    }
    if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
    return 0;
  };
  auto cmp_rational = [](const Rational& x, const Rational& y) {
    auto o = x <=> y;
    return o < 0 ? -1 : (o > 0 ? 1 : 0);
  };
  switch (a.kind()) {
    case NodeKind::Constant:
      return cmp_rational(a.value(), b.value());
    case NodeKind::ImaginaryUnit:
      return 0;
    case NodeKind::Variable:
      return a.name() < b.name() ? -1 : (a.name() > b.name() ? 1 : 0);
    case NodeKind::FunctionApp: {
      const auto& an = a.symbol()->name;
      const auto& bn = b.symbol()->name;
      if (an != bn) return an < bn ? -1 : 1;
      if (a.derivs() != b.derivs()) return a.derivs() < b.derivs() ? -1 : 1;
      return cmp_children(a.children(), b.children());
    }
    case NodeKind::Builtin:
      if (a.builtin_kind() != b.builtin_kind()) return a.builtin_kind() < b.builtin_kind() ? -1 : 1;
      if (int r = cmp_rational(a.order(), b.order()); r != 0) return r;
      return compare(a.arg(), b.arg());
    case NodeKind::Power:
      if (int r = compare(a.base(), b.base()); r != 0) return r;
      return cmp_rational(a.exponent(), b.exponent());
    case NodeKind::Product:
    case NodeKind::Sum:
      return cmp_children(a.children(), b.children());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Arithmetic

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return Expr::sum({a, b});
}
Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_zero()) return a;
  return Expr::sum({a, -b});
}
Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr(0);
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  return Expr::product({a, b});
}
Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw std::domain_error("symbolic division by zero");
  return a * Expr::power(b, Rational(-1));
}
Expr operator-(const Expr& a) { return Expr::product({Expr(-1), a}); }

Expr Pow(const Expr& base, const Rational& exponent) { return Expr::power(base, exponent); }
Expr Exp(const Expr& e) { return Expr::builtin(BuiltinKind::Exp, e); }
Expr Ln(const Expr& e) { return Expr::builtin(BuiltinKind::Ln, e); }
Expr Sin(const Expr& e) { return Expr::builtin(BuiltinKind::Sin, e); }
Expr Cos(const Expr& e) { return Expr::builtin(BuiltinKind::Cos, e); }
Expr Sqrt(const Expr& e) { return Expr::builtin(BuiltinKind::Sqrt, e); }
Expr BesselI(const Rational& order, const Expr& e) { return Expr::builtin(BuiltinKind::BesselI, e, order); }

// ---------------------------------------------------------------------------
// Rewriting

Expr rebuild(const Expr& e, std::vector<Expr> children) {
  switch (e.kind()) {
    case NodeKind::FunctionApp:
      return Expr::function(e.symbol(), std::move(children), e.derivs());
    case NodeKind::Builtin:
      return Expr::builtin(e.builtin_kind(), children.front(), e.order());
    case NodeKind::Power:
      return Expr::power(children.front(), e.exponent());
    case NodeKind::Product:
      return Expr::product(std::move(children));
    case NodeKind::Sum:
      return Expr::sum(std::move(children));
    default:
      return e;
  }
}

Expr transform(const Expr& e, const std::function<std::optional<Expr>(const Expr&)>& fn) {
  std::unordered_map<const Node*, Expr> memo;
  std::function<Expr(const Expr&)> rec = [&](const Expr& x) -> Expr {
    if (auto it = memo.find(x.get()); it != memo.end()) return it->second;
    Expr out;
    if (auto r = fn(x)) {
      out = *r;
    } else if (x.children().empty()) {
      out = x;
    } else {
      std::vector<Expr> ch;
      ch.reserve(x.children().size());
      bool changed = false;
      for (const auto& c : x.children()) {
        ch.push_back(rec(c));
        if (ch.back().get() != c.get()) changed = true;
      }
      out = (!changed && x.get()->normalized) ? x : rebuild(x, std::move(ch));
    }
    memo.emplace(x.get(), out);
    return out;
  };
  return rec(e);
}

Expr normalize(const Expr& e) {
  return transform(e, [](const Expr&) -> std::optional<Expr> { return std::nullopt; });
}

Expr substitute(const Expr& e, const std::vector<std::pair<std::string, Expr>>& replacements) {
  std::uint64_t mask = 0;
  for (const auto& r : replacements) mask |= name_bit(r.first);
  return transform(e, [&](const Expr& x) -> std::optional<Expr> {
    if ((x.var_mask() & mask) == 0) return x;
    if (x.kind() == NodeKind::Variable) {
      for (const auto& [name, val] : replacements) {
        if (name == x.name()) return val;
      }
      return x;
    }
    return std::nullopt;
  });
}

namespace {

template <typename Fn>
void visit_unique(const Expr& e, Fn&& fn) {
  std::unordered_map<const Node*, bool> seen;
  std::vector<Expr> stack{e};
  while (!stack.empty()) {
    Expr x = std::move(stack.back());
    stack.pop_back();
    if (!seen.emplace(x.get(), true).second) continue;
    fn(x);
    for (const auto& c : x.children()) stack.push_back(c);
  }
}

}  // namespace

std::set<std::string> free_variables(const Expr& e) {
  std::set<std::string> out;
  visit_unique(e, [&](const Expr& x) {
    if (x.kind() == NodeKind::Variable) out.insert(x.name());
  });
  return out;
}

std::vector<SymbolPtr> opaque_symbols(const Expr& e) {
  std::map<std::string, SymbolPtr> found;
  visit_unique(e, [&](const Expr& x) {
    if (x.kind() == NodeKind::FunctionApp && !x.symbol()->implicit_args) found.emplace(x.symbol()->name, x.symbol());
  });
  std::vector<SymbolPtr> out;
  for (auto& [_, s] : found) out.push_back(s);
  return out;
}

bool contains_jets(const Expr& e, int min_order) {
  bool found = false;
  visit_unique(e, [&](const Expr& x) {
    if (x.kind() == NodeKind::FunctionApp && x.symbol()->implicit_args && x.derivative_order() >= min_order) found = true;
  });
  return found;
}

bool depends_on(const Expr& e, const std::string& var) {
  if ((e.var_mask() & name_bit(var)) == 0) return false;
  return free_variables(e).count(var) > 0;
}

std::size_t node_count(const Expr& e) {
  std::size_t n = 0;
  visit_unique(e, [&](const Expr&) { ++n; });
  return n;
}

}  // namespace symred

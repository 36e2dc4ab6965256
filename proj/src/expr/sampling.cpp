#include "symred/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace symred {

double Box::measure() const {
  double m = 0;
  for (const auto& p : pieces) m += p.hi - p.lo;
  return m;
}

double Box::at(double u) const {
  double target = u * measure();
  for (const auto& p : pieces) {
    double w = p.hi - p.lo;
    if (target < w) return p.lo + target;
    target -= w;
  }
  return pieces.back().hi;
}

const Box& SamplePlan::box_for(const std::string& var) const {
  auto it = boxes.find(var);
  return it == boxes.end() ? default_box : it->second;
}

void SamplePlan::validate() const {
  if (min_accepted < 4) throw std::invalid_argument("min_accepted must be at least 4");
  if (count < min_accepted) throw std::invalid_argument("count must be at least min_accepted");
  if (seeds.empty()) throw std::invalid_argument("sample plan needs at least one seed");
  auto check = [](const Box& b) {
    if (b.pieces.empty() || b.measure() <= 0) throw std::invalid_argument("sample box has no measure");
    for (const auto& p : b.pieces) {
      if (!(p.hi > p.lo)) throw std::invalid_argument("empty sample interval");
    }
  };
  check(default_box);
  for (const auto& [_, b] : boxes) check(b);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t index, std::uint64_t stream) {
  std::uint64_t h = splitmix64(splitmix64(splitmix64(seed) ^ index) ^ stream);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

std::uint64_t hash_name(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<SamplePoint> sample_accepted(const std::vector<std::string>& vars, const SamplePlan& plan,
                                         std::uint64_t seed,
                                         const std::function<bool(const SamplePoint&)>& accept) {
  plan.validate();
  std::vector<SamplePoint> out;
  const auto budget = static_cast<std::uint64_t>(plan.count) * static_cast<std::uint64_t>(plan.max_attempts_factor);
  for (std::uint64_t a = 0; a < budget && out.size() < static_cast<std::size_t>(plan.count); ++a) {
    SamplePoint p;
    p.seed = seed;
    p.index = a;
    for (const auto& v : vars) p.coords[v] = plan.box_for(v).at(uniform01(seed, a, hash_name(v)));
    bool ok = false;
    try {
      ok = accept(p);
    } catch (const PointRejected&) {
      ok = false;
    }
    if (ok) out.push_back(std::move(p));
  }
  if (out.size() < static_cast<std::size_t>(plan.min_accepted)) {
    throw SamplingStarvation("only " + std::to_string(out.size()) + " of " + std::to_string(plan.count) +
                             " sample points accepted for seed " + std::to_string(seed));
  }
  return out;
}

Expr instantiation_polynomial(const FunctionSymbol& sym, std::uint64_t seed) {
  const std::size_t n = sym.arity();
  std::vector<int> exps(n, 0);
  std::vector<Expr> terms;
  std::uint64_t draw = 0;
  const std::uint64_t stream = hash_name(sym.name);
  // enumerate monomials of total degree <= 3 in a fixed order
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
    if (k == n) {
      double u = uniform01(seed, draw++, stream);
      auto q = static_cast<long long>(std::llround((4.0 * u - 2.0) * 1024.0));
      std::vector<Expr> fs{Expr::constant(Rational(BigInt(q), BigInt(1024)))};
      for (std::size_t j = 0; j < n; ++j) {
        if (exps[j]) fs.push_back(Pow(Expr::variable(sym.params[j]), Rational(exps[j])));
      }
      terms.push_back(Expr::product(std::move(fs)));
      return;
    }
    for (int d = 0; d <= left; ++d) {
      exps[k] = d;
      rec(k + 1, left - d);
    }
    exps[k] = 0;
  };
  rec(0, 3);
  return Expr::sum(std::move(terms));
}

Expr instantiate_with(const Expr& e, const std::map<std::string, Expr>& polys,
                      const std::map<std::string, SymbolPtr>& symbols) {
  std::map<JetId, Expr> derivs;
  return transform(e, [&](const Expr& x) -> std::optional<Expr> {
    if (x.kind() != NodeKind::FunctionApp || x.symbol()->implicit_args) return std::nullopt;
    auto it = polys.find(x.symbol()->name);
    if (it == polys.end()) return std::nullopt;
    const auto& sym = *symbols.at(x.symbol()->name);
    JetId key{sym.name, x.derivs()};
    auto d = derivs.find(key);
    if (d == derivs.end()) {
      Expr body = it->second;
      for (std::size_t k = 0; k < sym.arity(); ++k) {
        for (int m = 0; m < x.derivs()[k]; ++m) body = differentiate(body, sym.params[k]);
      }
      d = derivs.emplace(key, body).first;
    }
    std::vector<std::pair<std::string, Expr>> args;
    for (std::size_t k = 0; k < sym.arity(); ++k) {
      args.emplace_back(sym.params[k], instantiate_with(x.children()[k], polys, symbols));
    }
    return substitute(d->second, args);
  });
}

Instantiation instantiate_functions(const Expr& e, std::uint64_t seed) {
  Instantiation out;
  std::map<std::string, Expr> polys;
  std::map<std::string, SymbolPtr> symbols;
  for (const auto& s : opaque_symbols(e)) {
    polys[s->name] = instantiation_polynomial(*s, seed);
    symbols[s->name] = s;
  }
  out.expr = instantiate_with(e, polys, symbols);
  out.binding.functions = polys;
  return out;
}

std::vector<JetId> jet_coordinates(const Expr& e) {
  std::set<JetId> found;
  transform(e, [&](const Expr& x) -> std::optional<Expr> {
    if (x.kind() == NodeKind::FunctionApp && x.symbol()->implicit_args) {
      found.insert({x.symbol()->name, x.derivs()});
      return x;
    }
    return std::nullopt;
  });
  return {found.begin(), found.end()};
}

bool numeric_equiv(const Expr& e1, const Expr& e2, const SamplePlan& plan, double abs_tol, double rel_tol) {
  std::set<std::string> vs = free_variables(e1);
  for (const auto& v : free_variables(e2)) vs.insert(v);
  std::set<JetId> jets;
  for (const auto& j : jet_coordinates(e1)) jets.insert(j);
  for (const auto& j : jet_coordinates(e2)) jets.insert(j);
  std::vector<std::string> vars(vs.begin(), vs.end());
  EvalOptions opts = plan.eval_options();
  for (std::uint64_t seed : plan.seeds) {
    Instantiation a = instantiate_functions(e1, seed);
    Instantiation b = instantiate_functions(e2, seed);
    bool all_ok = true;
    sample_accepted(vars, plan, seed, [&](const SamplePoint& p) {
      Binding bind;
      for (const auto& [k, v] : p.coords) bind.values[k] = v;
      std::uint64_t stream = 0;
      for (const auto& j : jets) {
        bind.jets[j] = plan.default_box.at(uniform01(seed, p.index, 0x6a6574ull + stream++));
      }
      Complex x = evaluate(a.expr, bind, opts);
      Complex y = evaluate(b.expr, bind, opts);
      double tol = std::max(abs_tol, rel_tol * std::max(std::abs(x), std::abs(y)));
      if (std::abs(x - y) > tol) all_ok = false;
      return true;
    });
    if (!all_ok) return false;
  }
  return true;
}

}  // namespace symred

#include "symred/jet.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace symred {

int JetKey::order() const {
  int s = 0;
  for (int m : multi) s += m;
  return s;
}

VariableSpace::VariableSpace(std::vector<std::string> independents, std::vector<std::string> dependents,
                             int max_order)
    : independents_(std::move(independents)), dependents_(std::move(dependents)), max_order_(max_order) {
  for (const auto& d : dependents_) symbols_.push_back(make_symbol(d, independents_, true));
}

VariableSpace make_space(std::vector<std::string> independents, std::vector<std::string> dependents, int max_order) {
  if (independents.empty()) throw std::invalid_argument("a variable space needs at least one independent variable");
  if (dependents.empty()) throw std::invalid_argument("a variable space needs at least one dependent variable");
  if (max_order < 1) throw std::invalid_argument("jet order must be at least 1");
  std::set<std::string> seen;
  for (const auto* list : {&independents, &dependents}) {
    for (const auto& n : *list) {
      if (n.empty()) throw std::invalid_argument("empty variable name");
      if (is_reserved_name(n)) throw std::invalid_argument("'" + n + "' is a reserved name");
      if (!seen.insert(n).second) throw std::invalid_argument("duplicate variable name '" + n + "'");
    }
  }
  return VariableSpace(std::move(independents), std::move(dependents), max_order);
}

std::optional<std::size_t> VariableSpace::dependent_index(const std::string& name) const {
  auto it = std::find(dependents_.begin(), dependents_.end(), name);
  if (it == dependents_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - dependents_.begin());
}

std::optional<std::size_t> VariableSpace::independent_index(const std::string& name) const {
  auto it = std::find(independents_.begin(), independents_.end(), name);
  if (it == independents_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - independents_.begin());
}

Expr VariableSpace::du(std::size_t alpha, std::size_t i) const {
  std::vector<int> m(p(), 0);
  m.at(i) = 1;
  return jet(JetKey{alpha, m});
}

Expr VariableSpace::jet(const JetKey& key) const {
  std::vector<Expr> args;
  for (const auto& n : independents_) args.push_back(Expr::variable(n));
  return Expr::function(symbols_.at(key.dependent), std::move(args), key.multi);
}

std::string VariableSpace::jet_name(const JetKey& key) const { return to_string(jet(key)); }

std::optional<JetKey> VariableSpace::key_of(const JetId& id) const {
  auto a = dependent_index(id.first);
  if (!a || id.second.size() != p()) return std::nullopt;
  return JetKey{*a, id.second};
}

std::vector<JetKey> VariableSpace::jet_keys(int n) const {
  std::vector<JetKey> out;
  std::vector<int> m(p(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == p()) {
      for (std::size_t a = 0; a < q(); ++a) out.push_back(JetKey{a, m});
      return;
    }
    for (int d = 0; d <= left; ++d) {
      m[i] = d;
      rec(i + 1, left - d);
    }
    m[i] = 0;
  };
  rec(0, n);
  std::sort(out.begin(), out.end());
  return out;
}

ParseContext VariableSpace::parse_context() const {
  ParseContext ctx;
  ctx.functions = symbols_;
  return ctx;
}

void CandidateSolution::validate(const VariableSpace& space) const {
  for (const auto& [dep, e] : values) {
    if (!space.dependent_index(dep)) throw AnalysisError("candidate '" + name + "' assigns unknown dependent '" + dep + "'");
    if (contains_jets(e)) {
      throw AnalysisError("candidate '" + name + "' value for '" + dep + "' refers to dependent variables");
    }
  }
  for (const auto& l : excluded) {
    if (contains_jets(l)) throw AnalysisError("excluded locus of candidate '" + name + "' refers to dependent variables");
  }
}

namespace {

// Derivatives of the candidate's values by multi-index, built from parents.
class DerivativeTable {
 public:
  DerivativeTable(const VariableSpace& space, std::map<std::size_t, Expr> base) : space_(space) {
    for (auto& [a, e] : base) table_[JetKey{a, std::vector<int>(space.p(), 0)}] = e;
  }

  const Expr* get(const JetKey& key) {
    if (auto it = table_.find(key); it != table_.end()) return &it->second;
    if (key.order() == 0) return nullptr;
    JetKey parent = key;
    std::size_t i = 0;
    while (parent.multi[i] == 0) ++i;
    --parent.multi[i];
    const Expr* pe = get(parent);
    if (!pe) return nullptr;
    Expr d = differentiate(*pe, space_.independents()[i]);
    return &table_.emplace(key, std::move(d)).first->second;
  }

 private:
  const VariableSpace& space_;
  std::map<JetKey, Expr> table_;
};

std::map<std::size_t, Expr> candidate_base(const CandidateSolution& c, const VariableSpace& space,
                                           std::optional<std::uint64_t> seed) {
  std::map<std::size_t, Expr> base;
  for (const auto& [dep, e] : c.values) {
    auto a = space.dependent_index(dep);
    if (!a) throw AnalysisError("candidate '" + c.name + "' assigns unknown dependent '" + dep + "'");
    base[*a] = seed ? instantiate_functions(e, *seed).expr : e;
  }
  return base;
}

}  // namespace

Expr substitute_candidate(const Expr& e, const CandidateSolution& c, const VariableSpace& space) {
  DerivativeTable table(space, candidate_base(c, space, std::nullopt));
  return transform(e, [&](const Expr& x) -> std::optional<Expr> {
    if (x.kind() != NodeKind::FunctionApp || !x.symbol()->implicit_args) return std::nullopt;
    auto a = space.dependent_index(x.symbol()->name);
    if (!a) return std::nullopt;
    const Expr* v = table.get(JetKey{*a, x.derivs()});
    if (!v) throw AnalysisError("candidate '" + c.name + "' does not assign '" + x.symbol()->name + "'");
    std::vector<std::pair<std::string, Expr>> args;
    bool formal = true;
    for (std::size_t i = 0; i < space.p(); ++i) {
      const Expr& arg = x.children()[i];
      if (arg.kind() != NodeKind::Variable || arg.name() != space.independents()[i]) formal = false;
      args.emplace_back(space.independents()[i], arg);
    }
    return formal ? *v : substitute(*v, args);
  });
}

Binding JetPoint::binding(const VariableSpace& space) const {
  Binding b;
  for (std::size_t i = 0; i < space.p(); ++i) b.values[space.independents()[i]] = x[i];
  b.jets = jets;
  return b;
}

const Expr& SeededEvaluator::instantiated(const Expr& e) {
  auto it = cache_.find(e.get());
  if (it == cache_.end()) {
    Expr inst = opaque_symbols(e).empty() ? e : instantiate_functions(e, seed_).expr;
    it = cache_.emplace(e.get(), std::make_pair(e, inst)).first;
  }
  return it->second.second;
}

Complex SeededEvaluator::operator()(const Expr& e, const JetPoint& pt) {
  return evaluate(instantiated(e), pt.binding(space_), opts_);
}

SamplePlan plan_for(const CandidateSolution& c, const SamplePlan& plan) {
  SamplePlan out = plan;
  for (const auto& [v, b] : c.boxes) out.boxes[v] = b;
  return out;
}

std::vector<JetPoint> sample_points(const CandidateSolution& c, const SamplePlan& plan_in, int order,
                                    const VariableSpace& space, const std::vector<Expr>& extra) {
  if (order > space.max_order()) throw AnalysisError("requested jet order exceeds the space order");
  c.validate(space);
  for (std::size_t a = 0; a < space.q(); ++a) {
    if (!c.values.count(space.dependents()[a])) {
      throw AnalysisError("candidate '" + c.name + "' does not assign '" + space.dependents()[a] + "'");
    }
  }
  SamplePlan plan = plan_for(c, plan_in);
  EvalOptions opts = plan.eval_options();
  const auto keys = space.jet_keys(order);
  std::vector<JetPoint> out;
  for (std::uint64_t seed : plan.seeds) {
    DerivativeTable table(space, candidate_base(c, space, seed));
    std::vector<Expr> slot;
    for (const auto& k : keys) slot.push_back(*table.get(k));
    std::vector<Expr> loci;
    for (const auto& l : c.excluded) loci.push_back(instantiate_functions(l, seed).expr);
    SeededEvaluator extra_eval(space, seed, opts);
    auto pts = sample_accepted(space.independents(), plan, seed, [&](const SamplePoint& sp) {
      Binding b;
      for (const auto& [k, v] : sp.coords) b.values[k] = v;
      for (const auto& l : loci) {
        if (std::abs(evaluate(l, b, opts)) <= plan.eps_sing) return false;
      }
      JetPoint jp;
      jp.candidate = c.name;
      jp.seed = seed;
      jp.index = sp.index;
      for (const auto& v : space.independents()) jp.x.push_back(sp.coords.at(v));
      for (std::size_t s = 0; s < keys.size(); ++s) jp.jets[space.jet_id(keys[s])] = evaluate(slot[s], b, opts);
      for (const auto& e : extra) extra_eval(e, jp);
      out.push_back(std::move(jp));
      return true;
    });
    (void)pts;
  }
  return out;
}

std::vector<JetPoint> sample_free_points(const VariableSpace& space, const SamplePlan& plan, int order,
                                         const std::vector<Expr>& extra) {
  EvalOptions opts = plan.eval_options();
  const auto keys = space.jet_keys(order);
  std::vector<JetPoint> out;
  for (std::uint64_t seed : plan.seeds) {
    SeededEvaluator extra_eval(space, seed, opts);
    sample_accepted(space.independents(), plan, seed, [&](const SamplePoint& sp) {
      JetPoint jp;
      jp.candidate = "";
      jp.seed = seed;
      jp.index = sp.index;
      for (const auto& v : space.independents()) jp.x.push_back(sp.coords.at(v));
      for (const auto& k : keys) {
        std::string name = space.jet_name(k);
        const Box& box = k.order() == 0 ? plan.box_for(space.dependents()[k.dependent]) : plan.default_box;
        jp.jets[space.jet_id(k)] = box.at(uniform01(seed, sp.index, hash_name(name)));
      }
      for (const auto& e : extra) extra_eval(e, jp);
      out.push_back(std::move(jp));
      return true;
    });
  }
  return out;
}

std::string jet_point_json(const JetPoint& pt, const VariableSpace& space) {
  nlohmann::ordered_json j;
  j["candidate"] = pt.candidate;
  j["seed"] = pt.seed;
  j["index"] = pt.index;
  j["x"] = pt.x;
  auto jets = nlohmann::ordered_json::array();
  for (const auto& k : space.jet_keys(space.max_order())) {
    auto it = pt.jets.find(space.jet_id(k));
    if (it == pt.jets.end()) continue;
    jets.push_back({space.jet_name(k), it->second.real(), it->second.imag()});
  }
  j["jets"] = jets;
  return j.dump();
}

}  // namespace symred

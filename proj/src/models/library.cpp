#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "models/sources.hpp"
#include "symred/models.hpp"

namespace symred {

std::vector<std::string> builtin_ids() {
  std::vector<std::string> out;
  for (const auto& s : models::sources()) out.emplace_back(s.id);
  return out;
}

namespace {

const models::Source& find_source(const std::string& id) {
  for (const auto& s : models::sources()) {
    if (id == s.id) return s;
  }
  throw AnalysisError("unknown built-in model '" + id + "'");
}

}  // namespace

std::string builtin_source(const std::string& id) { return find_source(id).text; }

ModelEntry builtin(const std::string& id, const std::map<std::string, Rational>& overrides) {
  const auto& s = find_source(id);
  return {s.id, s.title, parse_workspace(s.text, overrides)};
}

Workspace load_workspace(const std::string& location, const std::map<std::string, Rational>& overrides) {
  const std::string prefix = "builtin:";
  if (location.rfind(prefix, 0) == 0) return builtin(location.substr(prefix.size()), overrides).workspace;
  std::ifstream in(location);
  if (!in) throw AnalysisError("cannot read workspace file '" + location + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_workspace(ss.str(), overrides);
}

SamplePlan default_plan(const Workspace& ws) {
  if (const auto* p = ws.plans.find("default")) return *p;
  return {};
}

std::map<std::string, Rational> draw_params(const Workspace& ws, std::uint64_t seed,
                                            const std::vector<std::string>& names) {
  std::map<std::string, Rational> out;
  for (const auto& [name, p] : ws.params) {
    if (!p.range) continue;
    if (!names.empty() && std::find(names.begin(), names.end(), name) == names.end()) continue;
    const auto& [lo, hi] = *p.range;
    double u = uniform01(seed, 0, hash_name(name));
    auto steps = static_cast<long long>(std::floor(u * (hi - lo).to_double() * 64));
    Rational v = lo + Rational(steps) / Rational(64);
    if (v.is_zero() || (name == "k" && v.is_one())) v = v + Rational(1) / Rational(64);
    if (v > hi) v = hi;
    out[name] = v;
  }
  return out;
}

}  // namespace symred

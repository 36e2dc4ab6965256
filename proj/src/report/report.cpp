#include "symred/report.hpp"

namespace symred {

namespace {

Json box_json(const Box& b) {
  Json out = Json::array();
  for (const auto& p : b.pieces) out.push_back({p.lo, p.hi});
  return out;
}

Json labelled(const std::vector<std::string>& labels, const std::vector<double>& values) {
  Json out = Json::array();
  for (std::size_t i = 0; i < values.size(); ++i) out.push_back({{"equation", labels.at(i)}, {"max_abs", values[i]}});
  return out;
}

}  // namespace

Json to_json(const SamplePlan& p) {
  Json boxes = Json::object();
  for (const auto& [v, b] : p.boxes) boxes[v] = box_json(b);
  return {{"count", p.count},
          {"min_accepted", p.min_accepted},
          {"seeds", p.seeds},
          {"eps_sing", p.eps_sing},
          {"rank_tol", p.rank_tol},
          {"branch", p.branch == Branch::Principal ? "complex" : "real"},
          {"default_box", box_json(p.default_box)},
          {"boxes", boxes}};
}

Json to_json(const ExpressionMatrix& m) {
  Json rows = Json::array();
  for (const auto& row : m.entries) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(to_string(e));
    rows.push_back(r);
  }
  return {{"id", m.id}, {"row_labels", m.row_labels}, {"col_labels", m.col_labels}, {"entries", rows}};
}

Json to_json(const RankReport& r) {
  Json seeds = Json::array();
  for (const auto& s : r.per_seed) seeds.push_back({{"seed", s.seed}, {"points", s.points}, {"ranks", s.ranks}});
  return {{"matrix_id", r.matrix_id}, {"rows", r.rows},           {"cols", r.cols},
          {"per_seed", seeds},        {"generic_rank", r.generic_rank}, {"tolerance", r.tolerance},
          {"non_generic", r.non_generic}};
}

Json to_json(const TransversalityReport& r) {
  Json j = {{"algebra", r.algebra},
            {"rank_xi1", r.xi1.generic_rank},
            {"rank_xi2", r.xi2.generic_rank},
            {"status", to_string(r.status)},
            {"xi1", to_json(r.xi1)},
            {"xi2", to_json(r.xi2)}};
  if (r.candidate) {
    j["candidate"] = *r.candidate;
    j["weak"] = to_string(*r.weak);
    j["xi1_on_candidate"] = to_json(*r.xi1_on_candidate);
    j["xi2_on_candidate"] = to_json(*r.xi2_on_candidate);
  }
  return j;
}

Json to_json(const DefectReport& r) {
  return {{"algebra", r.algebra}, {"candidate", r.candidate},
          {"delta", r.delta},     {"s", r.s},
          {"m0", r.m0},           {"classification", to_string(r.classification)},
          {"non_generic", r.non_generic}, {"q_rank", to_json(r.q_rank)}};
}

Json to_json(const MinorsReport& r) {
  Json minors = Json::array();
  for (std::size_t i = 0; i < r.minors.size(); ++i) {
    minors.push_back({{"rows", r.positions[i].first}, {"cols", r.positions[i].second}, {"expr", to_string(r.minors[i])}});
  }
  return {{"algebra", r.algebra}, {"rho", r.rho}, {"size", r.size}, {"examined", r.examined}, {"minors", minors}};
}

Json to_json(const WeakCheck& r) {
  return {{"holds", r.holds}, {"max_abs", r.max_abs}, {"points", r.points}, {"minors", r.minors}};
}

Json to_json(const KernelReport& r) {
  Json j = {{"algebra", r.algebra},
            {"candidate", r.candidate},
            {"generator_order", r.generator_order},
            {"pointwise_kernel_dim", r.pointwise_kernel_dim},
            {"pointwise_kernel_dims", r.pointwise_kernel_dims},
            {"constant_kernel", r.constant_kernel},
            {"points", r.points}};
  j["matched"] = r.matched ? Json(*r.matched) : Json(nullptr);
  j["match_distance"] = r.match_distance;
  return j;
}

Json to_json(const SymmetryCheck& r) {
  return {{"holds", r.holds}, {"donor_residual", r.donor_residual}, {"max_abs", r.max_abs}, {"points", r.points}};
}

Json to_json(const ClosureReport& r, const Algebra& a, const Algebra& within) {
  Json brackets = Json::array();
  for (const auto& b : r.brackets) {
    Json j = {{"left", a.fields.at(b.left).name}, {"right", a.fields.at(b.right).name}};
    if (b.skipped) {
      j["skipped"] = true;
    } else {
      j["coefficients"] = b.coefficients;
      j["residual"] = b.residual;
      j["fitted"] = b.fitted;
    }
    brackets.push_back(j);
  }
  return {{"algebra", a.name},
          {"within", within.name},
          {"basis", within.generator_names()},
          {"closed", r.closed},
          {"flagged", r.flagged},
          {"infinite_family", r.infinite_family},
          {"message", r.message},
          {"brackets", brackets}};
}

Json to_json(const ResidualReport& r) {
  return {{"system", r.system},
          {"candidate", r.candidate},
          {"points", r.points},
          {"max_abs", r.max()},
          {"equations", labelled(r.labels, r.max_abs)}};
}

Json to_json(const OdeCheck& r) {
  return {{"kind", to_string(r.kind)},
          {"k", r.k.str()},
          {"candidate", r.candidate},
          {"points", r.points},
          {"ode_residual", r.ode_residual},
          {"relation_residual", r.relation_residual},
          {"fluid_residual", r.fluid_residual}};
}

Json to_json(const ConstraintCheck& r) {
  return {{"id", r.id},
          {"candidate", r.candidate},
          {"points", r.points},
          {"constraints", labelled(r.constraint_labels, r.constraint_max)},
          {"full", labelled(r.full_labels, r.full_max)},
          {"transfer_max", r.transfer_max},
          {"transfer_rank", r.transfer_rank},
          {"equivalent", r.equivalent}};
}

Json to_json(const DiscrepancyReport& r) {
  Json j = {{"system", r.system},
            {"candidate", r.candidate},
            {"tol", r.tol},
            {"passes", r.passes},
            {"equations", labelled(r.labels, r.max_abs)}};
  if (r.equation) {
    Json point = Json::object();
    for (const auto& [v, x] : r.point) point[v] = x;
    Json terms = Json::array();
    for (const auto& t : r.terms) {
      terms.push_back({{"term", t.term}, {"symbolic", t.symbolic}, {"finite_difference", t.finite_difference}});
    }
    j["first_failing"] = {{"equation", *r.equation},
                          {"seed", r.seed},
                          {"point", point},
                          {"symbolic_residual", r.symbolic_residual},
                          {"fd_residual", r.fd_residual},
                          {"dominant_term", r.dominant_term},
                          {"terms", terms}};
  }
  return j;
}

Json envelope(const std::string& command, const SamplePlan& plan, Json report) {
  return {{"schema", kReportSchema}, {"command", command}, {"plan", to_json(plan)}, {"report", std::move(report)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace symred

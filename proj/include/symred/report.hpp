#pragma once

#include <string>

#include "json.hpp"
#include "symred/fields.hpp"
#include "symred/models.hpp"
#include "symred/rank.hpp"

namespace symred {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

Json to_json(const RankReport& r);
Json to_json(const TransversalityReport& r);
Json to_json(const DefectReport& r);
Json to_json(const MinorsReport& r);
Json to_json(const WeakCheck& r);
Json to_json(const KernelReport& r);
Json to_json(const SymmetryCheck& r);
Json to_json(const ClosureReport& r, const Algebra& a, const Algebra& within);
Json to_json(const ResidualReport& r);
Json to_json(const OdeCheck& r);
Json to_json(const ConstraintCheck& r);
Json to_json(const DiscrepancyReport& r);
Json to_json(const SamplePlan& p);
Json to_json(const ExpressionMatrix& m);

/// {"schema": 1, "command": ..., "plan": ..., "report": ...}
Json envelope(const std::string& command, const SamplePlan& plan, Json report);

/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

}  // namespace symred

#pragma once

// JSON renderings of library values. Every coordinate is 1-based.

#include <json.hpp>

#include "patex/enumerate.hpp"
#include "patex/extremal.hpp"
#include "patex/matrix.hpp"
#include "patex/mnl.hpp"

namespace patex {

/// {"rows": r, "cols": c, "data": ["0101", ...]}
void to_json(nlohmann::json& j, const Matrix01& m);
/// Throws Error(Parse) on a malformed rendering.
Matrix01 matrix_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const Embedding& e);
void to_json(nlohmann::json& j, const ForbiddenHit& hit);
void to_json(nlohmann::json& j, const PotentiallyMnlReport& r);
void to_json(nlohmann::json& j, const MnlCheckReport& r);
void to_json(nlohmann::json& j, const NecessaryConditionsReport& r);
void to_json(nlohmann::json& j, const ReductionTrace& t);
void to_json(nlohmann::json& j, const CrossViolation& v);
void to_json(nlohmann::json& j, const StripQuery& q);
void to_json(nlohmann::json& j, const TemplateMatch& t);
void to_json(nlohmann::json& j, const GrowthTable& t);

/// value, exact and witness; `with_stats` adds nodes and elapsed time.
nlohmann::json extremal_json(const ExtremalResult& r, bool with_stats);

/// {"k": k, "emitted": n, "nodes": n, "pruned": {...}, ...}
nlohmann::json stats_trailer(const CandidateStream& s);

nlohmann::json verification_json(const BoundsVerification& v);

}  // namespace patex

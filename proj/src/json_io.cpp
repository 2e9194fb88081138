#include "patex/json_io.hpp"

#include "patex/error.hpp"

namespace patex {

using nlohmann::json;

namespace {

json one_based(const std::vector<std::size_t>& v) {
  json out = json::array();
  for (std::size_t x : v) out.push_back(x + 1);
  return out;
}

json cell_json(const Cell& c) { return json::array({c.row + 1, c.col + 1}); }

json optional_column(const std::optional<std::size_t>& c) {
  if (!c) return json{{"passed", true}};
  return json{{"passed", false}, {"column", *c + 1}};
}

}  // namespace

void to_json(json& j, const Matrix01& m) {
  json data = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::string row;
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.get(r, c) ? '1' : '0');
    data.push_back(std::move(row));
  }
  j = json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix01 matrix_from_json(const json& j) {
  auto bad = [](const std::string& what) { return Error(ErrorKind::Parse, "matrix JSON: " + what); };
  if (!j.is_object()) throw bad("expected an object");
  if (!j.contains("rows") || !j["rows"].is_number_unsigned()) throw bad("missing \"rows\"");
  if (!j.contains("cols") || !j["cols"].is_number_unsigned()) throw bad("missing \"cols\"");
  if (!j.contains("data") || !j["data"].is_array()) throw bad("missing \"data\"");
  const auto rows = j["rows"].get<std::size_t>();
  const auto cols = j["cols"].get<std::size_t>();
  const auto& data = j["data"];
  if (data.size() != rows) throw bad("\"data\" has " + std::to_string(data.size()) + " rows, expected " + std::to_string(rows));
  if (rows == 0 || cols == 0 || rows > kMaxDim || cols > kMaxDim) throw bad("dimensions out of range");
  Matrix01 m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!data[r].is_string()) throw bad("row " + std::to_string(r + 1) + " is not a string");
    const auto s = data[r].get<std::string>();
    if (s.size() != cols) throw bad("row " + std::to_string(r + 1) + " has width " + std::to_string(s.size()));
    for (std::size_t c = 0; c < cols; ++c) {
      if (s[c] == '1') m.set(r, c);
      else if (s[c] != '0') throw bad("row " + std::to_string(r + 1) + " has a character other than 0/1");
    }
  }
  return m;
}

void to_json(json& j, const Embedding& e) {
  j = json{{"rows", one_based(e.rows)}, {"cols", one_based(e.cols)}};
}

void to_json(json& j, const ForbiddenHit& hit) {
  j = json{{"pattern", std::string(pattern_name(hit.pattern))},
           {"symmetry", std::string(symmetry_name(hit.symmetry))},
           {"image", hit.image},
           {"embedding", hit.embedding}};
}

void to_json(json& j, const PotentiallyMnlReport& r) {
  json cond1 = r.cond1 ? json{{"passed", false}, {"violation", *r.cond1}} : json{{"passed", true}};
  j = json{{"passed", r.passed()},
           {"cond1", std::move(cond1)},
           {"cond2", optional_column(r.cond2_column)},
           {"cond3", optional_column(r.cond3_column)},
           {"cond4", optional_column(r.cond4_column)}};
}

void to_json(json& j, const MnlCheckReport& r) {
  json lemmas = json::object();
  for (const auto& f : r.lemma_results) {
    json cells = json::array();
    for (const auto& c : f.cells) cells.push_back(cell_json(c));
    lemmas[f.check] = json{{"passed", f.passed}, {"detail", f.detail}, {"cells", std::move(cells)}};
  }
  j = json{{"passed", r.passed()}, {"potentially_mnl", r.conditions}, {"lemma_results", std::move(lemmas)}};
}

void to_json(json& j, const NecessaryConditionsReport& r) {
  j = json{{"passed", r.passed()}, {"direct", r.direct}, {"transposed", r.transposed}};
}

void to_json(json& j, const ReductionTrace& t) {
  json removed = json::array();
  for (const auto& c : t.removed_columns)
    removed.push_back(json{{"column", c.column + 1},
                           {"reason", std::string(removal_reason_name(c.reason))},
                           {"ones", c.ones}});
  j = json{{"selected_row", t.selected_row + 1},
           {"row_ones", json{{"count", t.row_one_columns.size()}, {"columns", one_based(t.row_one_columns)}}},
           {"removed_columns", std::move(removed)},
           {"ones_deleted", t.ones_deleted},
           {"result", t.result},
           {"claims_hold", t.claims_hold()},
           {"discrepancies", t.discrepancies()}};
}

void to_json(json& j, const CrossViolation& v) {
  j = json{{"cross", json{{"rows", json::array({v.cross.r1 + 1, v.cross.r2 + 1, v.cross.r3 + 1})},
                          {"cols", json::array({v.cross.c1 + 1, v.cross.c2 + 1, v.cross.c3 + 1})}}},
           {"cell", cell_json(v.cell)}};
}

void to_json(json& j, const StripQuery& q) {
  j = json{{"row", q.row + 1}, {"left", q.left + 1}, {"right", q.right + 1}, {"gap", q.gap()}};
}

void to_json(json& j, const TemplateMatch& t) {
  j = json{{"template", t.template_id},
           {"symmetry", std::string(symmetry_name(t.symmetry))},
           {"column_anchor", one_based(t.column_anchor)}};
}

void to_json(json& j, const GrowthTable& t) {
  json entries = json::array();
  for (const auto& e : t.entries)
    entries.push_back(json{{"n", e.n}, {"value", e.value}, {"exact", e.exact}, {"ratio", e.ratio}});
  j = json{{"pattern", t.pattern}, {"entries", std::move(entries)}};
}

json extremal_json(const ExtremalResult& r, bool with_stats) {
  json j{{"n", r.n},
         {"pattern", r.pattern},
         {"value", r.value},
         {"exact", r.exact},
         {"witness", r.witness}};
  if (with_stats) {
    j["nodes_explored"] = r.nodes_explored;
    j["elapsed_ms"] = std::chrono::duration<double, std::milli>(r.elapsed).count();
  }
  return j;
}

json stats_trailer(const CandidateStream& s) {
  return json{{"k", s.k},
              {"emitted", s.emitted.size()},
              {"nodes", s.stats.nodes},
              {"pruned", s.stats.pruned},
              {"complete", s.stats.complete},
              {"max_ones", s.stats.max_ones},
              {"max_cols", s.stats.max_cols},
              {"widest_prefix", s.stats.widest_prefix},
              {"bound_violations", s.stats.bound_violations.size()}};
}

json verification_json(const BoundsVerification& v) {
  json failures = json::array();
  for (const auto& [m, problems] : v.reduction_failures)
    failures.push_back(json{{"matrix", m}, {"discrepancies", problems}});
  return json{{"passed", v.passed()},
              {"k", v.stream.k},
              {"candidates", v.stream.emitted.size()},
              {"ones_bound", v.ones_bound},
              {"cols_bound", v.cols_bound},
              {"max_ones", v.stream.stats.max_ones},
              {"max_cols", v.stream.stats.max_cols},
              {"complete", v.stream.stats.complete},
              {"bound_violations", v.stream.stats.bound_violations.size()},
              {"reductions_checked", v.reductions_checked},
              {"reduction_failures", std::move(failures)}};
}

}  // namespace patex

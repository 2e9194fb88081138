#include "patex/patex.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include <json.hpp>

#include "patex/cache.hpp"
#include "patex/containment.hpp"
#include "patex/enumerate.hpp"
#include "patex/error.hpp"
#include "patex/extremal.hpp"
#include "patex/json_io.hpp"
#include "patex/mnl.hpp"
#include "patex/symmetry.hpp"

struct patex_matrix {
  patex::Matrix01 m;
};

struct patex_ex_result {
  patex::ExtremalResult r;
  patex_matrix witness;
  bool cache_hit = false;
  std::vector<std::string> warnings;
};

struct patex_candidates {
  patex::CandidateStream stream;
  std::vector<patex_matrix> items;
};

namespace {

thread_local std::string last_error;

patex_status fail(patex_status status, const std::string& message) {
  last_error = message;
  return status;
}

patex_status status_of(patex::ErrorKind kind) {
  switch (kind) {
    case patex::ErrorKind::Parse: return PATEX_ERR_PARSE;
    case patex::ErrorKind::Catalog: return PATEX_ERR_CATALOG;
    case patex::ErrorKind::SizeGuard: return PATEX_ERR_SIZE_GUARD;
    case patex::ErrorKind::Precondition: return PATEX_ERR_PRECONDITION;
    case patex::ErrorKind::Domain: return PATEX_ERR_DOMAIN;
    case patex::ErrorKind::Io: return PATEX_ERR_IO;
  }
  return PATEX_ERR_INTERNAL;
}

template <class F>
patex_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return PATEX_OK;
  } catch (const patex::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PATEX_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PATEX_ERR_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

#define PATEX_REQUIRE(ptr) \
  if (!(ptr)) return fail(PATEX_ERR_NULL_ARG, "argument '" #ptr "' is null")

patex_status contains_impl(bool brute, const patex_matrix* haystack, const patex_matrix* needle,
                           int* found, size_t* row_map, size_t* col_map) {
  PATEX_REQUIRE(haystack);
  PATEX_REQUIRE(needle);
  PATEX_REQUIRE(found);
  return guarded([&] {
    auto e = brute ? patex::contains_bruteforce(haystack->m, needle->m)
                   : patex::contains(haystack->m, needle->m);
    *found = e ? 1 : 0;
    if (!e) return;
    if (row_map)
      for (std::size_t i = 0; i < e->rows.size(); ++i) row_map[i] = e->rows[i] + 1;
    if (col_map)
      for (std::size_t i = 0; i < e->cols.size(); ++i) col_map[i] = e->cols[i] + 1;
  });
}

patex::EnumerationOptions convert(const patex_enum_options& o) {
  patex::EnumerationOptions out;
  out.k = o.k;
  if (o.max_cols) out.max_cols = o.max_cols;
  out.filters = o.filters;
  out.threads = o.threads ? o.threads : 1;
  out.node_budget = o.node_budget;
  return out;
}

}  // namespace

extern "C" {

const char* patex_last_error(void) { return last_error.c_str(); }

const char* patex_status_name(patex_status status) {
  switch (status) {
    case PATEX_OK: return "ok";
    case PATEX_ERR_PARSE: return "parse error";
    case PATEX_ERR_CATALOG: return "unknown catalog id";
    case PATEX_ERR_SIZE_GUARD: return "size guard";
    case PATEX_ERR_PRECONDITION: return "precondition violated";
    case PATEX_ERR_DOMAIN: return "domain error";
    case PATEX_ERR_IO: return "I/O error";
    case PATEX_ERR_NULL_ARG: return "null argument";
    case PATEX_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void patex_string_free(char* s) { std::free(s); }

const char* patex_version(void) { return "0.1.0"; }

patex_status patex_matrix_parse(const char* text, patex_matrix** out) {
  PATEX_REQUIRE(text);
  PATEX_REQUIRE(out);
  return guarded([&] { *out = new patex_matrix{patex::parse_matrix(text)}; });
}

patex_status patex_matrix_from_json(const char* json, patex_matrix** out) {
  PATEX_REQUIRE(json);
  PATEX_REQUIRE(out);
  return guarded([&] {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
      throw patex::Error(patex::ErrorKind::Parse, std::string("matrix JSON: ") + e.what());
    }
    *out = new patex_matrix{patex::matrix_from_json(j)};
  });
}

patex_status patex_matrix_builtin(const char* name, patex_matrix** out) {
  PATEX_REQUIRE(name);
  PATEX_REQUIRE(out);
  return guarded([&] { *out = new patex_matrix{patex::builtin_pattern(std::string_view(name))}; });
}

patex_status patex_matrix_new(size_t rows, size_t cols, patex_matrix** out) {
  PATEX_REQUIRE(out);
  return guarded([&] { *out = new patex_matrix{patex::Matrix01(rows, cols)}; });
}

patex_status patex_matrix_clone(const patex_matrix* m, patex_matrix** out) {
  PATEX_REQUIRE(m);
  PATEX_REQUIRE(out);
  return guarded([&] { *out = new patex_matrix{m->m}; });
}

void patex_matrix_free(patex_matrix* m) { delete m; }

size_t patex_matrix_rows(const patex_matrix* m) { return m ? m->m.rows() : 0; }
size_t patex_matrix_cols(const patex_matrix* m) { return m ? m->m.cols() : 0; }
size_t patex_matrix_ones(const patex_matrix* m) { return m ? m->m.ones() : 0; }

patex_status patex_matrix_get(const patex_matrix* m, size_t row, size_t col, int* value) {
  PATEX_REQUIRE(m);
  PATEX_REQUIRE(value);
  if (row >= m->m.rows() || col >= m->m.cols())
    return fail(PATEX_ERR_DOMAIN, "cell (" + std::to_string(row) + ", " + std::to_string(col) +
                                      ") outside a " + std::to_string(m->m.rows()) + "x" +
                                      std::to_string(m->m.cols()) + " matrix");
  *value = m->m.get(row, col) ? 1 : 0;
  return PATEX_OK;
}

patex_status patex_matrix_set(patex_matrix* m, size_t row, size_t col, int value) {
  PATEX_REQUIRE(m);
  if (row >= m->m.rows() || col >= m->m.cols())
    return fail(PATEX_ERR_DOMAIN, "cell (" + std::to_string(row) + ", " + std::to_string(col) +
                                      ") outside a " + std::to_string(m->m.rows()) + "x" +
                                      std::to_string(m->m.cols()) + " matrix");
  m->m.set(row, col, value != 0);
  return PATEX_OK;
}

int patex_matrix_equal(const patex_matrix* a, const patex_matrix* b) {
  return a && b && a->m == b->m;
}

patex_status patex_matrix_format(const patex_matrix* m, char** out) {
  PATEX_REQUIRE(m);
  PATEX_REQUIRE(out);
  return guarded([&] { *out = dup(patex::format_matrix(m->m)); });
}

patex_status patex_matrix_to_json(const patex_matrix* m, char** out) {
  PATEX_REQUIRE(m);
  PATEX_REQUIRE(out);
  return guarded([&] { *out = dup(nlohmann::json(m->m).dump()); });
}

patex_status patex_matrix_key(const patex_matrix* m, char** out) {
  PATEX_REQUIRE(m);
  PATEX_REQUIRE(out);
  return guarded([&] { *out = dup(patex::matrix_key(m->m)); });
}

patex_status patex_matrix_apply_symmetry(const patex_matrix* m, const char* symmetry,
                                         patex_matrix** out) {
  PATEX_REQUIRE(m);
  PATEX_REQUIRE(symmetry);
  PATEX_REQUIRE(out);
  auto op = patex::symmetry_from_name(symmetry);
  if (!op) return fail(PATEX_ERR_DOMAIN, std::string("unknown symmetry '") + symmetry + "'");
  return guarded([&] { *out = new patex_matrix{patex::apply(*op, m->m)}; });
}

patex_status patex_matrix_canonical(const patex_matrix* m, patex_matrix** out) {
  PATEX_REQUIRE(m);
  PATEX_REQUIRE(out);
  return guarded([&] { *out = new patex_matrix{patex::canonical_form(m->m)}; });
}

patex_status patex_contains(const patex_matrix* haystack, const patex_matrix* needle, int* found,
                            size_t* row_map, size_t* col_map) {
  return contains_impl(false, haystack, needle, found, row_map, col_map);
}

patex_status patex_contains_bruteforce(const patex_matrix* haystack, const patex_matrix* needle,
                                       int* found, size_t* row_map, size_t* col_map) {
  return contains_impl(true, haystack, needle, found, row_map, col_map);
}

patex_status patex_ex_exact(size_t n, const patex_matrix* pattern, uint64_t node_budget,
                            patex_ex_result** out) {
  PATEX_REQUIRE(pattern);
  PATEX_REQUIRE(out);
  return guarded([&] {
    auto r = patex::ex_exact(n, pattern->m, node_budget);
    patex_matrix w{r.witness};
    *out = new patex_ex_result{std::move(r), std::move(w), false, {}};
  });
}

patex_status patex_ex_cached(size_t n, const patex_matrix* pattern, const char* cache_path,
                             uint64_t node_budget, uint64_t seed, patex_ex_result** out) {
  PATEX_REQUIRE(pattern);
  PATEX_REQUIRE(out);
  return guarded([&] {
    std::optional<std::filesystem::path> path;
    if (!cache_path)
      path = patex::default_cache_path();
    else if (*cache_path)
      path = cache_path;
    auto c = patex::cache_lookup_or_compute(n, pattern->m, path, node_budget, seed);
    patex_matrix w{c.result.witness};
    *out = new patex_ex_result{std::move(c.result), std::move(w), c.cache_hit,
                               std::move(c.warnings)};
  });
}

patex_status patex_ex_greedy(size_t n, const patex_matrix* pattern, uint64_t seed,
                             patex_ex_result** out) {
  PATEX_REQUIRE(pattern);
  PATEX_REQUIRE(out);
  return guarded([&] {
    auto r = patex::ex_lower_greedy(n, pattern->m, seed);
    patex_matrix w{r.witness};
    *out = new patex_ex_result{std::move(r), std::move(w), false, {}};
  });
}

patex_status patex_ex_bruteforce(size_t n, const patex_matrix* pattern, size_t* value) {
  PATEX_REQUIRE(pattern);
  PATEX_REQUIRE(value);
  return guarded([&] { *value = patex::ex_bruteforce(n, pattern->m); });
}

void patex_ex_free(patex_ex_result* r) { delete r; }

size_t patex_ex_value(const patex_ex_result* r) { return r ? r->r.value : 0; }
int patex_ex_is_exact(const patex_ex_result* r) { return r && r->r.exact; }
uint64_t patex_ex_nodes(const patex_ex_result* r) { return r ? r->r.nodes_explored : 0; }
double patex_ex_elapsed_ms(const patex_ex_result* r) {
  return r ? std::chrono::duration<double, std::milli>(r->r.elapsed).count() : 0.0;
}
const patex_matrix* patex_ex_witness(const patex_ex_result* r) { return r ? &r->witness : nullptr; }
int patex_ex_cache_hit(const patex_ex_result* r) { return r && r->cache_hit; }
size_t patex_ex_warning_count(const patex_ex_result* r) { return r ? r->warnings.size() : 0; }
const char* patex_ex_warning(const patex_ex_result* r, size_t i) {
  return r && i < r->warnings.size() ? r->warnings[i].c_str() : nullptr;
}

patex_status patex_ex_to_json(const patex_ex_result* r, int with_stats, char** out) {
  PATEX_REQUIRE(r);
  PATEX_REQUIRE(out);
  return guarded([&] {
    auto j = patex::extremal_json(r->r, with_stats != 0);
    if (with_stats) j["cache_hit"] = r->cache_hit;
    *out = dup(j.dump());
  });
}

patex_status patex_ex_table_json(const patex_matrix* pattern, size_t n_max, uint64_t node_budget,
                                 uint64_t seed, char** out) {
  PATEX_REQUIRE(pattern);
  PATEX_REQUIRE(out);
  return guarded([&] {
    *out = dup(nlohmann::json(patex::ex_table(pattern->m, n_max, node_budget, seed)).dump());
  });
}

patex_status patex_parse_filters(const char* list, unsigned* filters) {
  PATEX_REQUIRE(list);
  PATEX_REQUIRE(filters);
  return guarded([&] { *filters = patex::parse_filters(list); });
}

unsigned patex_all_filters(void) { return patex::kAllFilters; }

patex_status patex_check_json(const patex_matrix* m, unsigned filters, int* passed, char** out) {
  PATEX_REQUIRE(m);
  PATEX_REQUIRE(out);
  return guarded([&] {
    auto report = patex::necessary_conditions(m->m, filters);
    if (passed) *passed = report.passed();
    nlohmann::json j = report;
    j["matrix"] = m->m;
    j["filters"] = patex::filter_names(filters);
    if (auto first = patex::first_failing_check(m->m, filters))
      j["first_failure"] = *first;
    else
      j["first_failure"] = nullptr;
    *out = dup(j.dump());
  });
}

patex_status patex_first_failing_check(const patex_matrix* m, unsigned filters, char** out) {
  PATEX_REQUIRE(m);
  PATEX_REQUIRE(out);
  return guarded([&] {
    auto first = patex::first_failing_check(m->m, filters);
    *out = first ? dup(*first) : nullptr;
  });
}

patex_status patex_reduce_once_json(const patex_matrix* m, int* claims_hold, char** out) {
  PATEX_REQUIRE(m);
  PATEX_REQUIRE(out);
  return guarded([&] {
    auto trace = patex::reduce_once(m->m);
    if (claims_hold) *claims_hold = trace.claims_hold();
    *out = dup(nlohmann::json(trace).dump());
  });
}

patex_status patex_count_bound(size_t k, char** out) {
  PATEX_REQUIRE(out);
  return guarded([&] { *out = dup(patex::count_bound(k).str()); });
}

void patex_enum_options_init(patex_enum_options* options, size_t k) {
  if (!options) return;
  options->k = k;
  options->max_cols = 0;
  options->filters = patex::kAllFilters;
  options->threads = 1;
  options->node_budget = patex::kDefaultNodeBudget;
}

patex_status patex_enumerate(const patex_enum_options* options, patex_candidates** out) {
  PATEX_REQUIRE(options);
  PATEX_REQUIRE(out);
  return guarded([&] {
    auto c = std::make_unique<patex_candidates>();
    c->stream = patex::enumerate_candidates(convert(*options));
    c->items.reserve(c->stream.emitted.size());
    for (const auto& m : c->stream.emitted) c->items.push_back(patex_matrix{m});
    *out = c.release();
  });
}

size_t patex_candidates_count(const patex_candidates* c) { return c ? c->items.size() : 0; }

const patex_matrix* patex_candidates_at(const patex_candidates* c, size_t i) {
  return c && i < c->items.size() ? &c->items[i] : nullptr;
}

patex_status patex_candidates_stats_json(const patex_candidates* c, char** out) {
  PATEX_REQUIRE(c);
  PATEX_REQUIRE(out);
  return guarded([&] {
    auto j = patex::stats_trailer(c->stream);
    nlohmann::json violations = nlohmann::json::array();
    for (const auto& m : c->stream.stats.bound_violations) violations.push_back(m);
    j["bound_violation_matrices"] = std::move(violations);
    *out = dup(j.dump());
  });
}

void patex_candidates_free(patex_candidates* c) { delete c; }

patex_status patex_verify_bounds(const patex_enum_options* options, int* passed, char** out) {
  PATEX_REQUIRE(options);
  PATEX_REQUIRE(out);
  return guarded([&] {
    auto v = patex::verify_bounds(convert(*options));
    if (passed) *passed = v.passed();
    auto j = patex::verification_json(v);
    nlohmann::json violations = nlohmann::json::array();
    for (const auto& m : v.stream.stats.bound_violations) violations.push_back(m);
    j["bound_violation_matrices"] = std::move(violations);
    *out = dup(j.dump());
  });
}

}  // extern "C"

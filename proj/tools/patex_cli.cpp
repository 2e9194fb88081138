// patex command-line front end. Links only the C interface.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "patex/patex.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

// Usage, parse and library errors; always exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(patex_status status, const std::string& context) {
  if (status != PATEX_OK)
    throw UsageError(context + ": " + patex_status_name(status) + ": " + patex_last_error());
}

struct MatrixDeleter {
  void operator()(patex_matrix* m) const { patex_matrix_free(m); }
};
using MatrixPtr = std::unique_ptr<patex_matrix, MatrixDeleter>;

struct StringDeleter {
  void operator()(char* s) const { patex_string_free(s); }
};

std::string take(char* s) {
  std::unique_ptr<char, StringDeleter> guard(s);
  return s ? std::string(s) : std::string();
}

std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

MatrixPtr parse_text(const std::string& text, const std::string& origin) {
  patex_matrix* m = nullptr;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{')
    check(patex_matrix_from_json(text.c_str(), &m), origin);
  else
    check(patex_matrix_parse(text.c_str(), &m), origin);
  return MatrixPtr(m);
}

/// Catalog id, then an existing file, then "-" for stdin, then inline text
/// where ',' or ';' separate rows.
MatrixPtr resolve_matrix(const std::string& arg, const std::string& what) {
  patex_matrix* m = nullptr;
  if (patex_matrix_builtin(arg.c_str(), &m) == PATEX_OK) return MatrixPtr(m);
  if (arg == "-") return parse_text(read_all(std::cin), what + " (stdin)");
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    if (!in) throw UsageError(what + ": cannot read file " + arg);
    return parse_text(read_all(in), what + " (" + arg + ")");
  }
  std::string text = arg;
  for (char& c : text)
    if (c == ',' || c == ';') c = '\n';
  return parse_text(text, what + " '" + arg + "'");
}

std::string format(const patex_matrix* m) {
  char* s = nullptr;
  check(patex_matrix_format(m, &s), "format");
  return take(s);
}

json matrix_json(const patex_matrix* m) {
  char* s = nullptr;
  check(patex_matrix_to_json(m, &s), "render");
  return json::parse(take(s));
}

std::string join(const json& values, const char* sep = " ") {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += sep;
    out += v.is_string() ? v.get<std::string>() : v.dump();
  }
  return out;
}

std::string format_rows(const json& matrix) {
  std::string out;
  for (const auto& row : matrix.at("data")) out += row.get<std::string>() + "\n";
  return out;
}

// ---------------------------------------------------------------------------

struct ContainsArgs {
  std::string haystack;
  std::string needle;
  bool bruteforce = false;
};

int run_contains(const ContainsArgs& a, bool as_json) {
  auto hay = resolve_matrix(a.haystack, "haystack");
  auto needle = resolve_matrix(a.needle, "needle");
  std::vector<size_t> rows(patex_matrix_rows(needle.get()));
  std::vector<size_t> cols(patex_matrix_cols(needle.get()));
  int found = 0;
  check((a.bruteforce ? patex_contains_bruteforce : patex_contains)(
            hay.get(), needle.get(), &found, rows.data(), cols.data()),
        "contains");
  if (as_json) {
    json j{{"contains", found != 0}, {"embedding", nullptr}};
    if (found) j["embedding"] = json{{"rows", rows}, {"cols", cols}};
    std::cout << j.dump() << "\n";
  } else if (found) {
    std::cout << "present\nrows: " << join(json(rows)) << "\ncols: " << join(json(cols)) << "\n";
  } else {
    std::cout << "absent\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct ExArgs {
  std::size_t n = 0;
  std::string pattern;
  std::uint64_t budget = 100'000'000;
  std::uint64_t seed = 0;
  std::string method = "exact";
  std::optional<std::string> cache;
  bool no_cache = false;
};

int run_ex(const ExArgs& a, bool as_json) {
  auto pattern = resolve_matrix(a.pattern, "pattern");
  if (a.method == "bruteforce") {
    size_t value = 0;
    check(patex_ex_bruteforce(a.n, pattern.get(), &value), "ex");
    if (as_json)
      std::cout << json{{"n", a.n}, {"value", value}, {"exact", true}}.dump() << "\n";
    else
      std::cout << "value: " << value << "\nexact: true\n";
    return kExitOk;
  }

  patex_ex_result* raw = nullptr;
  std::string cache_state = "off";
  if (a.method == "greedy") {
    check(patex_ex_greedy(a.n, pattern.get(), a.seed, &raw), "ex");
  } else {
    const std::string path = a.no_cache ? std::string() : a.cache.value_or(std::string());
    const char* cache_arg = a.no_cache ? "" : (a.cache ? path.c_str() : nullptr);
    check(patex_ex_cached(a.n, pattern.get(), cache_arg, a.budget, a.seed, &raw), "ex");
    if (!a.no_cache) cache_state = patex_ex_cache_hit(raw) ? "hit" : "miss";
  }
  std::unique_ptr<patex_ex_result, void (*)(patex_ex_result*)> r(raw, patex_ex_free);

  for (size_t i = 0; i < patex_ex_warning_count(r.get()); ++i)
    std::cerr << "warning: " << patex_ex_warning(r.get(), i) << "\n";
  std::cerr << "nodes: " << patex_ex_nodes(r.get()) << ", elapsed: " << patex_ex_elapsed_ms(r.get())
            << " ms, cache: " << cache_state << "\n";

  if (as_json) {
    char* s = nullptr;
    check(patex_ex_to_json(r.get(), 0, &s), "ex");
    std::cout << take(s) << "\n";
  } else {
    std::cout << "value: " << patex_ex_value(r.get())
              << "\nexact: " << (patex_ex_is_exact(r.get()) ? "true" : "false")
              << "\nwitness:\n" << format(patex_ex_witness(r.get()));
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct TableArgs {
  std::string pattern;
  std::size_t n_max = 6;
  std::uint64_t budget = 100'000'000;
  std::uint64_t seed = 0;
};

int run_table(const TableArgs& a, bool as_json) {
  auto pattern = resolve_matrix(a.pattern, "pattern");
  char* s = nullptr;
  check(patex_ex_table_json(pattern.get(), a.n_max, a.budget, a.seed, &s), "table");
  const json table = json::parse(take(s));
  if (as_json) {
    std::cout << table.dump() << "\n";
    return kExitOk;
  }
  std::cout << "n\tvalue\texact\tvalue/n\n";
  for (const auto& e : table.at("entries")) {
    std::ostringstream ratio;
    ratio.setf(std::ios::fixed);
    ratio.precision(3);
    ratio << e.at("ratio").get<double>();
    std::cout << e.at("n").get<std::size_t>() << "\t" << e.at("value").get<std::size_t>() << "\t"
              << (e.at("exact").get<bool>() ? "yes" : "no") << "\t" << ratio.str() << "\n";
  }
  std::cout << "# growth of value/n is a heuristic signal only\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

std::string describe_condition(const std::string& name, const json& c) {
  if (c.at("passed").get<bool>()) return "  " + name + ": ok\n";
  if (c.contains("violation")) {
    const auto& v = c.at("violation");
    return "  " + name + ": FAIL contains " + v.at("pattern").get<std::string>() + " (" +
           v.at("symmetry").get<std::string>() + ") at rows " +
           join(v.at("embedding").at("rows")) + ", cols " + join(v.at("embedding").at("cols")) +
           "\n";
  }
  return "  " + name + ": FAIL at column " + c.at("column").dump() + "\n";
}

std::string describe_orientation(const std::string& label, const json& report) {
  std::string out = label + ":\n";
  const auto& pm = report.at("potentially_mnl");
  for (const char* cond : {"cond1", "cond2", "cond3", "cond4"})
    out += describe_condition(cond, pm.at(cond));
  for (const auto& [name, f] : report.at("lemma_results").items()) {
    if (f.at("passed").get<bool>()) {
      out += "  " + name + ": ok\n";
      continue;
    }
    out += "  " + name + ": FAIL " + f.at("detail").get<std::string>();
    if (!f.at("cells").empty()) {
      std::string cells;
      for (const auto& c : f.at("cells")) {
        if (!cells.empty()) cells += " ";
        cells += "(" + c[0].dump() + "," + c[1].dump() + ")";
      }
      out += " cells " + cells;
    }
    out += "\n";
  }
  return out;
}

std::string describe_reduction(const json& t) {
  std::string out = "reduction:\n";
  out += "  selected row: " + t.at("selected_row").dump() + " (ones at columns " +
         join(t.at("row_ones").at("columns")) + ")\n";
  for (const auto& c : t.at("removed_columns"))
    out += "  removed column " + c.at("column").dump() + " (" + c.at("reason").get<std::string>() +
           ", " + c.at("ones").dump() + " ones)\n";
  out += "  ones deleted: " + t.at("ones_deleted").dump() + "\n";
  out += "  result:\n";
  std::istringstream rows(format_rows(t.at("result")));
  for (std::string line; std::getline(rows, line);) out += "    " + line + "\n";
  if (t.at("claims_hold").get<bool>())
    out += "  claims: hold\n";
  else
    for (const auto& d : t.at("discrepancies")) out += "  claim FAILED: " + d.get<std::string>() + "\n";
  return out;
}

struct CheckArgs {
  std::string matrix;
  std::string filters = "all";
  bool reduce = false;
};

int run_check(const CheckArgs& a, bool as_json) {
  auto m = resolve_matrix(a.matrix, "matrix");
  unsigned filters = 0;
  check(patex_parse_filters(a.filters.c_str(), &filters), "--filters");
  int passed = 0;
  char* s = nullptr;
  check(patex_check_json(m.get(), filters, &passed, &s), "check");
  json report = json::parse(take(s));

  std::optional<json> trace;
  int claims_hold = 1;
  if (a.reduce) {
    char* t = nullptr;
    check(patex_reduce_once_json(m.get(), &claims_hold, &t), "reduce");
    trace = json::parse(take(t));
  }
  const bool ok = passed && claims_hold;

  if (as_json) {
    if (trace) report["reduction"] = *trace;
    std::cout << report.dump() << "\n";
  } else {
    std::cout << "matrix " << patex_matrix_rows(m.get()) << "x" << patex_matrix_cols(m.get())
              << ", " << patex_matrix_ones(m.get()) << " ones\n";
    std::cout << describe_orientation("rows", report.at("direct"));
    std::cout << describe_orientation("columns (transpose)", report.at("transposed"));
    if (trace) std::cout << describe_reduction(*trace);
    if (ok)
      std::cout << "verdict: pass\n";
    else if (!passed)
      std::cout << "verdict: FAIL (" << report.at("first_failure").get<std::string>() << ")\n";
    else
      std::cout << "verdict: FAIL (reduction claims)\n";
  }
  return ok ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------

struct EnumArgs {
  std::size_t k = 2;
  std::size_t max_cols = 0;
  std::string filters = "all";
  unsigned threads = 1;
  std::uint64_t budget = 100'000'000;
};

patex_enum_options enum_options(const EnumArgs& a) {
  patex_enum_options o;
  patex_enum_options_init(&o, a.k);
  o.max_cols = a.max_cols;
  check(patex_parse_filters(a.filters.c_str(), &o.filters), "--filters");
  o.threads = a.threads;
  o.node_budget = a.budget;
  return o;
}

std::string describe_pruned(const json& pruned) {
  std::string out;
  for (const auto& [name, count] : pruned.items()) {
    if (!out.empty()) out += ", ";
    out += name + "=" + count.dump();
  }
  return out.empty() ? "none" : out;
}

int run_enumerate(const EnumArgs& a, bool as_json) {
  const auto options = enum_options(a);
  patex_candidates* raw = nullptr;
  check(patex_enumerate(&options, &raw), "enumerate");
  std::unique_ptr<patex_candidates, void (*)(patex_candidates*)> c(raw, patex_candidates_free);
  char* s = nullptr;
  check(patex_candidates_stats_json(c.get(), &s), "enumerate");
  json stats = json::parse(take(s));
  const json violations = stats.at("bound_violation_matrices");
  stats.erase("bound_violation_matrices");

  const size_t count = patex_candidates_count(c.get());
  for (size_t i = 0; i < count; ++i) {
    const patex_matrix* m = patex_candidates_at(c.get(), i);
    if (as_json)
      std::cout << matrix_json(m).dump() << "\n";
    else
      std::cout << (i ? "\n" : "") << format(m);
  }
  if (as_json) {
    std::cout << stats.dump() << "\n";
  } else {
    std::cout << (count ? "\n" : "") << "# k=" << stats.at("k") << " emitted=" << count
              << " nodes=" << stats.at("nodes")
              << " complete=" << (stats.at("complete").get<bool>() ? "yes" : "no") << "\n"
              << "# pruned: " << describe_pruned(stats.at("pruned")) << "\n";
  }
  if (!stats.at("complete").get<bool>())
    std::cerr << "warning: node budget exhausted; the candidate list is partial\n";
  if (!violations.empty()) {
    std::cerr << "bound violation: " << violations.size()
              << " potentially-mnl matrices exceed 4k-4 ones or columns; first:\n"
              << format_rows(violations.front());
    return kExitCheckFailed;
  }
  return kExitOk;
}

int run_verify(const EnumArgs& a, bool as_json) {
  const auto options = enum_options(a);
  int passed = 0;
  char* s = nullptr;
  check(patex_verify_bounds(&options, &passed, &s), "verify-bounds");
  json v = json::parse(take(s));
  if (as_json) {
    std::cout << v.dump() << "\n";
    return passed ? kExitOk : kExitCheckFailed;
  }
  const auto bound = v.at("ones_bound").get<std::size_t>();
  const auto cols = v.at("cols_bound").get<std::size_t>();
  const auto candidates = v.at("candidates").get<std::size_t>();
  if (passed) {
    std::cout << "ok: " << candidates << " candidates, max ones ≤ " << bound << ", max cols ≤ "
              << cols << "\n";
  } else {
    std::cout << "FAIL: " << candidates << " candidates, bounds max ones ≤ " << bound
              << ", max cols ≤ " << cols << "\n";
    if (!v.at("complete").get<bool>())
      std::cout << "enumeration incomplete: node budget exhausted\n";
    for (const auto& m : v.at("bound_violation_matrices"))
      std::cout << "bound violation (" << m.at("rows") << "x" << m.at("cols") << "):\n"
                << format_rows(m);
    for (const auto& f : v.at("reduction_failures")) {
      std::cout << "reduction discrepancy on:\n" << format_rows(f.at("matrix"));
      for (const auto& d : f.at("discrepancies")) std::cout << "  " << d.get<std::string>() << "\n";
    }
  }
  std::cout << "observed: max ones " << v.at("max_ones") << ", max cols " << v.at("max_cols")
            << "\n"
            << "reductions checked: " << v.at("reductions_checked") << ", discrepancies: "
            << v.at("reduction_failures").size() << "\n";
  return passed ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------

int run_count_bound(std::size_t k, bool as_json) {
  char* s = nullptr;
  check(patex_count_bound(k, &s), "count-bound");
  const std::string value = take(s);
  if (as_json)
    std::cout << json{{"k", k}, {"count_bound", value}}.dump() << "\n";
  else
    std::cout << value << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"0-1 matrix pattern containment, extremal values and candidate enumeration",
               "patex"};
  app.require_subcommand(1);
  app.set_version_flag("--version", patex_version());
  bool as_json = false;
  app.add_flag("--json", as_json, "JSON output");
  app.fallthrough();

  ContainsArgs contains;
  auto* c = app.add_subcommand("contains", "decide whether a haystack contains a needle");
  c->add_option("--haystack", contains.haystack, "catalog id, file, '-' or inline rows")->required();
  c->add_option("--needle", contains.needle, "catalog id, file, '-' or inline rows")->required();
  c->add_flag("--bruteforce", contains.bruteforce, "exhaustive search (haystacks up to 6x6)");

  ExArgs ex;
  auto* e = app.add_subcommand("ex", "compute ex(n, P)");
  e->add_option("--n", ex.n, "side length")->required()->check(CLI::Range(1, 63));
  e->add_option("--pattern", ex.pattern, "catalog id, file, '-' or inline rows")->required();
  e->add_option("--budget", ex.budget, "node budget")->capture_default_str();
  e->add_option("--seed", ex.seed, "seed of the greedy warm start")->capture_default_str();
  e->add_option("--method", ex.method, "exact, greedy or bruteforce")
      ->check(CLI::IsMember({"exact", "greedy", "bruteforce"}))
      ->capture_default_str();
  auto* cache_opt = e->add_option("--cache", ex.cache, "cache file (default $PATEX_CACHE)");
  e->add_flag("--no-cache", ex.no_cache, "do not read or write the cache")->excludes(cache_opt);

  TableArgs table;
  auto* t = app.add_subcommand("table", "ex(n, P) for n = 1..n-max");
  t->add_option("--pattern", table.pattern, "catalog id, file, '-' or inline rows")->required();
  t->add_option("--n-max", table.n_max, "largest n")->check(CLI::Range(1, 63))->capture_default_str();
  t->add_option("--budget", table.budget, "node budget per n")->capture_default_str();
  t->add_option("--seed", table.seed, "seed of the greedy warm start")->capture_default_str();

  CheckArgs chk;
  auto* k = app.add_subcommand("check", "run the structural checks on a matrix");
  k->add_option("--matrix", chk.matrix, "catalog id, file, '-' or inline rows")->required();
  k->add_option("--filters", chk.filters, "comma-separated checks")->capture_default_str();
  k->add_flag("--reduce", chk.reduce, "also run one reduction step");

  EnumArgs en;
  auto* n = app.add_subcommand("enumerate", "list canonical k-row candidates");
  EnumArgs vb;
  auto* v = app.add_subcommand("verify-bounds", "enumerate and verify the ones/columns bounds");
  for (auto [cmd, args] : {std::pair{n, &en}, std::pair{v, &vb}}) {
    cmd->add_option("--k", args->k, "number of rows")->required();
    cmd->add_option("--threads", args->threads, "worker threads")->check(CLI::Range(1u, 256u));
    cmd->add_option("--budget", args->budget, "node budget")->capture_default_str();
    cmd->add_option("--filters", args->filters, "comma-separated checks")->capture_default_str();
  }
  n->add_option("--max-cols", en.max_cols, "widest emitted candidate (default 4k-4)");

  std::size_t bound_k = 0;
  auto* b = app.add_subcommand("count-bound", "the counting bound on k-row candidates");
  b->add_option("--k", bound_k, "number of rows")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& s) {
    return app.exit(s);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kExitUsage;
  }

  try {
    if (c->parsed()) return run_contains(contains, as_json);
    if (e->parsed()) return run_ex(ex, as_json);
    if (t->parsed()) return run_table(table, as_json);
    if (k->parsed()) return run_check(chk, as_json);
    if (n->parsed()) return run_enumerate(en, as_json);
    if (v->parsed()) return run_verify(vb, as_json);
    if (b->parsed()) return run_count_bound(bound_k, as_json);
  } catch (const UsageError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

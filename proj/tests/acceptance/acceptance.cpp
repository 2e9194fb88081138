// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "patex/containment.hpp"
#include "patex/enumerate.hpp"
#include "patex/extremal.hpp"
#include "patex/mnl.hpp"
#include "patex/symmetry.hpp"

using namespace patex;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed;
  std::string detail;
};

Matrix01 from_bits(std::size_t rows, std::size_t cols, std::uint64_t bits) {
  std::vector<std::uint64_t> words(rows);
  for (std::size_t r = 0; r < rows; ++r) words[r] = (bits >> (r * cols)) & low_mask(cols);
  return Matrix01::from_words(cols, std::move(words));
}

Matrix01 pair_pattern() { return parse_matrix("11"); }

std::string run_cli(const std::string& args) {
  const std::string cmd = std::string("'") + PATEX_CLI + "' " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return "<popen failed>";
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
  const int status = ::pclose(pipe);
  return out + "<exit " + std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1) + ">";
}

// ---------------------------------------------------------------------------

Outcome containment_oracle() {
  std::size_t cases = 0;
  std::size_t mismatches = 0;
  auto compare = [&](const Matrix01& hay, const Matrix01& needle) {
    ++cases;
    if (contains(hay, needle) != contains_bruteforce(hay, needle)) ++mismatches;
  };
  for (std::uint64_t bits = 0; bits < 512; ++bits)
    for (const char* id : {"R", "Q1", "Q3"}) compare(from_bits(3, 3, bits), builtin_pattern(id));
  std::mt19937_64 rng(20240601);
  for (int i = 0; i < 200; ++i) {
    const Matrix01 hay = from_bits(5, 5, rng() & low_mask(25));
    for (PatternId id : all_patterns()) compare(hay, builtin_pattern(id));
  }
  return {mismatches == 0, std::to_string(cases) + " cases, " + std::to_string(mismatches) +
                               " mismatches (embeddings compared)"};
}

Outcome extremal_oracle() {
  std::size_t cases = 0;
  std::vector<std::string> bad;
  auto compare = [&](std::size_t n, const Matrix01& p, const std::string& name) {
    ++cases;
    const auto r = ex_exact(n, p);
    const std::size_t oracle = ex_bruteforce(n, p);
    if (!r.exact || r.value != oracle || contains(r.witness, p) || r.witness.ones() != r.value)
      bad.push_back(name + " n=" + std::to_string(n) + ": exact " + std::to_string(r.value) +
                    (r.exact ? "" : " (inexact)") + " vs brute force " + std::to_string(oracle));
  };
  for (PatternId id : all_patterns())
    for (std::size_t n = 1; n <= 3; ++n) compare(n, builtin_pattern(id), std::string(pattern_name(id)));
  for (std::size_t n = 1; n <= 3; ++n) compare(n, pair_pattern(), "[1 1]");
  compare(4, builtin_pattern("R"), "R");
  compare(4, pair_pattern(), "[1 1]");
  std::string detail = std::to_string(cases) + " cases, " + std::to_string(bad.size()) + " disagreements";
  if (!bad.empty()) detail += "; first: " + bad.front();
  return {bad.empty(), detail};
}

Outcome analytic_values() {
  std::string values;
  bool ok = true;
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto r = ex_exact(n, pair_pattern());
    values += (n > 1 ? "," : "") + std::to_string(r.value);
    ok = ok && r.exact && r.value == n;
  }
  return {ok, "ex(n,[1 1]) for n=1..8: " + values};
}

Outcome enumeration_bounds() {
  std::string detail;
  bool ok = true;
  for (std::size_t k : {2u, 3u}) {
    EnumerationOptions o;
    o.k = k;
    const auto s = enumerate_candidates(o);
    const std::size_t bound = 4 * k - 4;
    const bool good = s.stats.complete && s.stats.bound_violations.empty() &&
                      s.stats.max_ones <= bound && s.stats.max_cols <= bound;
    ok = ok && good;
    detail += (detail.empty() ? "" : "; ") + std::string("k=") + std::to_string(k) + ": " +
              std::to_string(s.emitted.size()) + " candidates, " +
              std::to_string(s.stats.nodes) + " nodes, max ones " +
              std::to_string(s.stats.max_ones) + "/" + std::to_string(bound) + ", max cols " +
              std::to_string(s.stats.max_cols) + "/" + std::to_string(bound) + ", " +
              std::to_string(s.stats.bound_violations.size()) + " violations" +
              (s.stats.complete ? "" : ", INCOMPLETE");
  }
  return {ok, detail};
}

Outcome reduction_property() {
  EnumerationOptions o;
  o.k = 3;
  const auto s = enumerate_candidates(o);
  std::size_t failures = 0;
  std::string first;
  for (const auto& m : s.emitted) {
    const auto t = reduce_once(m);
    const bool good = t.result.rows() == 2 && check_potentially_mnl(t.result).passed() &&
                      t.ones_deleted <= 4 && t.row_one_columns.size() <= 2 &&
                      t.row_ones_adjacent && t.discrepancies().empty() &&
                      m.ones() - t.result.ones() == t.ones_deleted;
    if (!good && failures++ == 0) first = matrix_key(m);
  }
  std::string detail = std::to_string(s.emitted.size()) + " candidates reduced, " +
                       std::to_string(failures) + " with flagged discrepancies";
  if (failures) detail += "; first: " + first;
  return {failures == 0 && s.stats.complete && !s.emitted.empty(), detail};
}

Outcome cross_lemma_claim() {
  const std::array<PatternId, 4> ids{PatternId::S1, PatternId::S2, PatternId::Q1, PatternId::Q3};
  const ForbiddenFamily family(ids, true);
  std::size_t with_violation = 0;
  std::size_t counterexamples = 0;
  std::string first;
  for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{3, 3}, {3, 4}}) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (rows * cols)); ++bits) {
      const Matrix01 m = from_bits(rows, cols, bits);
      if (check_cross_lemma(m).empty()) continue;
      ++with_violation;
      if (!family.first_hit(m) && counterexamples++ == 0) first = matrix_key(m);
    }
  }
  std::string detail = "4608 matrices, " + std::to_string(with_violation) +
                       " with cross violations, " + std::to_string(counterexamples) +
                       " avoiding S1/S2/Q1/Q3 and their images";
  if (counterexamples) detail += "; first: " + first;
  return {counterexamples == 0, detail};
}

Outcome no_five_ones_claim() {
  const std::array<PatternId, 1> s1{PatternId::S1};
  const ForbiddenFamily literal(s1, false);
  std::size_t qualifying = 0;
  std::size_t counterexamples = 0;
  std::string first;
  for (std::size_t cols = 2; cols <= 7; ++cols) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (2 * cols)); ++bits) {
      const Matrix01 m = from_bits(2, cols, bits);
      if (m.row_ones(1) < 5) continue;
      bool bottom_pairs_seen = true;
      for (const auto& q : check_strip_lemmas(m).two_and_one)
        if (q.row == 1) bottom_pairs_seen = false;
      if (!bottom_pairs_seen) continue;
      ++qualifying;
      if (!literal.first_hit(m) && counterexamples++ == 0) first = matrix_key(m);
    }
  }
  std::string detail = std::to_string(qualifying) + " qualifying 2-row matrices, " +
                       std::to_string(counterexamples) + " avoiding S1";
  if (counterexamples) detail += "; first: " + first;
  return {counterexamples == 0 && qualifying > 0, detail};
}

Outcome counting_formula() {
  // Independent big-integer evaluation of the summation (tests/oracles/oracle.py).
  const BigInt expected3 = 490431;
  const BigInt expected4("31526874380");
  EnumerationOptions o;
  o.k = 3;
  const std::size_t count = enumerate_candidates(o).emitted.size();
  const bool ok = count_bound(3) == expected3 && count_bound(4) == expected4 &&
                  BigInt(count) <= count_bound(3);
  return {ok, "count_bound(3)=" + count_bound(3).str() + ", count_bound(4)=" +
                  count_bound(4).str() + ", k=3 candidates " + std::to_string(count)};
}

Outcome determinism() {
  std::vector<std::string> problems;
  const std::string v1 = run_cli("verify-bounds --k 3");
  const std::string v2 = run_cli("verify-bounds --k 3");
  if (v1 != v2) problems.push_back("verify-bounds output differs");
  const std::string v3 = run_cli("verify-bounds --k 3 --threads 4");
  if (v1 != v3) problems.push_back("verify-bounds serial vs parallel output differs");
  const std::string e1 = run_cli("ex --n 5 --pattern Q1 --seed 3 --no-cache");
  const std::string e2 = run_cli("ex --n 5 --pattern Q1 --seed 3 --no-cache");
  if (e1 != e2) problems.push_back("ex output differs");
  if (v1.find("<exit 0>") == std::string::npos || e1.find("<exit 0>") == std::string::npos)
    problems.push_back("CLI runs did not exit 0");

  for (std::size_t k : {2u, 3u}) {
    EnumerationOptions serial;
    serial.k = k;
    EnumerationOptions parallel = serial;
    parallel.threads = 4;
    const auto a = enumerate_candidates(serial);
    const auto b = enumerate_candidates(serial);
    const auto c = enumerate_candidates(parallel);
    if (a.emitted != b.emitted) problems.push_back("repeated k=" + std::to_string(k) + " runs differ");
    if (a.emitted != c.emitted) problems.push_back("serial/parallel k=" + std::to_string(k) + " sets differ");
  }
  const auto x1 = ex_exact(5, builtin_pattern("S1"));
  const auto x2 = ex_exact(5, builtin_pattern("S1"));
  if (x1.value != x2.value || x1.witness != x2.witness || x1.nodes_explored != x2.nodes_explored)
    problems.push_back("ex_exact runs differ");
  std::string detail = problems.empty()
                           ? "verify-bounds x3, ex x2, enumerations k=2,3 serial/parallel identical"
                           : problems.front();
  return {problems.empty(), detail};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "containment oracle equivalence", 60, containment_oracle},
      {2, "extremal oracle equivalence", 300, extremal_oracle},
      {3, "analytic extremal values", 60, analytic_values},
      {4, "ones and columns bound at k=2,3", 600, enumeration_bounds},
      {5, "reduction property at k=3", 600, reduction_property},
      {6, "cross lemma proof claim", 300, cross_lemma_claim},
      {7, "no_five_ones proof claim", 300, no_five_ones_claim},
      {8, "counting formula", 600, counting_formula},
      {9, "determinism", 600, determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_time = secs <= c.limit_s;
    const bool pass = o.passed && in_time;
    if (!pass) ++failed;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail << " ("
         << secs << " s, limit " << c.limit_s << " s" << (in_time ? "" : ", OVER TIME") << ")";
    std::cout << line.str() << std::endl;
  }
  std::cout << (failed ? "FAILED: " : "ALL PASSED: ") << criteria.size() - failed << "/"
            << criteria.size() << " criteria" << std::endl;
  return failed ? 1 : 0;
}

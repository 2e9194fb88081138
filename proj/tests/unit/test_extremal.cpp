#include <doctest.h>

#include <map>

#include "patex/containment.hpp"
#include "patex/error.hpp"
#include "patex/extremal.hpp"
#include "patex/symmetry.hpp"
#include "support.hpp"

using namespace patex;
using testing::M;

namespace {

// ex(n, P) for n = 1, 2, 3 from the itertools oracle.
const std::map<std::string, std::vector<std::size_t>> kOracle = {
    {"R", {1, 3, 6}},  {"Q1", {1, 4, 7}}, {"Q3", {1, 4, 8}},          {"S1", {1, 4, 9}},
    {"S2", {1, 4, 9}}, {"TWO_AND_TWO", {1, 4, 9}}, {"11", {1, 2, 3}},
};

Matrix01 pattern(const std::string& name) {
  return name == "11" ? M("11") : builtin_pattern(name);
}

void check_witness(const ExtremalResult& r) {
  CHECK(r.witness.rows() == r.n);
  CHECK(r.witness.cols() == r.n);
  CHECK(r.witness.ones() == r.value);
  CHECK_FALSE(contains(r.witness, r.pattern));
}

}  // namespace

TEST_CASE("oracle values for n <= 3") {
  for (const auto& [name, values] : kOracle) {
    for (std::size_t n = 1; n <= 3; ++n) {
      CAPTURE(name);
      CAPTURE(n);
      const auto r = ex_exact(n, pattern(name));
      CHECK(r.exact);
      CHECK(r.value == values[n - 1]);
      CHECK(ex_bruteforce(n, pattern(name)) == values[n - 1]);
      check_witness(r);
    }
  }
}

TEST_CASE("oracle values at n = 4") {
  CHECK(ex_exact(4, builtin_pattern("R")).value == 9);
  CHECK(ex_bruteforce(4, builtin_pattern("R")) == 9);
  CHECK(ex_exact(4, M("11")).value == 4);
  CHECK(ex_bruteforce(4, M("11")) == 4);
}

TEST_CASE("a single row pair allows one one per row") {
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto r = ex_exact(n, M("11"));
    CHECK(r.exact);
    CHECK(r.value == n);
    check_witness(r);
  }
}

TEST_CASE("argument errors") {
  auto kind = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    FAIL("no error");
    return ErrorKind::Io;
  };
  CHECK(kind([] { ex_exact(0, M("1")); }) == ErrorKind::Domain);
  CHECK(kind([] { ex_exact(64, M("1")); }) == ErrorKind::Domain);
  CHECK(kind([] { ex_exact(3, M("00/00")); }) == ErrorKind::Domain);
  CHECK(kind([] { ex_bruteforce(5, M("11")); }) == ErrorKind::SizeGuard);
  CHECK(kind([] { ex_bruteforce(0, M("11")); }) == ErrorKind::Domain);
  CHECK(kind([] { ex_lower_greedy(3, M("0"), 1); }) == ErrorKind::Domain);
  CHECK(kind([] { ex_table(M("11"), 0); }) == ErrorKind::Domain);
}

TEST_CASE("patterns larger than the matrix") {
  const auto r = ex_exact(2, M("111/111/111"));
  CHECK(r.exact);
  CHECK(r.value == 4);
}

TEST_CASE("budget exhaustion is reported, not hidden") {
  const auto r = ex_exact(6, builtin_pattern("R"), 1000);
  CHECK_FALSE(r.exact);
  CHECK(r.nodes_explored <= 1000);
  CHECK(r.value <= 16);
  check_witness(r);
}

TEST_CASE("deterministic results") {
  const auto a = ex_exact(5, builtin_pattern("Q1"));
  const auto b = ex_exact(5, builtin_pattern("Q1"));
  CHECK(a.value == b.value);
  CHECK(a.witness == b.witness);
  CHECK(a.nodes_explored == b.nodes_explored);
  CHECK(ex_lower_greedy(6, builtin_pattern("S1"), 17).witness ==
        ex_lower_greedy(6, builtin_pattern("S1"), 17).witness);
}

TEST_CASE("growth table") {
  const auto t = ex_table(builtin_pattern("R"), 4);
  REQUIRE(t.entries.size() == 4);
  const std::size_t expected[] = {1, 3, 6, 9};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(t.entries[i].n == i + 1);
    CHECK(t.entries[i].value == expected[i]);
    CHECK(t.entries[i].exact);
    CHECK(t.entries[i].ratio == doctest::Approx(double(expected[i]) / double(i + 1)));
  }
}

// ---------------------------------------------------------------------------
// Properties

TEST_CASE("monotone in n") {
  for (PatternId id : all_patterns()) {
    std::size_t prev = 0;
    for (std::size_t n = 1; n <= 5; ++n) {
      const auto r = ex_exact(n, builtin_pattern(id));
      REQUIRE(r.exact);
      CHECK(r.value >= prev);
      prev = r.value;
    }
  }
}

TEST_CASE("monotone under pattern containment") {
  // P contained in P' gives ex(n, P) <= ex(n, P').
  const std::pair<Matrix01, Matrix01> pairs[] = {
      {M("11"), builtin_pattern("R")},
      {M("1/1"), builtin_pattern("Q1")},
      {M("101"), builtin_pattern("S1")},
      {builtin_pattern("Q1"), M("111/110")},
      {M("1"), builtin_pattern("Q3")},
  };
  for (const auto& [small, large] : pairs) {
    REQUIRE(contains(large, small));
    for (std::size_t n = 1; n <= 4; ++n) CHECK(ex_exact(n, small).value <= ex_exact(n, large).value);
  }
}

TEST_CASE("invariant under the dihedral group") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 6; ++i) {
    Matrix01 p = testing::random_matrix(rng, 2, 3, 0.6);
    if (!p.ones()) p.set(0, 0);
    const std::size_t base = ex_exact(4, p).value;
    for (Symmetry s : kAllSymmetries) CHECK(ex_exact(4, apply(s, p)).value == base);
  }
}

TEST_CASE("greedy is a sound, maximal lower bound") {
  for (PatternId id : all_patterns()) {
    for (std::size_t n = 1; n <= 5; ++n) {
      for (std::uint64_t seed : {0u, 1u, 99u}) {
        const auto g = ex_lower_greedy(n, builtin_pattern(id), seed);
        check_witness(g);
        CHECK(g.value <= ex_exact(n, builtin_pattern(id)).value);
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c) {
            if (g.witness.get(r, c)) continue;
            Matrix01 more = g.witness;
            more.set(r, c);
            CHECK(contains(more, builtin_pattern(id)));
          }
      }
    }
  }
}

TEST_CASE("warm start never changes the exact value") {
  for (PatternId id : all_patterns()) {
    const auto warm = ex_lower_greedy(5, builtin_pattern(id), 3);
    CHECK(ex_exact(5, builtin_pattern(id), kDefaultNodeBudget, warm.witness).value ==
          ex_exact(5, builtin_pattern(id)).value);
  }
}

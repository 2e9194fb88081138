#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "patex/matrix.hpp"

namespace patex {

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

/// Value of ex(n, P) (exact) or a lower bound with the matrix attaining it.
struct ExtremalResult {
  std::size_t n = 0;
  Matrix01 pattern{1, 1};
  std::size_t value = 0;
  bool exact = false;
  Matrix01 witness{1, 1};  // n x n, avoids pattern, `value` ones
  std::uint64_t nodes_explored = 0;
  std::chrono::nanoseconds elapsed{0};
};

/// Exhaustive maximum over all 2^(n*n) matrices. Throws Error(SizeGuard)
/// for n > 4 and Error(Domain) for n == 0.
std::size_t ex_bruteforce(std::size_t n, const Matrix01& pattern);

inline constexpr std::size_t kBruteforceMaxSide = 4;

/// Depth-first branch-and-bound over the cells in row-major order, trying 1
/// before 0. A branch is cut when its ones plus an upper bound on what the
/// remaining cells can add cannot beat the incumbent, or when the partial
/// matrix (unfilled cells read as 0) already contains the pattern.
///
/// The upper bound is the smaller of the remaining-cells count and a bound
/// built from exact values for thinner strips (rows x n) solved first by
/// the same search. Budget exhaustion is reported through `exact == false`.
///
/// Throws Error(Domain) for n outside 1..kMaxDim or a pattern with no ones
/// (every matrix contains such a pattern when it fits).
ExtremalResult ex_exact(std::size_t n, const Matrix01& pattern,
                        std::uint64_t node_budget = kDefaultNodeBudget,
                        const std::optional<Matrix01>& warm_start = std::nullopt);

/// Visits the n*n cells in an order shuffled by `seed` and keeps each one
/// that leaves the matrix avoiding the pattern. The witness is 1-maximal.
ExtremalResult ex_lower_greedy(std::size_t n, const Matrix01& pattern, std::uint64_t seed);

struct GrowthEntry {
  std::size_t n = 0;
  std::size_t value = 0;
  bool exact = false;
  double ratio = 0.0;  // value / n
  std::uint64_t nodes_explored = 0;
};

struct GrowthTable {
  Matrix01 pattern{1, 1};
  std::vector<GrowthEntry> entries;
};

/// ex_exact for n = 1..n_max, each warm-started by ex_lower_greedy(n, P, seed).
GrowthTable ex_table(const Matrix01& pattern, std::size_t n_max,
                     std::uint64_t node_budget = kDefaultNodeBudget, std::uint64_t seed = 0);

}  // namespace patex

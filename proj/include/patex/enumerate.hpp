#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "patex/extremal.hpp"
#include "patex/matrix.hpp"
#include "patex/mnl.hpp"

namespace patex {

struct EnumerationOptions {
  std::size_t k = 2;
  std::optional<std::size_t> max_cols;  // emission width limit; default 4k-4
  unsigned filters = kAllFilters;
  unsigned threads = 1;
  std::uint64_t node_budget = kDefaultNodeBudget;
};

struct EnumerationStats {
  std::uint64_t nodes = 0;
  /// Prefix cuts ("prefix:cond1", ...) and rejections of completed matrices
  /// (the failing check's name, "non_canonical", "width").
  std::map<std::string, std::uint64_t> pruned;
  bool complete = true;
  std::size_t widest_prefix = 0;
  std::size_t max_ones = 0;  // over emitted candidates
  std::size_t max_cols = 0;
  /// Potentially-mnl matrices with more than 4k-4 ones or columns. The
  /// ones bound says this list is always empty.
  std::vector<Matrix01> bound_violations;
};

/// Canonical candidates with k rows, sorted ascending.
struct CandidateStream {
  std::size_t k = 0;
  std::vector<Matrix01> emitted;
  EnumerationStats stats;
};

/// Depth-first generation column by column over nonzero k-row columns.
///
/// A prefix is cut only by conditions that extensions cannot repair: it
/// contains a member of the R/Q1/S1 family, its second-to-last column breaks
/// condition (2), or its first column breaks condition (3). Prefixes are not
/// cut at 4k-4 ones or columns; the search continues past those bounds so
/// that any potentially-mnl matrix exceeding them is found and recorded in
/// `stats.bound_violations`.
///
/// Every prefix is also judged as a finished matrix: it is emitted when it
/// passes necessary_conditions(filters), fits the width limit, and equals
/// its canonical form. With threads > 1 the subtrees under each two-column
/// prefix are shared among workers; the emitted set is identical to the
/// serial run.
///
/// Throws Error(Domain) for k < 2 or k > kMaxDim.
CandidateStream enumerate_candidates(const EnumerationOptions& options);

struct BoundsVerification {
  CandidateStream stream;
  std::size_t ones_bound = 0;  // 4k-4
  std::size_t cols_bound = 0;  // 4k-4
  std::size_t reductions_checked = 0;
  /// Emitted candidates whose reduction surfaced a discrepancy, with the
  /// discrepancy text.
  std::vector<std::pair<Matrix01, std::vector<std::string>>> reduction_failures;
  bool passed() const noexcept;
};

/// Runs enumerate_candidates and checks the ones/columns bounds plus, for
/// k >= 3, the reduction claims on every emitted candidate.
BoundsVerification verify_bounds(const EnumerationOptions& options);

}  // namespace patex

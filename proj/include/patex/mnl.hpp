#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "patex/containment.hpp"
#include "patex/matrix.hpp"
#include "patex/symmetry.hpp"

namespace patex {

struct Cell {
  std::size_t row = 0;
  std::size_t col = 0;

  bool operator==(const Cell&) const = default;
};

// ---------------------------------------------------------------------------
// Potentially-mnl conditions
// ---------------------------------------------------------------------------

/// Outcome of the four potentially-mnl conditions; an empty optional means
/// the condition holds.
///   (1) avoids R, Q1, S1 and all their dihedral images;
///   (2) no interior column whose only one, at (r, c), has ones at (r, c-1)
///       and (r, c+1);
///   (3) neither the first nor the last column has a single one that sits
///       next to a one in the neighbouring column;
///   (4) no empty column.
struct PotentiallyMnlReport {
  std::optional<ForbiddenHit> cond1;
  std::optional<std::size_t> cond2_column;
  std::optional<std::size_t> cond3_column;
  std::optional<std::size_t> cond4_column;

  bool passed() const noexcept {
    return !cond1 && !cond2_column && !cond3_column && !cond4_column;
  }
};

PotentiallyMnlReport check_potentially_mnl(const Matrix01& m);

/// The R, Q1, S1 family closed under the dihedral group.
const ForbiddenFamily& small_nonlinear_family();

/// Condition (2) at column c: an interior column holding a single one whose
/// row neighbours on both sides are ones.
bool isolated_interior_column(const Matrix01& m, std::size_t c);
/// Condition (3) at column c: c is the first or last column, holds a single
/// one, and that one has a one beside it in the neighbouring column.
bool isolated_edge_column(const Matrix01& m, std::size_t c);

// ---------------------------------------------------------------------------
// Reduction step of the ones bound
// ---------------------------------------------------------------------------

/// Row r has a one strictly left of the leftmost one of row s and a one
/// strictly right of its rightmost one. Throws Error(Precondition) when
/// r == s or either row is empty.
bool encompasses(const Matrix01& m, std::size_t r, std::size_t s);

/// Among rows encompassing no other row: rightmost last one, then fewest
/// ones, then the bottommost. Throws Error(Precondition) on fewer than two
/// rows or an empty row.
std::size_t select_reduction_row(const Matrix01& m);

enum class RemovalReason { Empty, Cond2, Cond3 };
std::string_view removal_reason_name(RemovalReason reason) noexcept;

struct ColumnRemoval {
  std::size_t column;  // column index in the input matrix
  RemovalReason reason;
  std::size_t ones;    // ones deleted with the column
};

struct ReductionTrace {
  std::size_t selected_row = 0;
  std::vector<std::size_t> row_one_columns;  // input column indices
  std::vector<ColumnRemoval> removed_columns;  // in removal order
  std::size_t ones_deleted = 0;
  Matrix01 result{1, 1};

  // Claims of the reduction argument, surfaced rather than enforced.
  bool row_has_at_most_two_ones = true;
  bool row_ones_adjacent = true;
  bool at_most_four_deleted = true;
  bool result_potentially_mnl = true;

  bool claims_hold() const noexcept {
    return row_has_at_most_two_ones && row_ones_adjacent && at_most_four_deleted &&
           result_potentially_mnl;
  }
  std::vector<std::string> discrepancies() const;
};

/// Removes the selected row, then drops empty columns and columns breaking
/// conditions (2)/(3) (leftmost first, one at a time) until (2), (3) and (4)
/// hold again. Throws Error(Precondition) unless the input is potentially
/// mnl, has at least three rows, and has no empty row.
ReductionTrace reduce_once(const Matrix01& a);

// ---------------------------------------------------------------------------
// Structural lemma checkers
// ---------------------------------------------------------------------------

struct CrossConfig {
  std::size_t r1, r2, r3;
  std::size_t c1, c2, c3;

  bool operator==(const CrossConfig&) const = default;
};

struct CrossViolation {
  CrossConfig cross;
  Cell cell;  // a one outside both open bands (c1,c3) and (r1,r3)
};

std::vector<CrossViolation> check_cross_lemma(const Matrix01& m);

/// Two ones of `row` at columns left < right with at least one column between.
struct StripQuery {
  std::size_t row = 0;
  std::size_t left = 0;
  std::size_t right = 0;

  std::size_t gap() const noexcept { return right - left - 1; }
  bool operator==(const StripQuery&) const = default;
};

struct StripReport {
  std::vector<StripQuery> two_and_one;  // extreme-row pairs not seen by the opposite row
  std::vector<StripQuery> two_in_row;   // pairs seen by neither extreme row
  bool passed() const noexcept { return two_and_one.empty() && two_in_row.empty(); }
};

/// Throws Error(Precondition) for matrices with fewer than two rows.
StripReport check_strip_lemmas(const Matrix01& m);

struct RowCountResult {
  std::size_t row;
  std::size_t ones;
  std::size_t limit;  // 4 for the top and bottom rows, 6 otherwise
  bool passed;
};

std::vector<RowCountResult> check_row_count_bounds(const Matrix01& m);

/// The 16 top/bottom-row configurations, in display order (index 0 is
/// template 1).
std::span<const Matrix01> classification_templates();

struct TemplateMatch {
  std::size_t template_id;  // 1-based display index
  Symmetry symmetry;        // image of the template that matched
  std::vector<std::size_t> column_anchor;  // template column -> host column
};

/// Matches the top and bottom rows (restricted to columns with a one in
/// either) against the templates closed under the dihedral group. Ones that
/// are adjacent in a template row must be adjacent in the host. Throws
/// Error(Precondition) on fewer than two rows or an empty top/bottom row.
std::optional<TemplateMatch> classify_top_bottom(const Matrix01& m);

struct ExtremeRowResult {
  bool passed = true;
  std::optional<std::size_t> row;  // offending extreme row
  std::string reason;
};

/// Shape rules for extreme rows holding exactly three or four ones.
/// Throws Error(Precondition) for matrices with fewer than two rows.
ExtremeRowResult check_extreme_row_structure(const Matrix01& m);

struct DepthFailure {
  StripQuery strip;
  std::size_t rows_above;
  std::size_t rows_below;
  std::size_t limit;  // 2 * gap - 1
};

struct DepthReport {
  std::vector<DepthFailure> failures;
  std::optional<ForbiddenHit> two_and_two;
  bool passed() const noexcept { return failures.empty() && !two_and_two; }
};

DepthReport check_depth_bound(const Matrix01& m);

// ---------------------------------------------------------------------------
// Aggregate filter
// ---------------------------------------------------------------------------

enum Filter : unsigned {
  kFilterCross = 1u << 0,
  kFilterStrip = 1u << 1,
  kFilterRowCounts = 1u << 2,
  kFilterTopBottom = 1u << 3,
  kFilterExtremeRows = 1u << 4,
  kFilterDepth = 1u << 5,
};
inline constexpr unsigned kAllFilters = (1u << 6) - 1;

/// Parses a comma-separated list of filter names ("cross", "strip",
/// "row_counts", "top_bottom", "extreme_rows", "depth", "all", "none").
unsigned parse_filters(std::string_view list);
std::vector<std::string> filter_names(unsigned filters);

struct LemmaFinding {
  std::string check;
  bool passed = true;
  std::string detail;
  std::vector<Cell> cells;
};

struct MnlCheckReport {
  PotentiallyMnlReport conditions;
  std::vector<LemmaFinding> lemma_results;

  bool passed() const noexcept;
};

/// All checks on one orientation of the matrix.
MnlCheckReport check_orientation(const Matrix01& m, unsigned filters = kAllFilters);

/// The checks above are stated for rows and columns separately. Minimal
/// non-linearity is preserved by every dihedral symmetry, so a candidate has
/// to pass them on M and on its transpose; the row/column checks are each
/// invariant under the reflections, which makes the conjunction a
/// symmetry-invariant filter.
struct NecessaryConditionsReport {
  MnlCheckReport direct;
  MnlCheckReport transposed;

  bool passed() const noexcept { return direct.passed() && transposed.passed(); }
};

NecessaryConditionsReport necessary_conditions(const Matrix01& m,
                                               unsigned filters = kAllFilters);
/// Same verdict as necessary_conditions(m, filters).passed(), short-circuiting.
/// Returns the name of the first failing check, or nullopt on pass.
std::optional<std::string> first_failing_check(const Matrix01& m, unsigned filters);

// ---------------------------------------------------------------------------
// Counting bound
// ---------------------------------------------------------------------------

using BigInt = boost::multiprecision::cpp_int;

/// sum_{i=ceil((k+4)/4)}^{4k-4} (i^k - (i-1)^k) * k^(i-1). Throws
/// Error(Domain) for k <= 2.
BigInt count_bound(std::size_t k);

}  // namespace patex

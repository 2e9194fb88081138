#include <algorithm>
#include <array>
#include <bit>

#include "patex/error.hpp"
#include "patex/mnl.hpp"

namespace patex {

namespace {

std::size_t leftmost(std::uint64_t word) {
  return static_cast<std::size_t>(std::countr_zero(word));
}
std::size_t rightmost(std::uint64_t word) {
  return static_cast<std::size_t>(63 - std::countl_zero(word));
}

std::string one_based(std::size_t i) { return std::to_string(i + 1); }

}  // namespace

const ForbiddenFamily& small_nonlinear_family() {
  static const std::array<PatternId, 3> ids = {PatternId::R, PatternId::Q1, PatternId::S1};
  static const ForbiddenFamily family(ids, true);
  return family;
}

bool isolated_interior_column(const Matrix01& m, std::size_t c) {
  if (c == 0 || c + 1 >= m.cols()) return false;
  const std::uint64_t col = m.column_word(c);
  if (std::popcount(col) != 1) return false;
  const std::size_t r = leftmost(col);
  return m.get(r, c - 1) && m.get(r, c + 1);
}

bool isolated_edge_column(const Matrix01& m, std::size_t c) {
  if (m.cols() < 2 || (c != 0 && c + 1 != m.cols())) return false;
  const std::uint64_t col = m.column_word(c);
  if (std::popcount(col) != 1) return false;
  const std::size_t r = leftmost(col);
  return m.get(r, c == 0 ? 1 : c - 1);
}

PotentiallyMnlReport check_potentially_mnl(const Matrix01& m) {
  PotentiallyMnlReport report;
  report.cond1 = small_nonlinear_family().first_hit(m);
  for (std::size_t c = 1; c + 1 < m.cols() && !report.cond2_column; ++c)
    if (isolated_interior_column(m, c)) report.cond2_column = c;
  if (isolated_edge_column(m, 0))
    report.cond3_column = 0;
  else if (isolated_edge_column(m, m.cols() - 1))
    report.cond3_column = m.cols() - 1;
  for (std::size_t c = 0; c < m.cols() && !report.cond4_column; ++c)
    if (m.column_word(c) == 0) report.cond4_column = c;
  return report;
}

bool encompasses(const Matrix01& m, std::size_t r, std::size_t s) {
  if (r >= m.rows() || s >= m.rows())
    throw Error(ErrorKind::Precondition, "row index out of range");
  if (r == s) throw Error(ErrorKind::Precondition, "encompassment needs two distinct rows");
  const std::uint64_t a = m.row_word(r);
  const std::uint64_t b = m.row_word(s);
  if (!a || !b)
    throw Error(ErrorKind::Precondition,
                "row " + one_based(a ? s : r) + " is empty; encompassment needs nonempty rows");
  return leftmost(a) < leftmost(b) && rightmost(a) > rightmost(b);
}

std::size_t select_reduction_row(const Matrix01& m) {
  if (m.rows() < 2)
    throw Error(ErrorKind::Precondition, "row selection needs at least two rows");
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!m.row_word(r))
      throw Error(ErrorKind::Precondition, "row " + one_based(r) + " is empty");

  std::optional<std::size_t> best;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    bool encompasses_some = false;
    for (std::size_t s = 0; s < m.rows() && !encompasses_some; ++s)
      if (s != r && encompasses(m, r, s)) encompasses_some = true;
    if (encompasses_some) continue;
    if (!best) {
      best = r;
      continue;
    }
    const std::size_t right = rightmost(m.row_word(r));
    const std::size_t best_right = rightmost(m.row_word(*best));
    if (right != best_right) {
      if (right > best_right) best = r;
      continue;
    }
    // Ties on ones go to the later (lower) row.
    if (m.row_ones(r) <= m.row_ones(*best)) best = r;
  }
  // Encompassment is a strict partial order on nonempty rows, so a minimal
  // element always exists.
  return *best;
}

std::string_view removal_reason_name(RemovalReason reason) noexcept {
  switch (reason) {
    case RemovalReason::Empty: return "empty";
    case RemovalReason::Cond2: return "cond2";
    case RemovalReason::Cond3: return "cond3";
  }
  return "?";
}

std::vector<std::string> ReductionTrace::discrepancies() const {
  std::vector<std::string> out;
  if (!row_has_at_most_two_ones)
    out.push_back("selected row " + one_based(selected_row) + " has " +
                  std::to_string(row_one_columns.size()) + " ones (claim: at most 2)");
  if (!row_ones_adjacent)
    out.push_back("selected row " + one_based(selected_row) +
                  " has ones in non-adjacent columns");
  if (!at_most_four_deleted)
    out.push_back(std::to_string(ones_deleted) + " ones deleted (claim: at most 4)");
  if (!result_potentially_mnl) out.push_back("reduced matrix is not potentially mnl");
  return out;
}

ReductionTrace reduce_once(const Matrix01& a) {
  if (a.rows() < 3)
    throw Error(ErrorKind::Precondition,
                "reduction needs at least 3 rows, got " + std::to_string(a.rows()));
  const auto pre = check_potentially_mnl(a);
  if (pre.cond1)
    throw Error(ErrorKind::Precondition,
                "input is not potentially mnl: condition (1) fails, contains " +
                    std::string(pattern_name(pre.cond1->pattern)));
  if (pre.cond2_column)
    throw Error(ErrorKind::Precondition,
                "input is not potentially mnl: condition (2) fails at column " +
                    one_based(*pre.cond2_column));
  if (pre.cond3_column)
    throw Error(ErrorKind::Precondition,
                "input is not potentially mnl: condition (3) fails at column " +
                    one_based(*pre.cond3_column));
  if (pre.cond4_column)
    throw Error(ErrorKind::Precondition,
                "input is not potentially mnl: condition (4) fails, column " +
                    one_based(*pre.cond4_column) + " is empty");

  ReductionTrace trace;
  trace.selected_row = select_reduction_row(a);
  trace.row_one_columns = a.row_support(trace.selected_row);
  trace.ones_deleted = trace.row_one_columns.size();
  trace.row_has_at_most_two_ones = trace.row_one_columns.size() <= 2;
  for (std::size_t i = 1; i < trace.row_one_columns.size(); ++i)
    if (trace.row_one_columns[i] != trace.row_one_columns[i - 1] + 1)
      trace.row_ones_adjacent = false;

  Matrix01 m = a.without_row(trace.selected_row);
  std::vector<std::size_t> origin(m.cols());
  for (std::size_t c = 0; c < origin.size(); ++c) origin[c] = c;

  auto remove = [&](std::size_t c, RemovalReason reason) {
    const std::size_t ones = m.column_ones(c);
    trace.removed_columns.push_back({origin[c], reason, ones});
    trace.ones_deleted += ones;
    m = m.without_column(c);
    origin.erase(origin.begin() + static_cast<std::ptrdiff_t>(c));
  };

  // The input has no empty row, so some column of m stays nonempty, and a
  // column breaking (2) or (3) always has a neighbour; m never runs out of
  // columns.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t c = 0; c < m.cols();) {
      if (m.column_word(c) == 0) {
        remove(c, RemovalReason::Empty);
        changed = true;
      } else {
        ++c;
      }
    }
    for (bool fixing = true; fixing;) {
      fixing = false;
      for (std::size_t c = 0; c < m.cols(); ++c) {
        if (isolated_interior_column(m, c)) {
          remove(c, RemovalReason::Cond2);
        } else if (isolated_edge_column(m, c)) {
          remove(c, RemovalReason::Cond3);
        } else {
          continue;
        }
        fixing = changed = true;
        break;
      }
    }
  }

  trace.at_most_four_deleted = trace.ones_deleted <= 4;
  trace.result_potentially_mnl = check_potentially_mnl(m).passed();
  trace.result = std::move(m);
  return trace;
}

BigInt count_bound(std::size_t k) {
  if (k <= 2)
    throw Error(ErrorKind::Domain, "the counting bound is stated for k > 2, got k = " +
                                       std::to_string(k));
  const std::size_t lower = (k + 4 + 3) / 4;
  const std::size_t upper = 4 * k - 4;
  BigInt total = 0;
  const BigInt base = k;
  for (std::size_t i = lower; i <= upper; ++i) {
    const BigInt bi = i;
    const unsigned kk = static_cast<unsigned>(k);
    total += (boost::multiprecision::pow(bi, kk) - boost::multiprecision::pow(BigInt(i - 1), kk)) *
             boost::multiprecision::pow(base, static_cast<unsigned>(i - 1));
  }
  return total;
}

}  // namespace patex

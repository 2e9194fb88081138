#include <algorithm>
#include <array>
#include <bit>

#include "patex/error.hpp"
#include "patex/mnl.hpp"

namespace patex {

namespace {

std::string one_based(std::size_t i) { return std::to_string(i + 1); }

// Columns strictly between `left` and `right`.
std::uint64_t strip_mask(std::size_t left, std::size_t right) {
  return low_mask(right) & ~low_mask(left + 1);
}

template <typename Fn>
void for_each_gapped_pair(const std::vector<std::size_t>& support, Fn&& fn) {
  for (std::size_t a = 0; a < support.size(); ++a)
    for (std::size_t b = a + 1; b < support.size(); ++b)
      if (support[b] - support[a] > 1) fn(support[a], support[b]);
}

void require_two_rows(const Matrix01& m, const char* what) {
  if (m.rows() < 2)
    throw Error(ErrorKind::Precondition, std::string(what) + " needs at least two rows");
}

const ForbiddenFamily& two_and_two_family() {
  static const std::array<PatternId, 1> ids = {PatternId::TwoAndTwo};
  static const ForbiddenFamily family(ids, true);
  return family;
}

}  // namespace

std::vector<CrossViolation> check_cross_lemma(const Matrix01& m) {
  std::vector<CrossViolation> out;
  const auto cols = m.column_words();
  for (std::size_t r2 = 0; r2 < m.rows(); ++r2) {
    const auto support = m.row_support(r2);
    for (std::size_t a = 0; a < support.size(); ++a) {
      for (std::size_t b = a + 1; b < support.size(); ++b) {
        const std::size_t c1 = support[a];
        const std::size_t c3 = support[b];
        for (std::size_t c2 = c1 + 1; c2 < c3; ++c2) {
          const std::uint64_t above = cols[c2] & low_mask(r2);
          const std::uint64_t below = cols[c2] & ~low_mask(r2 + 1);
          for (std::uint64_t u = above; u; u &= u - 1) {
            const auto r1 = static_cast<std::size_t>(std::countr_zero(u));
            for (std::uint64_t d = below; d; d &= d - 1) {
              const auto r3 = static_cast<std::size_t>(std::countr_zero(d));
              const std::uint64_t outside_cols = low_mask(c1 + 1) | ~low_mask(c3);
              const CrossConfig cross{r1, r2, r3, c1, c2, c3};
              for (std::size_t y = 0; y < m.rows(); ++y) {
                if (y > r1 && y < r3) continue;
                for (std::uint64_t w = m.row_word(y) & outside_cols; w; w &= w - 1)
                  out.push_back({cross, {y, static_cast<std::size_t>(std::countr_zero(w))}});
              }
            }
          }
        }
      }
    }
  }
  return out;
}

StripReport check_strip_lemmas(const Matrix01& m) {
  require_two_rows(m, "strip lemmas");
  StripReport report;
  const std::size_t top = 0;
  const std::size_t bottom = m.rows() - 1;

  auto extreme = [&](std::size_t row, std::size_t opposite) {
    for_each_gapped_pair(m.row_support(row), [&](std::size_t c, std::size_t d) {
      if (!(m.row_word(opposite) & strip_mask(c, d))) report.two_and_one.push_back({row, c, d});
    });
  };
  extreme(bottom, top);
  extreme(top, bottom);

  for (std::size_t r = 0; r < m.rows(); ++r) {
    for_each_gapped_pair(m.row_support(r), [&](std::size_t c, std::size_t d) {
      const std::uint64_t mask = strip_mask(c, d);
      const bool seen = (r != top && (m.row_word(top) & mask)) ||
                        (r != bottom && (m.row_word(bottom) & mask));
      if (!seen) report.two_in_row.push_back({r, c, d});
    });
  }
  return report;
}

std::vector<RowCountResult> check_row_count_bounds(const Matrix01& m) {
  std::vector<RowCountResult> out;
  out.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const std::size_t limit = (r == 0 || r + 1 == m.rows()) ? 4 : 6;
    const std::size_t ones = m.row_ones(r);
    out.push_back({r, ones, limit, ones <= limit});
  }
  return out;
}

std::span<const Matrix01> classification_templates() {
  static const std::vector<Matrix01> templates = [] {
    const char* rows[] = {
        "11\n11",         "101\n110",     "1010\n0101",  "00100\n11011",
        "001100\n110011", "010\n111",     "0010\n1101",  "00110\n11001",
        "0110\n1001",     "010\n101",     "01\n11",      "011\n110",
        "0011\n1100",     "001\n110",     "01\n10",      "1\n1",
    };
    std::vector<Matrix01> out;
    for (const char* text : rows) out.push_back(parse_matrix(text));
    return out;
  }();
  return templates;
}

std::optional<TemplateMatch> classify_top_bottom(const Matrix01& m) {
  require_two_rows(m, "top/bottom classification");
  const std::uint64_t top = m.row_word(0);
  const std::uint64_t bottom = m.row_word(m.rows() - 1);
  if (!top || !bottom)
    throw Error(ErrorKind::Precondition,
                std::string(top ? "bottom" : "top") + " row is empty");

  std::vector<std::size_t> columns;
  for (std::uint64_t w = top | bottom; w; w &= w - 1)
    columns.push_back(static_cast<std::size_t>(std::countr_zero(w)));
  Matrix01 host(2, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if ((top >> columns[j]) & 1u) host.set(0, j);
    if ((bottom >> columns[j]) & 1u) host.set(1, j);
  }

  const auto templates = classification_templates();
  for (std::size_t t = 0; t < templates.size(); ++t) {
    for (const auto& image : symmetry_set(templates[t]).images) {
      if (image.matrix != host) continue;
      bool rigid_ok = true;
      for (std::size_t j = 0; j + 1 < columns.size() && rigid_ok; ++j) {
        const bool adjacent_ones = (image.matrix.get(0, j) && image.matrix.get(0, j + 1)) ||
                                   (image.matrix.get(1, j) && image.matrix.get(1, j + 1));
        if (adjacent_ones && columns[j + 1] != columns[j] + 1) rigid_ok = false;
      }
      if (rigid_ok) return TemplateMatch{t + 1, image.op, columns};
    }
  }
  return std::nullopt;
}

namespace {

// Checks the ones of the opposite extreme row: one or two of them, inside
// [lo, hi], adjacent when there are two.
std::optional<std::string> opposite_within(const std::vector<std::size_t>& opposite,
                                           std::size_t lo, std::size_t hi) {
  if (opposite.empty() || opposite.size() > 2)
    return "opposite extreme row has " + std::to_string(opposite.size()) +
           " ones (needs 1 or 2)";
  for (std::size_t c : opposite)
    if (c < lo || c > hi)
      return "opposite extreme row has a one at column " + one_based(c) + " outside [" +
             one_based(lo) + "," + one_based(hi) + "]";
  if (opposite.size() == 2 && opposite[1] != opposite[0] + 1)
    return "opposite extreme row has two non-adjacent ones";
  return std::nullopt;
}

std::optional<std::string> extreme_row_problem(const Matrix01& m, std::size_t row,
                                               std::size_t opposite_row) {
  const auto p = m.row_support(row);
  const auto opposite = m.row_support(opposite_row);
  if (p.size() == 4) {
    if (p[1] != p[0] + 1 || p[3] != p[2] + 1)
      return std::string("four ones not arranged as two adjacent pairs");
    const std::size_t x = p[0];
    const std::size_t y = p[2];
    if (y <= x + 2) return std::string("four ones in consecutive columns (y > x+2 violated)");
    return opposite_within(opposite, x + 2, y - 1);
  }
  if (p.size() == 3) {
    const bool left_pair = p[1] == p[0] + 1;
    const bool right_pair = p[2] == p[1] + 1;
    if (left_pair && right_pair) {
      if (opposite.size() != 1 || opposite[0] != p[1])
        return "three consecutive ones need the opposite extreme row to hold exactly one "
               "one, at column " +
               one_based(p[1]);
      return std::nullopt;
    }
    if (left_pair) return opposite_within(opposite, p[1] + 1, p[2] - 1);
    if (right_pair) return opposite_within(opposite, p[0] + 1, p[1] - 1);
    return std::string("three mutually non-adjacent ones");
  }
  return std::nullopt;
}

}  // namespace

ExtremeRowResult check_extreme_row_structure(const Matrix01& m) {
  require_two_rows(m, "extreme-row structure");
  const std::size_t bottom = m.rows() - 1;
  if (auto problem = extreme_row_problem(m, bottom, 0))
    return {false, bottom, "bottom row: " + *problem};
  if (auto problem = extreme_row_problem(m, 0, bottom)) return {false, 0, "top row: " + *problem};
  return {};
}

DepthReport check_depth_bound(const Matrix01& m) {
  DepthReport report;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for_each_gapped_pair(m.row_support(r), [&](std::size_t c, std::size_t d) {
      const std::uint64_t mask = strip_mask(c, d);
      std::size_t above = 0;
      std::size_t below = 0;
      for (std::size_t y = 0; y < m.rows(); ++y) {
        if (!(m.row_word(y) & mask)) continue;
        if (y < r) ++above;
        if (y > r) ++below;
      }
      const std::size_t limit = 2 * (d - c - 1) - 1;
      if (above > limit || below > limit) report.failures.push_back({{r, c, d}, above, below, limit});
    });
  }
  report.two_and_two = two_and_two_family().first_hit(m);
  return report;
}

// ---------------------------------------------------------------------------

unsigned parse_filters(std::string_view list) {
  unsigned flags = 0;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t end = list.find(',', pos);
    if (end == std::string_view::npos) end = list.size();
    const std::string_view name = list.substr(pos, end - pos);
    pos = end + 1;
    if (name.empty()) continue;
    if (name == "all") flags |= kAllFilters;
    else if (name == "none") {}
    else if (name == "cross") flags |= kFilterCross;
    else if (name == "strip") flags |= kFilterStrip;
    else if (name == "row_counts") flags |= kFilterRowCounts;
    else if (name == "top_bottom") flags |= kFilterTopBottom;
    else if (name == "extreme_rows") flags |= kFilterExtremeRows;
    else if (name == "depth") flags |= kFilterDepth;
    else
      throw Error(ErrorKind::Parse, "unknown filter '" + std::string(name) +
                                        "' (cross, strip, row_counts, top_bottom, "
                                        "extreme_rows, depth, all, none)");
  }
  return flags;
}

std::vector<std::string> filter_names(unsigned filters) {
  std::vector<std::string> out;
  if (filters & kFilterCross) out.emplace_back("cross");
  if (filters & kFilterStrip) out.emplace_back("strip");
  if (filters & kFilterRowCounts) out.emplace_back("row_counts");
  if (filters & kFilterTopBottom) out.emplace_back("top_bottom");
  if (filters & kFilterExtremeRows) out.emplace_back("extreme_rows");
  if (filters & kFilterDepth) out.emplace_back("depth");
  return out;
}

bool MnlCheckReport::passed() const noexcept {
  return conditions.passed() &&
         std::all_of(lemma_results.begin(), lemma_results.end(),
                     [](const LemmaFinding& f) { return f.passed; });
}

namespace {

std::string strip_text(const StripQuery& q) {
  return "row " + one_based(q.row) + " columns " + one_based(q.left) + "," + one_based(q.right);
}

LemmaFinding cross_finding(const Matrix01& m) {
  LemmaFinding f{"cross", true, "", {}};
  const auto violations = check_cross_lemma(m);
  if (violations.empty()) return f;
  f.passed = false;
  const auto& v = violations.front();
  f.detail = std::to_string(violations.size()) + " violation(s); first: one at (" +
             one_based(v.cell.row) + "," + one_based(v.cell.col) + ") outside cross rows " +
             one_based(v.cross.r1) + "<" + one_based(v.cross.r2) + "<" + one_based(v.cross.r3) +
             ", columns " + one_based(v.cross.c1) + "<" + one_based(v.cross.c2) + "<" +
             one_based(v.cross.c3);
  for (const auto& x : violations)
    if (std::find(f.cells.begin(), f.cells.end(), x.cell) == f.cells.end())
      f.cells.push_back(x.cell);
  return f;
}

std::vector<LemmaFinding> strip_findings(const Matrix01& m) {
  LemmaFinding a{"two_and_one", true, "", {}};
  LemmaFinding b{"two_in_row", true, "", {}};
  if (m.rows() < 2) {
    a.passed = b.passed = false;
    a.detail = b.detail = "needs at least 2 rows";
    return {a, b};
  }
  const auto report = check_strip_lemmas(m);
  auto fill = [](LemmaFinding& f, const std::vector<StripQuery>& failing, const char* what) {
    if (failing.empty()) return;
    f.passed = false;
    f.detail = std::to_string(failing.size()) + " failing pair(s); first: " +
               strip_text(failing.front()) + " " + what;
    for (const auto& q : failing) {
      f.cells.push_back({q.row, q.left});
      f.cells.push_back({q.row, q.right});
    }
  };
  fill(a, report.two_and_one, "has no one of the opposite extreme row strictly between");
  fill(b, report.two_in_row, "has no one of the top or bottom row strictly between");
  return {a, b};
}

LemmaFinding row_count_finding(const Matrix01& m) {
  LemmaFinding f{"row_counts", true, "", {}};
  for (const auto& r : check_row_count_bounds(m)) {
    if (r.passed) continue;
    if (f.passed)
      f.detail = "row " + one_based(r.row) + " has " + std::to_string(r.ones) +
                 " ones (limit " + std::to_string(r.limit) + ")";
    f.passed = false;
    for (std::size_t c : m.row_support(r.row)) f.cells.push_back({r.row, c});
  }
  return f;
}

LemmaFinding top_bottom_finding(const Matrix01& m) {
  LemmaFinding f{"top_bottom", true, "", {}};
  if (m.rows() < 2 || !m.row_word(0) || !m.row_word(m.rows() - 1)) {
    f.passed = false;
    f.detail = m.rows() < 2 ? "needs at least 2 rows" : "top or bottom row is empty";
    return f;
  }
  if (auto match = classify_top_bottom(m)) {
    f.detail = "template " + std::to_string(match->template_id) + " (" +
               std::string(symmetry_name(match->symmetry)) + ")";
    return f;
  }
  f.passed = false;
  f.detail = "top/bottom rows match no template";
  for (std::size_t c : m.row_support(0)) f.cells.push_back({0, c});
  for (std::size_t c : m.row_support(m.rows() - 1)) f.cells.push_back({m.rows() - 1, c});
  return f;
}

LemmaFinding extreme_row_finding(const Matrix01& m) {
  LemmaFinding f{"extreme_rows", true, "", {}};
  if (m.rows() < 2) {
    f.passed = false;
    f.detail = "needs at least 2 rows";
    return f;
  }
  const auto r = check_extreme_row_structure(m);
  if (r.passed) return f;
  f.passed = false;
  f.detail = r.reason;
  for (std::size_t c : m.row_support(*r.row)) f.cells.push_back({*r.row, c});
  return f;
}

LemmaFinding depth_finding(const Matrix01& m) {
  LemmaFinding f{"depth_bound", true, "", {}};
  const auto report = check_depth_bound(m);
  if (report.passed()) return f;
  f.passed = false;
  if (!report.failures.empty()) {
    const auto& x = report.failures.front();
    f.detail = std::to_string(report.failures.size()) + " failing pair(s); first: " +
               strip_text(x.strip) + " sees " + std::to_string(x.rows_above) + " row(s) above and " +
               std::to_string(x.rows_below) + " below (limit " + std::to_string(x.limit) + ")";
    for (const auto& y : report.failures) {
      f.cells.push_back({y.strip.row, y.strip.left});
      f.cells.push_back({y.strip.row, y.strip.right});
    }
  } else {
    f.detail = "contains TWO_AND_TWO (" +
               std::string(symmetry_name(report.two_and_two->symmetry)) + ")";
  }
  if (report.two_and_two) {
    const auto& hit = *report.two_and_two;
    for (std::size_t i = 0; i < hit.image.rows(); ++i)
      for (std::size_t j = 0; j < hit.image.cols(); ++j)
        if (hit.image.get(i, j)) f.cells.push_back({hit.embedding.rows[i], hit.embedding.cols[j]});
  }
  return f;
}

std::optional<std::string> orientation_failure(const Matrix01& m, unsigned filters) {
  // Cheap structural conditions first; cond1 is the costly containment test.
  const auto has_empty_column = [&] {
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m.column_word(c)) return true;
    return false;
  };
  if (has_empty_column()) return "cond4";
  for (std::size_t c = 1; c + 1 < m.cols(); ++c)
    if (isolated_interior_column(m, c)) return "cond2";
  if (isolated_edge_column(m, 0) || isolated_edge_column(m, m.cols() - 1)) return "cond3";
  if (small_nonlinear_family().first_hit(m)) return "cond1";
  if ((filters & kFilterRowCounts) && !row_count_finding(m).passed) return "row_counts";
  if (filters & kFilterStrip) {
    if (m.rows() < 2) return "two_and_one";
    const auto s = check_strip_lemmas(m);
    if (!s.two_and_one.empty()) return "two_and_one";
    if (!s.two_in_row.empty()) return "two_in_row";
  }
  if ((filters & kFilterExtremeRows) && !extreme_row_finding(m).passed) return "extreme_rows";
  if ((filters & kFilterTopBottom) && !top_bottom_finding(m).passed) return "top_bottom";
  if ((filters & kFilterCross) && !check_cross_lemma(m).empty()) return "cross";
  if ((filters & kFilterDepth) && !check_depth_bound(m).passed()) return "depth_bound";
  return std::nullopt;
}

}  // namespace

MnlCheckReport check_orientation(const Matrix01& m, unsigned filters) {
  MnlCheckReport report;
  report.conditions = check_potentially_mnl(m);
  if (filters & kFilterCross) report.lemma_results.push_back(cross_finding(m));
  if (filters & kFilterStrip)
    for (auto& f : strip_findings(m)) report.lemma_results.push_back(std::move(f));
  if (filters & kFilterRowCounts) report.lemma_results.push_back(row_count_finding(m));
  if (filters & kFilterTopBottom) report.lemma_results.push_back(top_bottom_finding(m));
  if (filters & kFilterExtremeRows) report.lemma_results.push_back(extreme_row_finding(m));
  if (filters & kFilterDepth) report.lemma_results.push_back(depth_finding(m));
  return report;
}

NecessaryConditionsReport necessary_conditions(const Matrix01& m, unsigned filters) {
  return {check_orientation(m, filters), check_orientation(apply(Symmetry::Transpose, m), filters)};
}

std::optional<std::string> first_failing_check(const Matrix01& m, unsigned filters) {
  if (auto f = orientation_failure(m, filters)) return f;
  if (auto f = orientation_failure(apply(Symmetry::Transpose, m), filters))
    return "transposed:" + *f;
  return std::nullopt;
}

}  // namespace patex

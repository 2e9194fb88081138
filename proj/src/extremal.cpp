#include "patex/extremal.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <random>
#include <span>

#include "patex/containment.hpp"
#include "patex/error.hpp"

namespace patex {

namespace {

void check_problem(std::size_t n, const Matrix01& pattern) {
  if (n == 0 || n > kMaxDim)
    throw Error(ErrorKind::Domain, "side length must be in 1.." + std::to_string(kMaxDim));
  if (pattern.ones() == 0)
    throw Error(ErrorKind::Domain,
                "pattern has no ones; every matrix large enough contains it");
}

// Decides whether a matrix whose cells after (r, c) in row-major order are all
// zero contains the pattern through the cell (r, c). Under that precondition
// any such embedding maps the pattern's last nonempty row onto r and that
// row's last one onto c, which fixes one row and one column of the search.
class AnchoredMatcher {
 public:
  explicit AnchoredMatcher(const Matrix01& pattern) : pattern_(pattern) {
    for (std::size_t p = pattern.rows(); p-- > 0;)
      if (pattern.row_word(p)) {
        last_row_ = p;
        break;
      }
    last_col_ = static_cast<std::size_t>(63 - std::countl_zero(pattern.row_word(last_row_)));
  }

  /// `hay_cols[c]` is the mask over rows of column c of the haystack.
  bool hits(std::span<const std::uint64_t> hay_cols, std::size_t hay_rows, std::size_t r,
            std::size_t c) const {
    const std::size_t pr = pattern_.rows();
    const std::size_t pc = pattern_.cols();
    if (r < last_row_ || hay_rows - 1 - r < pr - 1 - last_row_) return false;
    if (c < last_col_ || hay_cols.size() - 1 - c < pc - 1 - last_col_) return false;
    std::array<std::uint64_t, kMaxDim> req{};
    for (std::uint64_t w = pattern_.row_word(last_row_); w; w &= w - 1)
      req[static_cast<std::size_t>(std::countr_zero(w))] |= std::uint64_t{1} << r;
    if (!fits(hay_cols, req, c)) return false;
    return descend(hay_cols, 0, 0, r, c, req);
  }

 private:
  bool fits(std::span<const std::uint64_t> hay_cols,
            const std::array<std::uint64_t, kMaxDim>& req, std::size_t c) const {
    if ((hay_cols[c] & req[last_col_]) != req[last_col_]) return false;
    std::size_t h = 0;
    for (std::size_t q = 0; q < last_col_; ++q, ++h) {
      while (h < c && (hay_cols[h] & req[q]) != req[q]) ++h;
      if (h == c) return false;
    }
    h = c + 1;
    for (std::size_t q = last_col_ + 1; q < pattern_.cols(); ++q, ++h) {
      while (h < hay_cols.size() && (hay_cols[h] & req[q]) != req[q]) ++h;
      if (h == hay_cols.size()) return false;
    }
    return true;
  }

  bool descend(std::span<const std::uint64_t> hay_cols, std::size_t p, std::size_t start,
               std::size_t r, std::size_t c, const std::array<std::uint64_t, kMaxDim>& req) const {
    if (p == last_row_) return true;
    const std::uint64_t word = pattern_.row_word(p);
    const std::size_t remaining = last_row_ - p;
    for (std::size_t h = start; h + remaining <= r; ++h) {
      if (!word) return descend(hay_cols, p + 1, h + 1, r, c, req);
      auto next = req;
      for (std::uint64_t w = word; w; w &= w - 1)
        next[static_cast<std::size_t>(std::countr_zero(w))] |= std::uint64_t{1} << h;
      if (fits(hay_cols, next, c) && descend(hay_cols, p + 1, h + 1, r, c, next)) return true;
    }
    return false;
  }

  const Matrix01& pattern_;
  std::size_t last_row_ = 0;
  std::size_t last_col_ = 0;
};

// Solves strips of a fixed width and increasing height. Exact strip values
// for fewer rows bound how many ones the unfilled rows of a taller strip can
// still take.
class StripSolver {
 public:
  StripSolver(const Matrix01& pattern, std::size_t width, std::uint64_t budget)
      : pattern_(pattern), matcher_(pattern), width_(width), budget_(budget), strip_bound_{0} {}

  struct Outcome {
    std::size_t value;
    bool exact;
    Matrix01 witness;
  };

  /// Solves all thinner strips first, then `rows` x width.
  Outcome solve_with_support(std::size_t rows, const std::optional<Matrix01>& warm) {
    for (std::size_t a = strip_bound_.size(); a < rows; ++a) {
      Outcome sub = solve(a, std::nullopt);
      strip_bound_.push_back(sub.exact ? sub.value
                                       : std::min(a * width_, strip_bound_.back() + width_));
    }
    return solve(rows, warm);
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  Outcome solve(std::size_t rows, const std::optional<Matrix01>& warm) {
    rows_ = rows;
    cells_ = rows * width_;
    current_ = Matrix01(rows, width_);
    col_words_.assign(width_, 0);
    row_ones_.assign(rows, 0);
    ones_ = 0;
    aborted_ = false;
    best_matrix_ = Matrix01(rows, width_);
    best_ = 0;
    if (warm && warm->rows() == rows && warm->cols() == width_ &&
        !contains(*warm, pattern_)) {
      best_matrix_ = *warm;
      best_ = warm->ones();
    }
    descend(0);
    return {best_, !aborted_, best_matrix_};
  }

  // Upper bound on ones in an a x width strip avoiding the pattern.
  std::size_t strip_bound(std::size_t a) const {
    return a < strip_bound_.size() ? strip_bound_[a] : a * width_;
  }

  void descend(std::size_t cell) {
    if (aborted_) return;
    if (nodes_ >= budget_) {
      aborted_ = true;
      return;
    }
    ++nodes_;

    const std::size_t i = cell / width_;
    const std::size_t j = cell % width_;
    std::size_t future = cells_ - cell;
    if (cell < cells_) {
      const std::size_t below = rows_ - 1 - i;
      future = std::min(future, (width_ - j) + strip_bound(below));
      const std::size_t here = strip_bound(rows_ - i);
      future = std::min(future, here > row_ones_[i] ? here - row_ones_[i] : 0);
    }
    if (ones_ + future <= best_) return;
    if (cell == cells_) {
      best_ = ones_;
      best_matrix_ = current_;
      return;
    }

    current_.set(i, j);
    col_words_[j] |= std::uint64_t{1} << i;
    ++ones_;
    ++row_ones_[i];
    if (!matcher_.hits(col_words_, rows_, i, j)) descend(cell + 1);
    current_.set(i, j, false);
    col_words_[j] &= ~(std::uint64_t{1} << i);
    --ones_;
    --row_ones_[i];
    if (aborted_) return;

    descend(cell + 1);
  }

  const Matrix01& pattern_;
  AnchoredMatcher matcher_;
  std::size_t width_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::size_t> strip_bound_;

  std::size_t rows_ = 0;
  std::size_t cells_ = 0;
  Matrix01 current_{1, 1};
  std::vector<std::uint64_t> col_words_;
  std::vector<std::size_t> row_ones_;
  std::size_t ones_ = 0;
  bool aborted_ = false;
  std::size_t best_ = 0;
  Matrix01 best_matrix_{1, 1};
};

}  // namespace

std::size_t ex_bruteforce(std::size_t n, const Matrix01& pattern) {
  if (n == 0) throw Error(ErrorKind::Domain, "side length must be at least 1");
  if (n > kBruteforceMaxSide)
    throw Error(ErrorKind::SizeGuard,
                "brute-force extremal search is limited to n <= 4, got n = " +
                    std::to_string(n));
  const std::size_t cells = n * n;
  std::size_t best = 0;
  const std::uint64_t total = std::uint64_t{1} << cells;
  const std::uint64_t row_mask = low_mask(n);
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    const auto count = static_cast<std::size_t>(std::popcount(bits));
    if (count <= best) continue;
    std::vector<std::uint64_t> rows(n);
    for (std::size_t r = 0; r < n; ++r) rows[r] = (bits >> (r * n)) & row_mask;
    if (!contains(Matrix01::from_words(n, std::move(rows)), pattern)) best = std::max(best, count);
  }
  return best;
}

ExtremalResult ex_exact(std::size_t n, const Matrix01& pattern, std::uint64_t node_budget,
                        const std::optional<Matrix01>& warm_start) {
  check_problem(n, pattern);
  const auto start = std::chrono::steady_clock::now();

  StripSolver solver(pattern, n, node_budget);
  auto outcome = solver.solve_with_support(n, warm_start);

  ExtremalResult result;
  result.n = n;
  result.pattern = pattern;
  result.value = outcome.value;
  result.exact = outcome.exact;
  result.witness = std::move(outcome.witness);
  result.nodes_explored = solver.nodes();
  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

ExtremalResult ex_lower_greedy(std::size_t n, const Matrix01& pattern, std::uint64_t seed) {
  check_problem(n, pattern);
  const auto start = std::chrono::steady_clock::now();

  std::vector<std::size_t> order(n * n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  Matrix01 m(n, n);
  for (std::size_t cell : order) {
    m.set(cell / n, cell % n);
    if (contains(m, pattern)) m.set(cell / n, cell % n, false);
  }

  ExtremalResult result;
  result.n = n;
  result.pattern = pattern;
  result.value = m.ones();
  result.exact = false;
  result.witness = std::move(m);
  result.nodes_explored = n * n;
  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

GrowthTable ex_table(const Matrix01& pattern, std::size_t n_max, std::uint64_t node_budget,
                     std::uint64_t seed) {
  if (n_max == 0) throw Error(ErrorKind::Domain, "n_max must be at least 1");
  GrowthTable table;
  table.pattern = pattern;
  for (std::size_t n = 1; n <= n_max; ++n) {
    auto warm = ex_lower_greedy(n, pattern, seed);
    auto r = ex_exact(n, pattern, node_budget, warm.witness);
    table.entries.push_back({n, r.value, r.exact,
                             static_cast<double>(r.value) / static_cast<double>(n),
                             r.nodes_explored});
  }
  return table;
}

}  // namespace patex

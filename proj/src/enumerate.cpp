#include "patex/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "patex/error.hpp"
#include "patex/symmetry.hpp"

namespace patex {

namespace {

inline constexpr std::size_t kMaxEnumerationRows = 10;

struct SharedState {
  const EnumerationOptions& options;
  std::size_t bound;      // 4k-4
  std::size_t max_cols;   // emission width limit
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> exhausted{false};
};

class Worker {
 public:
  explicit Worker(SharedState& shared)
      : shared_(shared), k_(shared.options.k), rows_(shared.options.k, 0) {}

  /// Visits the prefix extended by `column`; recurses when `expand`.
  void visit(std::uint64_t column, bool expand) {
    push(column);
    process(expand);
    pop();
  }

  void push(std::uint64_t column) {
    const std::size_t w = width_++;
    for (std::size_t r = 0; r < k_; ++r)
      if ((column >> r) & 1u) rows_[r] |= std::uint64_t{1} << w;
  }

  void pop() {
    const std::size_t w = --width_;
    for (auto& row : rows_) row &= ~(std::uint64_t{1} << w);
  }

  /// Judges the current prefix; returns false when it was cut.
  bool process(bool expand) {
    if (shared_.nodes.fetch_add(1, std::memory_order_relaxed) >= shared_.options.node_budget) {
      shared_.exhausted = true;
      return false;
    }
    ++stats_.nodes;
    const std::size_t w = width_;
    stats_.widest_prefix = std::max(stats_.widest_prefix, w);
    const Matrix01 m = Matrix01::from_words(w, rows_);

    if (small_nonlinear_family().first_hit(m)) return cut("prefix:cond1");
    if (w >= 3 && isolated_interior_column(m, w - 2)) return cut("prefix:cond2");
    if (w >= 2 && isolated_edge_column(m, 0)) return cut("prefix:cond3");

    // Conditions (1), (2) and the first-column half of (3) were settled
    // above or at ancestors; columns are nonzero by construction.
    if (isolated_edge_column(m, w - 1)) {
      ++stats_.pruned["cond3"];
    } else {
      const std::size_t ones = m.ones();
      if (ones > shared_.bound || w > shared_.bound) stats_.bound_violations.push_back(m);
      if (w > shared_.max_cols) {
        ++stats_.pruned["width"];
      } else if (auto failing = first_failing_check(m, shared_.options.filters)) {
        ++stats_.pruned[*failing];
      } else if (canonical_form(m) != m) {
        ++stats_.pruned["non_canonical"];
      } else {
        emitted_.push_back(m);
      }
    }

    if (expand && w < kMaxDim) {
      const std::uint64_t limit = std::uint64_t{1} << k_;
      for (std::uint64_t v = 1; v < limit && !shared_.exhausted; ++v) visit(v, true);
    }
    return true;
  }

  EnumerationStats& stats() { return stats_; }
  std::vector<Matrix01>& emitted() { return emitted_; }

 private:
  bool cut(const char* reason) {
    ++stats_.pruned[reason];
    return false;
  }

  SharedState& shared_;
  std::size_t k_;
  std::vector<std::uint64_t> rows_;
  std::size_t width_ = 0;
  EnumerationStats stats_;
  std::vector<Matrix01> emitted_;
};

void merge(EnumerationStats& into, EnumerationStats& from) {
  into.nodes += from.nodes;
  for (const auto& [name, count] : from.pruned) into.pruned[name] += count;
  into.widest_prefix = std::max(into.widest_prefix, from.widest_prefix);
  for (auto& m : from.bound_violations) into.bound_violations.push_back(std::move(m));
}

}  // namespace

CandidateStream enumerate_candidates(const EnumerationOptions& options) {
  if (options.k < 2 || options.k > kMaxEnumerationRows)
    throw Error(ErrorKind::Domain, "enumeration supports 2 <= k <= " +
                                       std::to_string(kMaxEnumerationRows) + ", got k = " +
                                       std::to_string(options.k));
  const std::size_t bound = 4 * options.k - 4;
  const std::size_t max_cols = options.max_cols.value_or(bound);
  if (max_cols == 0) throw Error(ErrorKind::Domain, "max_cols must be at least 1");
  SharedState shared{options, bound, max_cols};
  const std::uint64_t limit = std::uint64_t{1} << options.k;

  std::vector<Worker> workers;
  if (options.threads <= 1) {
    workers.emplace_back(shared);
    for (std::uint64_t v = 1; v < limit && !shared.exhausted; ++v) workers[0].visit(v, true);
  } else {
    // Single columns are judged up front; their viable two-column extensions
    // become the work items.
    workers.emplace_back(shared);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> tasks;
    for (std::uint64_t v = 1; v < limit; ++v) {
      workers[0].push(v);
      const bool viable = workers[0].process(false);
      workers[0].pop();
      if (!viable) continue;
      for (std::uint64_t u = 1; u < limit; ++u) tasks.emplace_back(v, u);
    }
    const unsigned count = options.threads;
    for (unsigned t = 1; t < count; ++t) workers.emplace_back(shared);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < count; ++t) {
      pool.emplace_back([&, t] {
        Worker& w = workers[t];
        for (std::size_t i; (i = next.fetch_add(1)) < tasks.size() && !shared.exhausted;) {
          w.push(tasks[i].first);
          w.visit(tasks[i].second, true);
          w.pop();
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  CandidateStream stream;
  stream.k = options.k;
  for (auto& w : workers) {
    merge(stream.stats, w.stats());
    for (auto& m : w.emitted()) stream.emitted.push_back(std::move(m));
  }
  std::sort(stream.emitted.begin(), stream.emitted.end());
  std::sort(stream.stats.bound_violations.begin(), stream.stats.bound_violations.end());
  stream.stats.complete = !shared.exhausted;
  for (const auto& m : stream.emitted) {
    stream.stats.max_ones = std::max(stream.stats.max_ones, m.ones());
    stream.stats.max_cols = std::max(stream.stats.max_cols, m.cols());
  }
  return stream;
}

bool BoundsVerification::passed() const noexcept {
  return stream.stats.complete && stream.stats.bound_violations.empty() &&
         stream.stats.max_ones <= ones_bound && stream.stats.max_cols <= cols_bound &&
         reduction_failures.empty();
}

BoundsVerification verify_bounds(const EnumerationOptions& options) {
  BoundsVerification v;
  v.stream = enumerate_candidates(options);
  v.ones_bound = v.cols_bound = 4 * options.k - 4;
  if (options.k >= 3) {
    for (const auto& m : v.stream.emitted) {
      const auto trace = reduce_once(m);
      ++v.reductions_checked;
      auto problems = trace.discrepancies();
      if (trace.result.rows() != options.k - 1)
        problems.push_back("reduced matrix has " + std::to_string(trace.result.rows()) + " rows");
      if (!problems.empty()) v.reduction_failures.emplace_back(m, std::move(problems));
    }
  }
  return v;
}

}  // namespace patex

#include "patex/containment.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "patex/error.hpp"

namespace patex {

namespace {

using ColumnRequirements = std::array<std::uint64_t, kMaxDim>;

// Rows are assigned depth-first in increasing order; after each assignment the
// needle columns must still fit greedily (leftmost-first) into the haystack
// columns. The greedy column fit is exact for a fixed row map and yields the
// least column map, so the first complete assignment is the least embedding.
class RowFirstMatcher {
 public:
  RowFirstMatcher(const Matrix01& haystack, const Matrix01& needle)
      : needle_(needle),
        hay_cols_(haystack.column_words()),
        hay_rows_(haystack.rows()),
        row_map_(needle.rows(), 0) {
    hay_row_ones_.reserve(haystack.rows());
    for (std::size_t r = 0; r < haystack.rows(); ++r)
      hay_row_ones_.push_back(haystack.row_ones(r));
  }

  std::optional<Embedding> run() {
    ColumnRequirements req{};
    if (!descend(0, 0, req)) return std::nullopt;
    Embedding e;
    e.rows = row_map_;
    fit_columns(final_req_, &e.cols);
    return e;
  }

 private:
  bool fit_columns(const ColumnRequirements& req, std::vector<std::size_t>* out) const {
    std::size_t c = 0;
    const std::size_t hc = hay_cols_.size();
    for (std::size_t j = 0; j < needle_.cols(); ++j) {
      while (c < hc && (hay_cols_[c] & req[j]) != req[j]) ++c;
      if (c == hc) return false;
      if (out) out->push_back(c);
      ++c;
    }
    return true;
  }

  bool descend(std::size_t i, std::size_t start, const ColumnRequirements& req) {
    if (i == needle_.rows()) {
      final_req_ = req;
      return true;
    }
    const std::uint64_t word = needle_.row_word(i);
    const std::size_t need = needle_.row_ones(i);
    const std::size_t remaining = needle_.rows() - i;
    for (std::size_t r = start; r + remaining <= hay_rows_; ++r) {
      if (hay_row_ones_[r] < need) continue;
      ColumnRequirements next = req;
      for (std::uint64_t w = word; w; w &= w - 1)
        next[static_cast<std::size_t>(std::countr_zero(w))] |= std::uint64_t{1} << r;
      if (word && !fit_columns(next, nullptr)) continue;
      row_map_[i] = r;
      if (descend(i + 1, r + 1, next)) return true;
    }
    return false;
  }

  const Matrix01& needle_;
  std::vector<std::uint64_t> hay_cols_;
  std::vector<std::size_t> hay_row_ones_;
  std::size_t hay_rows_;
  std::vector<std::size_t> row_map_;
  ColumnRequirements final_req_{};
};

// Advances a strictly increasing index tuple over [0, n) in lexicographic
// order; returns false after the last tuple.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t pos = k; pos-- > 0;) {
    if (idx[pos] < n - k + pos) {
      ++idx[pos];
      for (std::size_t q = pos + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::size_t> first_combination(std::size_t k) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  return idx;
}

}  // namespace

std::optional<Embedding> contains(const Matrix01& haystack, const Matrix01& needle) {
  if (needle.rows() > haystack.rows() || needle.cols() > haystack.cols())
    return std::nullopt;
  return RowFirstMatcher(haystack, needle).run();
}

std::optional<Embedding> contains_bruteforce(const Matrix01& haystack,
                                             const Matrix01& needle) {
  if (haystack.rows() > kBruteforceMaxDim || haystack.cols() > kBruteforceMaxDim)
    throw Error(ErrorKind::SizeGuard,
                "brute-force containment is limited to 6x6 haystacks, got " +
                    std::to_string(haystack.rows()) + "x" +
                    std::to_string(haystack.cols()));
  if (needle.rows() > haystack.rows() || needle.cols() > haystack.cols())
    return std::nullopt;

  std::vector<std::size_t> rows = first_combination(needle.rows());
  do {
    std::vector<std::size_t> cols = first_combination(needle.cols());
    do {
      bool ok = true;
      for (std::size_t i = 0; i < needle.rows() && ok; ++i)
        for (std::size_t j = 0; j < needle.cols() && ok; ++j)
          if (needle.get(i, j) && !haystack.get(rows[i], cols[j])) ok = false;
      if (ok) return Embedding{rows, cols};
    } while (next_combination(cols, haystack.cols()));
  } while (next_combination(rows, haystack.rows()));
  return std::nullopt;
}

ForbiddenFamily::ForbiddenFamily(std::span<const PatternId> ids, bool close_under_symmetry) {
  for (PatternId id : all_patterns()) {
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) continue;
    Matrix01 base = builtin_pattern(id);
    if (!close_under_symmetry) {
      members_.push_back({id, Symmetry::Identity, std::move(base)});
      continue;
    }
    for (auto& img : symmetry_set(base).images)
      members_.push_back({id, img.op, std::move(img.matrix)});
  }
}

std::optional<ForbiddenHit> ForbiddenFamily::first_hit(const Matrix01& m) const {
  for (const Member& member : members_)
    if (auto e = contains(m, member.image))
      return ForbiddenHit{member.pattern, member.symmetry, member.image, std::move(*e)};
  return std::nullopt;
}

std::optional<ForbiddenHit> avoids_all(const Matrix01& m, std::span<const PatternId> ids,
                                       bool close_under_symmetry) {
  if (ids.empty())
    throw Error(ErrorKind::Precondition, "avoids_all needs at least one pattern id");
  return ForbiddenFamily(ids, close_under_symmetry).first_hit(m);
}

}  // namespace patex

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace patex {

/// Largest supported row or column count; each row (and each column mask)
/// fits in one 64-bit word.
inline constexpr std::size_t kMaxDim = 63;

inline constexpr std::uint64_t low_mask(std::size_t width) noexcept {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

/// Rectangular 0-1 matrix with bit-packed rows. Bit j of row i is entry
/// (i, j). Indices are 0-based here; everything rendered for humans is
/// 1-based.
class Matrix01 {
 public:
  /// All-zero matrix. Throws Error(Domain) unless 1 <= rows, cols <= kMaxDim.
  Matrix01(std::size_t rows, std::size_t cols);

  /// Builds from row words; bits at or above `cols` must be clear.
  static Matrix01 from_words(std::size_t cols, std::vector<std::uint64_t> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const noexcept {
    return (bits_[r] >> c) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool value = true) noexcept {
    if (value)
      bits_[r] |= std::uint64_t{1} << c;
    else
      bits_[r] &= ~(std::uint64_t{1} << c);
  }

  std::uint64_t row_word(std::size_t r) const noexcept { return bits_[r]; }
  std::span<const std::uint64_t> row_words() const noexcept { return bits_; }

  /// Mask over rows of the ones in column c.
  std::uint64_t column_word(std::size_t c) const noexcept;
  std::vector<std::uint64_t> column_words() const;

  std::size_t ones() const noexcept;
  std::size_t row_ones(std::size_t r) const noexcept;
  std::size_t column_ones(std::size_t c) const noexcept;

  /// 0-based column indices of the ones in row r, ascending.
  std::vector<std::size_t> row_support(std::size_t r) const;

  Matrix01 without_row(std::size_t r) const;
  Matrix01 without_column(std::size_t c) const;
  /// Keeps the listed columns (ascending, 0-based) in order.
  Matrix01 select_columns(std::span<const std::size_t> columns) const;

  bool operator==(const Matrix01&) const = default;

  /// Total order: (rows, cols, row-major bit string with '0' < '1').
  std::strong_ordering operator<=>(const Matrix01& other) const noexcept;

 private:
  Matrix01() = default;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Accepts lines over {0,1} or over {.,*}, one alphabet per input; blank
/// lines are ignored. Errors name the 1-based offending line.
Matrix01 parse_matrix(std::string_view text);

/// Canonical text: one line of '0'/'1' per row, each newline-terminated.
std::string format_matrix(const Matrix01& m);

/// Row-major concatenation of all entries as '0'/'1'.
std::string bit_string(const Matrix01& m);

/// "RxC:bits"; the key used for canonical forms in caches and reports.
std::string matrix_key(const Matrix01& m);
Matrix01 parse_matrix_key(std::string_view key);

/// Strictly increasing row and column maps of a needle into a haystack,
/// 0-based.
struct Embedding {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;

  bool operator==(const Embedding&) const = default;
  auto operator<=>(const Embedding&) const = default;
};

enum class PatternId { R, Q1, Q3, S1, S2, TwoAndTwo };

/// Catalog order: R, Q1, Q3, S1, S2, TWO_AND_TWO.
std::span<const PatternId> all_patterns() noexcept;
std::string_view pattern_name(PatternId id) noexcept;
std::optional<PatternId> pattern_from_name(std::string_view name) noexcept;

Matrix01 builtin_pattern(PatternId id);
/// Throws Error(Catalog) for names outside the catalog.
Matrix01 builtin_pattern(std::string_view name);

}  // namespace patex

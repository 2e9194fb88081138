#include "patex/matrix.hpp"

#include <array>
#include <bit>
#include <utility>

#include "patex/error.hpp"

namespace patex {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Catalog: return "catalog error";
    case ErrorKind::SizeGuard: return "size guard";
    case ErrorKind::Precondition: return "precondition failed";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Io: return "I/O error";
  }
  return "error";
}

namespace {

void check_dims(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0 || rows > kMaxDim || cols > kMaxDim)
    throw Error(ErrorKind::Domain,
                "matrix dimensions " + std::to_string(rows) + "x" +
                    std::to_string(cols) + " outside 1.." +
                    std::to_string(kMaxDim));
}

}  // namespace

Matrix01::Matrix01(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols) {
  check_dims(rows, cols);
  bits_.assign(rows, 0);
}

Matrix01 Matrix01::from_words(std::size_t cols, std::vector<std::uint64_t> rows) {
  check_dims(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (rows[r] & ~low_mask(cols))
      throw Error(ErrorKind::Domain,
                  "row " + std::to_string(r + 1) + " has bits beyond column " +
                      std::to_string(cols));
  Matrix01 m;
  m.rows_ = rows.size();
  m.cols_ = cols;
  m.bits_ = std::move(rows);
  return m;
}

std::uint64_t Matrix01::column_word(std::size_t c) const noexcept {
  std::uint64_t w = 0;
  for (std::size_t r = 0; r < rows_; ++r)
    w |= ((bits_[r] >> c) & 1u) << r;
  return w;
}

std::vector<std::uint64_t> Matrix01::column_words() const {
  std::vector<std::uint64_t> cols(cols_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t w = bits_[r];
    while (w) {
      const auto c = static_cast<std::size_t>(std::countr_zero(w));
      cols[c] |= std::uint64_t{1} << r;
      w &= w - 1;
    }
  }
  return cols;
}

std::size_t Matrix01::ones() const noexcept {
  std::size_t n = 0;
  for (auto w : bits_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t Matrix01::row_ones(std::size_t r) const noexcept {
  return static_cast<std::size_t>(std::popcount(bits_[r]));
}

std::size_t Matrix01::column_ones(std::size_t c) const noexcept {
  return static_cast<std::size_t>(std::popcount(column_word(c)));
}

std::vector<std::size_t> Matrix01::row_support(std::size_t r) const {
  std::vector<std::size_t> out;
  std::uint64_t w = bits_[r];
  while (w) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(w)));
    w &= w - 1;
  }
  return out;
}

Matrix01 Matrix01::without_row(std::size_t r) const {
  std::vector<std::uint64_t> rows;
  rows.reserve(rows_ - 1);
  for (std::size_t i = 0; i < rows_; ++i)
    if (i != r) rows.push_back(bits_[i]);
  return from_words(cols_, std::move(rows));
}

Matrix01 Matrix01::without_column(std::size_t c) const {
  const std::uint64_t below = low_mask(c);
  std::vector<std::uint64_t> rows(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    rows[i] = (bits_[i] & below) | ((bits_[i] >> 1) & ~below);
  return from_words(cols_ - 1, std::move(rows));
}

Matrix01 Matrix01::select_columns(std::span<const std::size_t> columns) const {
  std::vector<std::uint64_t> rows(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < columns.size(); ++j)
      rows[i] |= ((bits_[i] >> columns[j]) & 1u) << j;
  return from_words(columns.size(), std::move(rows));
}

std::strong_ordering Matrix01::operator<=>(const Matrix01& other) const noexcept {
  if (auto c = rows_ <=> other.rows_; c != 0) return c;
  if (auto c = cols_ <=> other.cols_; c != 0) return c;
  for (std::size_t r = 0; r < rows_; ++r) {
    const std::uint64_t diff = bits_[r] ^ other.bits_[r];
    if (!diff) continue;
    // First differing entry in reading order is the lowest differing bit.
    const std::uint64_t first = diff & (~diff + 1);
    return (bits_[r] & first) ? std::strong_ordering::greater
                              : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

Matrix01 parse_matrix(std::string_view text) {
  enum class Alphabet { Unknown, Binary, Dots };
  Alphabet alphabet = Alphabet::Unknown;
  std::size_t width = 0;
  std::vector<std::uint64_t> rows;
  std::size_t line_no = 0;

  auto fail = [&](const std::string& what) -> Error {
    return Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": " + what);
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    if (line.size() > kMaxDim)
      throw fail("row wider than " + std::to_string(kMaxDim) + " columns");
    if (width == 0)
      width = line.size();
    else if (line.size() != width)
      throw fail("ragged row: expected " + std::to_string(width) +
                 " entries, found " + std::to_string(line.size()));
    if (rows.size() == kMaxDim)
      throw fail("more than " + std::to_string(kMaxDim) + " rows");

    std::uint64_t word = 0;
    for (std::size_t j = 0; j < line.size(); ++j) {
      const char ch = line[j];
      Alphabet here;
      bool one;
      switch (ch) {
        case '0': here = Alphabet::Binary; one = false; break;
        case '1': here = Alphabet::Binary; one = true; break;
        case '.': here = Alphabet::Dots; one = false; break;
        case '*': here = Alphabet::Dots; one = true; break;
        default:
          throw fail(std::string("unexpected character '") + ch + "' at column " +
                     std::to_string(j + 1));
      }
      if (alphabet == Alphabet::Unknown)
        alphabet = here;
      else if (alphabet != here)
        throw fail("mixed alphabets: use either 0/1 or ./* throughout");
      if (one) word |= std::uint64_t{1} << j;
    }
    rows.push_back(word);
  }
  if (rows.empty()) throw Error(ErrorKind::Parse, "line 1: empty input");
  return Matrix01::from_words(width, std::move(rows));
}

std::string format_matrix(const Matrix01& m) {
  std::string out;
  out.reserve(m.rows() * (m.cols() + 1));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m.get(r, c) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

std::string bit_string(const Matrix01& m) {
  std::string out;
  out.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m.get(r, c) ? '1' : '0');
  return out;
}

std::string matrix_key(const Matrix01& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ":" + bit_string(m);
}

Matrix01 parse_matrix_key(std::string_view key) {
  auto bad = [&] {
    return Error(ErrorKind::Parse, "malformed matrix key '" + std::string(key) + "'");
  };
  const auto x = key.find('x');
  const auto colon = key.find(':');
  if (x == std::string_view::npos || colon == std::string_view::npos || x > colon)
    throw bad();
  auto number = [&](std::string_view s) {
    if (s.empty() || s.size() > 3) throw bad();
    std::size_t v = 0;
    for (char ch : s) {
      if (ch < '0' || ch > '9') throw bad();
      v = v * 10 + static_cast<std::size_t>(ch - '0');
    }
    return v;
  };
  const std::size_t rows = number(key.substr(0, x));
  const std::size_t cols = number(key.substr(x + 1, colon - x - 1));
  const std::string_view bits = key.substr(colon + 1);
  if (rows == 0 || cols == 0 || rows > kMaxDim || cols > kMaxDim ||
      bits.size() != rows * cols)
    throw bad();
  Matrix01 m(rows, cols);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') throw bad();
    if (bits[i] == '1') m.set(i / cols, i % cols);
  }
  return m;
}

namespace {

constexpr std::array<PatternId, 6> kCatalog = {
    PatternId::R, PatternId::Q1, PatternId::Q3,
    PatternId::S1, PatternId::S2, PatternId::TwoAndTwo};

}  // namespace

std::span<const PatternId> all_patterns() noexcept { return kCatalog; }

std::string_view pattern_name(PatternId id) noexcept {
  switch (id) {
    case PatternId::R: return "R";
    case PatternId::Q1: return "Q1";
    case PatternId::Q3: return "Q3";
    case PatternId::S1: return "S1";
    case PatternId::S2: return "S2";
    case PatternId::TwoAndTwo: return "TWO_AND_TWO";
  }
  return "?";
}

std::optional<PatternId> pattern_from_name(std::string_view name) noexcept {
  for (PatternId id : kCatalog)
    if (pattern_name(id) == name) return id;
  return std::nullopt;
}

Matrix01 builtin_pattern(PatternId id) {
  switch (id) {
    case PatternId::R: return parse_matrix("11\n11");
    case PatternId::Q1: return parse_matrix("101\n110");
    case PatternId::Q3: return parse_matrix("101\n010\n001");
    case PatternId::S1: return parse_matrix("1010\n0101");
    case PatternId::S2: return parse_matrix("1000\n0010\n0101");
    case PatternId::TwoAndTwo: return parse_matrix("010\n000\n010\n101");
  }
  throw Error(ErrorKind::Catalog, "unknown pattern id");
}

Matrix01 builtin_pattern(std::string_view name) {
  if (auto id = pattern_from_name(name)) return builtin_pattern(*id);
  throw Error(ErrorKind::Catalog,
              "unknown pattern '" + std::string(name) +
                  "' (catalog: R, Q1, Q3, S1, S2, TWO_AND_TWO)");
}

}  // namespace patex

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "patex/matrix.hpp"

namespace testing {

/// Rows separated by '/', e.g. "101/110".
inline patex::Matrix01 M(std::string text) {
  for (char& c : text)
    if (c == '/') c = '\n';
  return patex::parse_matrix(text);
}

inline patex::Matrix01 random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                     double density = 0.5) {
  std::bernoulli_distribution bit(density);
  patex::Matrix01 m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (bit(rng)) m.set(r, c);
  return m;
}

/// Matrix number `bits` of the given shape, row-major with bit 0 at (0, 0).
inline patex::Matrix01 matrix_from_bits(std::size_t rows, std::size_t cols, std::uint64_t bits) {
  std::vector<std::uint64_t> words(rows);
  for (std::size_t r = 0; r < rows; ++r) words[r] = (bits >> (r * cols)) & patex::low_mask(cols);
  return patex::Matrix01::from_words(cols, std::move(words));
}

inline std::vector<std::size_t> idx(std::initializer_list<std::size_t> v) { return v; }

}  // namespace testing

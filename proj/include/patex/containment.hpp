#pragma once

#include <optional>
#include <span>
#include <vector>

#include "patex/matrix.hpp"
#include "patex/symmetry.hpp"

namespace patex {

/// Lexicographically least (rows, then cols) embedding of `needle` into
/// `haystack`, or nullopt. Zeros of the needle are unconstrained.
std::optional<Embedding> contains(const Matrix01& haystack, const Matrix01& needle);

/// Exhaustive subset enumeration with the same contract as contains().
/// Throws Error(SizeGuard) when the haystack exceeds 6x6.
std::optional<Embedding> contains_bruteforce(const Matrix01& haystack,
                                             const Matrix01& needle);

inline constexpr std::size_t kBruteforceMaxDim = 6;

struct ForbiddenHit {
  PatternId pattern;
  Symmetry symmetry;  // the image that matched is apply(symmetry, pattern)
  Matrix01 image;
  Embedding embedding;
};

/// A fixed list of catalog patterns, optionally closed under the dihedral
/// group, with the images precomputed. Search order is catalog order, then
/// image order, then the least embedding.
class ForbiddenFamily {
 public:
  ForbiddenFamily(std::span<const PatternId> ids, bool close_under_symmetry);

  std::optional<ForbiddenHit> first_hit(const Matrix01& m) const;
  bool avoided_by(const Matrix01& m) const { return !first_hit(m); }

  struct Member {
    PatternId pattern;
    Symmetry symmetry;
    Matrix01 image;
  };
  std::span<const Member> members() const noexcept { return members_; }

 private:
  std::vector<Member> members_;
};

/// Returns nullopt when M avoids every listed pattern, else the first
/// violation. Throws Error(Precondition) when `ids` is empty.
std::optional<ForbiddenHit> avoids_all(const Matrix01& m, std::span<const PatternId> ids,
                                       bool close_under_symmetry);

}  // namespace patex

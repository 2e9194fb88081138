#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "patex/matrix.hpp"

namespace patex {

/// The eight elements of the dihedral group acting on a rectangle.
/// Rotations are clockwise; transposing operations swap dimensions.
enum class Symmetry {
  Identity,
  MirrorColumns,  // left-right reflection
  MirrorRows,     // top-bottom reflection
  Transpose,
  AntiTranspose,
  Rotate90,
  Rotate180,
  Rotate270,
};

inline constexpr std::array<Symmetry, 8> kAllSymmetries = {
    Symmetry::Identity,  Symmetry::MirrorColumns, Symmetry::MirrorRows,
    Symmetry::Transpose, Symmetry::AntiTranspose, Symmetry::Rotate90,
    Symmetry::Rotate180, Symmetry::Rotate270};

std::string_view symmetry_name(Symmetry s) noexcept;
std::optional<Symmetry> symmetry_from_name(std::string_view name) noexcept;
Symmetry inverse(Symmetry s) noexcept;

Matrix01 apply(Symmetry s, const Matrix01& m);

struct SymmetryImage {
  Symmetry op;  // first group element (in kAllSymmetries order) producing it
  Matrix01 matrix;
};

struct SymmetrySet {
  std::vector<SymmetryImage> images;  // distinct, in kAllSymmetries order
  Matrix01 canonical;                 // minimum image
  Symmetry canonical_op;              // canonical == apply(canonical_op, base)
};

SymmetrySet symmetry_set(const Matrix01& m);
Matrix01 canonical_form(const Matrix01& m);

}  // namespace patex

#include "patex/symmetry.hpp"

#include <algorithm>

namespace patex {

std::string_view symmetry_name(Symmetry s) noexcept {
  switch (s) {
    case Symmetry::Identity: return "identity";
    case Symmetry::MirrorColumns: return "mirror_columns";
    case Symmetry::MirrorRows: return "mirror_rows";
    case Symmetry::Transpose: return "transpose";
    case Symmetry::AntiTranspose: return "anti_transpose";
    case Symmetry::Rotate90: return "rotate90";
    case Symmetry::Rotate180: return "rotate180";
    case Symmetry::Rotate270: return "rotate270";
  }
  return "?";
}

std::optional<Symmetry> symmetry_from_name(std::string_view name) noexcept {
  for (Symmetry s : kAllSymmetries)
    if (symmetry_name(s) == name) return s;
  return std::nullopt;
}

Symmetry inverse(Symmetry s) noexcept {
  switch (s) {
    case Symmetry::Rotate90: return Symmetry::Rotate270;
    case Symmetry::Rotate270: return Symmetry::Rotate90;
    default: return s;
  }
}

Matrix01 apply(Symmetry s, const Matrix01& m) {
  const std::size_t R = m.rows();
  const std::size_t C = m.cols();
  const bool swaps = s == Symmetry::Transpose || s == Symmetry::AntiTranspose ||
                     s == Symmetry::Rotate90 || s == Symmetry::Rotate270;
  Matrix01 out(swaps ? C : R, swaps ? R : C);
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) {
      bool v = false;
      switch (s) {
        case Symmetry::Identity: v = m.get(i, j); break;
        case Symmetry::MirrorColumns: v = m.get(i, C - 1 - j); break;
        case Symmetry::MirrorRows: v = m.get(R - 1 - i, j); break;
        case Symmetry::Transpose: v = m.get(j, i); break;
        case Symmetry::AntiTranspose: v = m.get(R - 1 - j, C - 1 - i); break;
        case Symmetry::Rotate90: v = m.get(R - 1 - j, i); break;
        case Symmetry::Rotate180: v = m.get(R - 1 - i, C - 1 - j); break;
        case Symmetry::Rotate270: v = m.get(j, C - 1 - i); break;
      }
      if (v) out.set(i, j);
    }
  }
  return out;
}

SymmetrySet symmetry_set(const Matrix01& m) {
  std::vector<SymmetryImage> images;
  images.reserve(kAllSymmetries.size());
  for (Symmetry s : kAllSymmetries) {
    Matrix01 img = apply(s, m);
    const bool seen = std::any_of(images.begin(), images.end(),
                                  [&](const SymmetryImage& x) { return x.matrix == img; });
    if (!seen) images.push_back({s, std::move(img)});
  }
  auto best = std::min_element(images.begin(), images.end(),
                               [](const SymmetryImage& a, const SymmetryImage& b) {
                                 return a.matrix < b.matrix;
                               });
  Matrix01 canonical = best->matrix;
  const Symmetry op = best->op;
  return {std::move(images), std::move(canonical), op};
}

Matrix01 canonical_form(const Matrix01& m) {
  Matrix01 best = m;
  for (Symmetry s : kAllSymmetries) {
    if (s == Symmetry::Identity) continue;
    Matrix01 img = apply(s, m);
    if (img < best) best = std::move(img);
  }
  return best;
}

}  // namespace patex

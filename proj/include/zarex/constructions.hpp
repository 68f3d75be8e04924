#pragma once

#include "zarex/bit_matrix.hpp"
#include "zarex/grid_region.hpp"
#include "zarex/pattern.hpp"
#include "zarex/rational.hpp"

namespace zarex {

/// One open c x c cell per one of the square matrix A, matrix row 0 on top.
/// Requires n / c = A's side length.
GridRegion region_from_matrix(const BitMatrix& a, const Rat& c, const Rat& n);

/// Largest c <= limit with n / c an integer: n / ceil(n / limit).
Rat aligned_cell_size(const Rat& n, const Rat& limit);

/// (0, c) x (0, n) at resolution r; g = n / r must divide c.
GridRegion strip(const Rat& c, const Rat& n, int r);

/// (0, a) x (0, n) union (0, n) x (0, b) at resolution r; g must divide a and b.
GridRegion lshape(const Rat& a, const Rat& b, const Rat& n, int r);

/// {i c / r : i = 1..r}^2.
FinitePattern grid_pattern_q(int r, const Rat& c);
/// {1..r}^2.
FinitePattern grid_pattern_h(int r);

/// S x (0, n) as a region of dimension d + 1 at the same resolution.
GridRegion product_lift(const GridRegion& s);

}  // namespace zarex

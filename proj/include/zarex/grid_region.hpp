#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "zarex/bit_matrix.hpp"
#include "zarex/pattern.hpp"
#include "zarex/rational.hpp"

namespace zarex {

/// Cell tuple, one 0-based index per coordinate axis: (x, y, ...), with the
/// x index counted from the left and y from the bottom. Cell (a_0, ..., a_{d-1})
/// is the open box prod (g a_k, g (a_k + 1)) with g = n / r.
using Cell = std::vector<int>;

/// Union of open grid cells of side g = n / r inside [0, n]^d.
class GridRegion {
public:
    GridRegion() = default;
    GridRegion(int d, Rat n, int r);
    static GridRegion from_cells(int d, Rat n, int r, std::span<const Cell> cells);
    static GridRegion full(int d, Rat n, int r);

    int d() const { return d_; }
    const Rat& n() const { return n_; }
    int r() const { return r_; }
    Rat g() const { return n_ / Rat(r_); }

    bool occupied(std::span<const int> cell) const;
    void set(std::span<const int> cell, bool value);
    std::size_t count() const { return occ_.count(); }
    /// Occupied cells in lexicographic (x, y, ...) order.
    std::vector<Cell> cells() const;

    /// x-mask of the cells sharing the other coordinates of `cell` (cell[0] ignored).
    std::uint64_t row_mask(std::span<const int> cell) const;
    std::uint64_t row_mask(int y) const;  // 2-D shorthand

    friend bool operator==(const GridRegion&, const GridRegion&) = default;

private:
    // Stored with reversed axes so that each bitset line is an x-row.
    Index storage_index(std::span<const int> cell) const;

    int d_ = 2;
    Rat n_{1};
    int r_ = 1;
    BitMatrix occ_;
};

Rat region_measure(const GridRegion& s);

/// Concrete expanding maps realizing a containment. Axis k maps by
/// f(u) = w_j + (u - u_j) for the last piece (u_j, w_j) with u_j <= u; consecutive
/// pieces jump forward by at least their spacing, so every difference quotient is >= 1.
struct EmbeddingWitness {
    std::vector<std::vector<std::pair<Rat, Rat>>> pieces;

    Rat apply(int axis, const Rat& u) const;
};

/// Checks a witness from scratch: expansion on every axis, and every point of
/// the pattern (including every point of every segment) lands strictly inside
/// an occupied open cell.
bool validate_witness(const GridRegion& s, const Pattern& p, const EmbeddingWitness& w);

std::optional<EmbeddingWitness> find_finite(const GridRegion& s, const FinitePattern& p);
std::optional<EmbeddingWitness> find_hsegment(const GridRegion& s, const HSegment& p);
std::optional<EmbeddingWitness> find_stack(const GridRegion& s, const StackPattern& p);
std::optional<EmbeddingWitness> find_segments(const GridRegion& s, const SegmentPattern& p);
std::optional<EmbeddingWitness> find_tailed(const GridRegion& s, const TailedPattern& p);
std::optional<EmbeddingWitness> find_embedding(const GridRegion& s, const Pattern& p);

namespace detail {
class DeciderImpl;
}

/// Pattern-specific decider with per-pattern preprocessing done once.
class RegionDecider {
public:
    explicit RegionDecider(Pattern p);
    const Pattern& pattern() const { return pattern_; }
    bool contains(const GridRegion& s) const;
    std::optional<EmbeddingWitness> find(const GridRegion& s) const;

private:
    Pattern pattern_;
    std::shared_ptr<const detail::DeciderImpl> impl_;
};

bool region_contains_finite(const GridRegion& s, const FinitePattern& p);
bool region_contains_hsegment(const GridRegion& s, const Rat& c);
bool region_contains_stack(const GridRegion& s, const StackPattern& p);
bool region_contains_segments(const GridRegion& s, const SegmentPattern& p);
bool region_contains_tailed(const GridRegion& s, const TailedPattern& p);
bool region_contains(const GridRegion& s, const Pattern& p);

/// Region of the cells whose tuple satisfies `keep`.
GridRegion discretize(const std::function<bool(const Cell&)>& keep, int d, const Rat& n, int r);

/// 2-D: entry (i, j) is cell (x = j, y = r - 1 - i), so matrix row 0 is the top
/// cell-row. d >= 3: entry index k is the cell coordinate on axis k.
BitMatrix region_to_matrix(const GridRegion& s);
/// Inverse of region_to_matrix at cell side g = n / dims.
GridRegion matrix_to_region(const BitMatrix& m, const Rat& n);

/// Cell tuple of matrix entry `idx` under the region_to_matrix convention.
Cell matrix_index_to_cell(std::span<const int> idx, int r);

}  // namespace zarex

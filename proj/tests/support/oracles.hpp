#pragma once

// Brute-force reference implementations. They share no search code with the
// library: every answer comes from plain enumeration.

#include <cstdint>
#include <vector>

#include "zarex/bit_matrix.hpp"
#include "zarex/grid_region.hpp"
#include "zarex/pattern.hpp"

namespace zarex::oracle {

/// Containment by trying every choice of index subsets on every axis.
bool contains(const BitMatrix& a, const BitMatrix& b);

/// Number of 2x2 all-ones submatrices, by a quadruple loop.
std::uint64_t count_j22(const BitMatrix& a);

/// Largest number of ones in an n x n matrix without a 2x2 all-ones
/// submatrix: rows are bitmasks, any two share at most one column.
int zarankiewicz_j22(int n);

/// Largest number of ones over all 2^(n*n) matrices avoiding m (n <= 4).
int ex_by_enumeration(int n, const BitMatrix& m);

/// Finite pattern: coordinates restricted to odd multiples of h/2, h = g/den.
bool finite_embeds(const GridRegion& s, const FinitePattern& p, int den);

/// Segment pattern: the image of every multiple of q = g/den along a segment
/// sits at an odd multiple of q/2; each open gap between consecutive samples
/// is translated next to one of its endpoints. y-values on the h = g/den grid.
bool segments_embed(const GridRegion& s, const SegmentPattern& p, int den);

/// Stack pattern with the same discretization; the x-map is shared by all rows.
bool stack_embeds(const GridRegion& s, const StackPattern& p, int den);

/// Largest number of occupied cells over all regions at (n, r) for which
/// `embeds` is false (2^(r^d) regions).
template <class Embeds>
int px_cells_by_enumeration(int d, const Rat& n, int r, Embeds embeds)
{
    int cells = 1;
    for (int k = 0; k < d; ++k) cells *= r;
    std::vector<Cell> all;
    Cell c(static_cast<std::size_t>(d), 0);
    for (int i = 0; i < cells; ++i) {
        all.push_back(c);
        int k = 0;
        while (k < d && ++c[static_cast<std::size_t>(k)] == r) c[static_cast<std::size_t>(k++)] = 0;
    }
    int best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
        int pop = __builtin_popcountll(mask);
        if (pop <= best) continue;
        GridRegion s(d, n, r);
        for (int i = 0; i < cells; ++i)
            if ((mask >> i) & 1U) s.set(all[static_cast<std::size_t>(i)], true);
        if (!embeds(s)) best = pop;
    }
    return best;
}

}  // namespace zarex::oracle

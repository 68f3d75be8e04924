#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "zarex/bit_matrix.hpp"
#include "zarex/grid_region.hpp"
#include "zarex/pattern.hpp"

namespace zarex::testgen {

// Seeded generator for property tests. Bounded draws use rejection on raw
// 64-bit output so that sequences do not depend on the standard library.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t bits() { return eng_(); }

    int uniform(int lo, int hi)  // inclusive
    {
        auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
        std::uint64_t v;
        do v = eng_();
        while (v >= limit);
        return lo + static_cast<int>(v % span);
    }

    bool coin(int num = 1, int den = 2) { return uniform(0, den - 1) < num; }

    BitMatrix matrix(int rows, int cols, int num = 1, int den = 2)
    {
        BitMatrix m({rows, cols});
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (coin(num, den)) m.set(i, j, true);
        return m;
    }

    BitMatrix matrix_nd(const std::vector<int>& dims, int num = 1, int den = 2)
    {
        BitMatrix m(dims);
        Index idx(dims.size(), 0);
        while (true) {
            if (coin(num, den)) m.set(idx, true);
            std::size_t k = 0;
            while (k < dims.size() && ++idx[k] == dims[k]) idx[k++] = 0;
            if (k == dims.size()) break;
        }
        return m;
    }

    // Point set with coordinates k / den for k in [0, span].
    FinitePattern pattern(int dim, int points, int span, int den)
    {
        std::vector<Point> pts;
        while (static_cast<int>(pts.size()) < points) {
            Point p;
            for (int k = 0; k < dim; ++k) p.push_back(Rat(uniform(0, span), den));
            bool dup = false;
            for (const auto& q : pts) dup = dup || q == p;
            if (!dup) pts.push_back(std::move(p));
        }
        return FinitePattern(dim, std::move(pts));
    }

    GridRegion region(int d, const Rat& n, int r, int num = 1, int den = 2)
    {
        GridRegion s(d, n, r);
        Cell c(static_cast<std::size_t>(d), 0);
        while (true) {
            if (coin(num, den)) s.set(c, true);
            int k = 0;
            while (k < d && ++c[static_cast<std::size_t>(k)] == r) c[static_cast<std::size_t>(k++)] = 0;
            if (k == d) break;
        }
        return s;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace zarex::testgen

#include "zarex/constructions.hpp"

#include "zarex/errors.hpp"

namespace zarex {
namespace {

int cells_in(const Rat& length, const Rat& g, const char* what)
{
    Rat k = length / g;
    if (!k.is_integer() || k.sign() < 0)
        throw PreconditionError(std::string(what) + " = " + length.str() + " is not a multiple of the cell side " + g.str());
    return static_cast<int>(k.num());
}

}  // namespace

GridRegion region_from_matrix(const BitMatrix& a, const Rat& c, const Rat& n)
{
    if (a.dim() != 2 || a.rows() != a.cols()) throw PreconditionError("region_from_matrix needs a square 2-D matrix");
    if (c.sign() <= 0 || n.sign() <= 0) throw PreconditionError("c and n must be positive");
    if (n / c != Rat(a.rows()))
        throw PreconditionError("n / c = " + (n / c).str() + " must equal the matrix side " + std::to_string(a.rows()));
    return matrix_to_region(a, n);
}

Rat aligned_cell_size(const Rat& n, const Rat& limit)
{
    if (n.sign() <= 0 || limit.sign() <= 0) throw PreconditionError("n and limit must be positive");
    return n / Rat((n / limit).ceil());
}

GridRegion strip(const Rat& c, const Rat& n, int r)
{
    if (n.sign() <= 0 || r < 1) throw PreconditionError("n and r must be positive");
    const Rat g = n / Rat(r);
    const int w = cells_in(c, g, "c");
    if (w > r) throw PreconditionError("strip wider than the square");
    return discretize([&](const Cell& cell) { return cell[0] < w; }, 2, n, r);
}

GridRegion lshape(const Rat& a, const Rat& b, const Rat& n, int r)
{
    if (n.sign() <= 0 || r < 1) throw PreconditionError("n and r must be positive");
    const Rat g = n / Rat(r);
    const int wa = cells_in(a, g, "a");
    const int wb = cells_in(b, g, "b");
    if (wa > r || wb > r) throw PreconditionError("L-shape arms longer than the square");
    return discretize([&](const Cell& cell) { return cell[0] < wa || cell[1] < wb; }, 2, n, r);
}

FinitePattern grid_pattern_q(int r, const Rat& c)
{
    if (r < 2) throw PreconditionError("grid pattern needs r >= 2");
    if (c.sign() <= 0) throw PreconditionError("c must be positive");
    std::vector<Point> pts;
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j) pts.push_back({Rat(i) * c / Rat(r), Rat(j) * c / Rat(r)});
    return FinitePattern(2, std::move(pts));
}

FinitePattern grid_pattern_h(int r)
{
    if (r < 2) throw PreconditionError("grid pattern needs r >= 2");
    std::vector<Point> pts;
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j) pts.push_back({Rat(i), Rat(j)});
    return FinitePattern(2, std::move(pts));
}

GridRegion product_lift(const GridRegion& s)
{
    GridRegion out(s.d() + 1, s.n(), s.r());
    for (const auto& c : s.cells()) {
        Cell lifted = c;
        lifted.push_back(0);
        for (int z = 0; z < s.r(); ++z) {
            lifted.back() = z;
            out.set(lifted, true);
        }
    }
    return out;
}

}  // namespace zarex

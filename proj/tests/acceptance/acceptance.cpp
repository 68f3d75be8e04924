// One PASS/FAIL line per acceptance criterion. Exit status is non-zero if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "zarex/constructions.hpp"
#include "zarex/extremal.hpp"
#include "zarex/io.hpp"
#include "zarex/px_search.hpp"
#include "zarex/verify.hpp"

using namespace zarex;

namespace {

const BitMatrix kJ22 = BitMatrix::from_rows(std::vector<std::string>{"11", "11"});

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::vector<int> fixture_table()
{
    Json fx = read_json_file(std::filesystem::path(ZAREX_FIXTURE_DIR) / "zarankiewicz_j22.json");
    std::vector<int> v(8, -1);
    for (const auto& e : fx["values"]) v[static_cast<std::size_t>(e["n"].get<int>())] = e["value"].get<int>();
    return v;
}

std::string show(const CheckReport& r)
{
    std::string s = r.lhs.str() + " " + relation_symbol(r.relation) + " " + r.rhs.str();
    if (r.mid) s = r.lhs.str() + " <= " + r.mid->str() + " <= " + r.rhs.str();
    return s;
}

Outcome zarankiewicz_fixtures()
{
    Outcome o;
    const auto table = fixture_table();
    std::ostringstream d;
    for (int n = 2; n <= 6; ++n) {
        const int got = static_cast<int>(ex_exact(n, kJ22).value);
        const int oracle = oracle::zarankiewicz_j22(n);
        d << "n=" << n << ":" << got << " ";
        if (got != table[static_cast<std::size_t>(n)] || got != oracle) {
            o.pass = false;
            d << "(fixture " << table[static_cast<std::size_t>(n)] << ", oracle " << oracle << ") ";
        }
    }
    o.detail = d.str();
    return o;
}

Outcome superadditivity()
{
    Outcome o;
    const auto table = fixture_table();
    std::vector<std::pair<int, int>> pairs;
    for (int m = 1; m <= 5; ++m)
        for (int n = m; m + n <= 6; ++n) pairs.push_back({m, n});
    int checked = 0;
    for (const auto& r : check_superadditive(kJ22, pairs)) {
        const int m = std::stoi(r.params.at("m")), n = std::stoi(r.params.at("n"));
        const bool table_ok = table[static_cast<std::size_t>(m + n)] >= table[static_cast<std::size_t>(m)] + table[static_cast<std::size_t>(n)];
        if (!r.pass() || !table_ok) {
            o.pass = false;
            o.detail += "m=" + std::to_string(m) + " n=" + std::to_string(n) + ": " + show(r) + "; ";
        }
        ++checked;
    }
    o.detail += std::to_string(checked) + " pairs with m + n <= 6";
    return o;
}

Outcome horizseg_exact()
{
    Outcome o;
    for (int r : {2, 4}) {
        auto rep = check_horizseg(Rat(1), Rat(4), r);
        o.detail += "r=" + std::to_string(r) + ": " + rep.lhs.str() + " vs c n = " + rep.rhs.str() + "; ";
        o.pass = o.pass && rep.pass();
    }
    return o;
}

Outcome diagseg_measure()
{
    const Rat m = region_measure(lshape(Rat(1), Rat(1), Rat(2), 2));
    return {m == Rat(3), "measure " + m.str() + ", (a+b)n - ab = 3"};
}

Outcome lowerth_round_trip()
{
    Outcome o;
    const auto table = fixture_table();
    const FinitePattern grid = grid_pattern_h(2);
    for (int n = 2; n <= 6; ++n) {
        auto rec = ex_exact(n, kJ22);
        auto s = region_from_matrix(*rec.certificate, Rat(1), Rat(n));
        const bool free = !region_contains_finite(s, grid);
        const bool measure_ok = region_measure(s) == Rat(table[static_cast<std::size_t>(n)]);
        o.detail += "n=" + std::to_string(n) + ":" + region_measure(s).str() + (free ? "" : " (contains P)") + " ";
        o.pass = o.pass && free && measure_ok;
    }
    return o;
}

Outcome tardos()
{
    auto r = check_tardos_blank(kJ22, 1, 4);
    return {r.pass(), show(r)};
}

Outcome deletion()
{
    auto r = check_random_deletion(64, 2, 100, 42);
    return {r.pass(), "mean " + decimal(r.lhs, 2) + " >= " + decimal(r.rhs, 2) + " (p = " + default_deletion_probability(64, 2).str() + ")"};
}

Outcome kst()
{
    Outcome o;
    for (int n = 2; n <= 4; ++n) {
        auto r = check_kst_sandwich(Rat(1), Rat(1), Rat(n), n);
        o.detail += "n=" + std::to_string(n) + ": " + r.lhs.str() + " <= " + r.mid->str() + " <= " + decimal(r.rhs, 3) + "; ";
        o.pass = o.pass && r.pass();
    }
    return o;
}

Outcome lastcoord()
{
    Outcome o;
    int cases = 0;
    for (const char* name : {"point", "pair", "column_pair", "diagonal", "grid2"})
        for (int r = 1; r <= 3; ++r) {
            auto rep = check_projection(lift(preset_pattern(name)), Rat(r), r);
            ++cases;
            if (!rep.pass()) {
                o.pass = false;
                o.detail += std::string(name) + " r=" + std::to_string(r) + ": " + show(rep) + "; ";
            }
        }
    o.detail += std::to_string(cases) + " lifted patterns x resolutions";
    return o;
}

std::vector<GridRegion> all_regions(int r)
{
    std::vector<GridRegion> out;
    const int cells = r * r;
    for (std::uint32_t mask = 0; mask < (1U << cells); ++mask) {
        GridRegion s(2, Rat(r), r);
        for (int c = 0; c < cells; ++c)
            if ((mask >> c) & 1U) s.set(Cell{c % r, c / r}, true);
        out.push_back(std::move(s));
    }
    return out;
}

Outcome decider_oracles()
{
    Outcome o;
    std::vector<GridRegion> regions;
    for (int r = 1; r <= 3; ++r)
        for (auto& s : all_regions(r)) regions.push_back(std::move(s));

    // Finite patterns: every set of 1..4 points of {0, 1/2, 3/2}^2 containing a
    // point with x = 0 and a point with y = 0 (translation representatives).
    const std::vector<Rat> lattice = {Rat(0), Rat(1, 2), Rat(3, 2)};
    std::vector<Point> grid;
    for (const auto& x : lattice)
        for (const auto& y : lattice) grid.push_back({x, y});
    std::vector<FinitePattern> finite;
    for (std::uint32_t mask = 1; mask < (1U << grid.size()); ++mask) {
        if (__builtin_popcount(mask) > 4) continue;
        std::vector<Point> pts;
        bool x0 = false, y0 = false;
        for (std::size_t i = 0; i < grid.size(); ++i)
            if ((mask >> i) & 1U) {
                pts.push_back(grid[i]);
                x0 = x0 || grid[i][0].sign() == 0;
                y0 = y0 || grid[i][1].sign() == 0;
            }
        if (x0 && y0) finite.emplace_back(2, std::move(pts));
    }

    // Segment patterns: one or two closed segments with endpoints in
    // {0, 1/2, ..., 3} and heights in {0, 1/2, 1}, translated so that the
    // smallest x and the smallest y are 0.
    std::vector<Segment> pieces;
    for (int y = 0; y <= 2; ++y)
        for (int lo = 0; lo <= 6; ++lo)
            for (int hi = lo + 1; hi <= 6; ++hi) pieces.push_back({Rat(y, 2), Rat(lo, 2), Rat(hi, 2)});
    std::vector<SegmentPattern> segs;
    auto add = [&](std::vector<Segment> v) {
        Rat min_x = v[0].x_lo, min_y = v[0].y;
        for (const auto& g : v) {
            min_x = min(min_x, g.x_lo);
            min_y = min(min_y, g.y);
        }
        if (min_x.sign() != 0 || min_y.sign() != 0) return;
        try {
            segs.emplace_back(std::move(v));
        } catch (const std::invalid_argument&) {
        }
    };
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        add({pieces[i]});
        for (std::size_t j = i + 1; j < pieces.size(); ++j) add({pieces[i], pieces[j]});
    }

    long compared = 0, mismatches = 0;
    for (const auto& s : regions) {
        for (const auto& p : finite) {
            ++compared;
            if (region_contains_finite(s, p) != oracle::finite_embeds(s, p, 4)) ++mismatches;
        }
        for (const auto& p : segs) {
            ++compared;
            if (region_contains_segments(s, p) != oracle::segments_embed(s, p, 8)) ++mismatches;
        }
    }
    o.pass = mismatches == 0;
    o.detail = std::to_string(regions.size()) + " regions x (" + std::to_string(finite.size()) + " finite + " + std::to_string(segs.size()) +
               " segment patterns) = " + std::to_string(compared) + " pairs, " + std::to_string(mismatches) + " mismatches";
    return o;
}

}  // namespace

int main()
{
    struct Criterion {
        int id;
        const char* name;
        double limit_s;  // 0: no time limit
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "Zarankiewicz fixtures ex(n, J22), n = 2..6", 60, zarankiewicz_fixtures},
        {2, "super-additivity on the fixture table", 0, superadditivity},
        {3, "grid px of HSegment(1) at n = 4, r in {2, 4} equals c n", 10, horizseg_exact},
        {4, "lshape(1, 1, 2) measure", 0, diagseg_measure},
        {5, "extremal matrix lifts to a P-free region of equal measure, n <= 6", 0, lowerth_round_trip},
        {6, "ex(4, S(J22, 1)) <= 4 ex(2, J22)", 120, tardos},
        {7, "random deletion, n = 64, r = 2, 100 seeds", 300, deletion},
        {8, "KST sandwich, n in {2, 3, 4}", 300, kst},
        {9, "3-D grid px = n x 2-D grid px for lifted patterns, r <= 3", 0, lastcoord},
        {10, "deciders agree with brute-force embedding, r <= 3", 0, decider_oracles},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_s > 0 && secs > c.limit_s) {
            o.pass = false;
            o.detail += " [time limit " + std::to_string(static_cast<int>(c.limit_s)) + " s exceeded]";
        }
        if (!o.pass) ++failed;
        std::printf("%s [%d] %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}

#include "zarex/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "zarex/constructions.hpp"
#include "zarex/errors.hpp"
#include "zarex/extremal.hpp"
#include "zarex/grid_region.hpp"
#include "zarex/io.hpp"
#include "zarex/px_search.hpp"
#include "zarex/rng.hpp"

namespace zarex {
namespace {

const std::int64_t kRootDenom = std::int64_t{1} << 30;

std::string istr(std::int64_t v) { return std::to_string(v); }

Rat cell_side(const Rat& n, int r)
{
    if (n.sign() <= 0 || r < 1) throw PreconditionError("n and r must be positive");
    return n / Rat(r);
}

void require_multiple(const Rat& v, const Rat& g, const std::string& what)
{
    if (!(v / g).is_integer()) throw PreconditionError(what + " = " + v.str() + " must be a multiple of the cell side " + g.str());
}

std::int64_t ex_value(int n, const BitMatrix& m)
{
    if (n <= 0) return 0;
    if (m.entries() == 1) return 0;
    return ex_exact(n, m).value;
}

std::string px_ref(const Pattern& p, const Rat& n, int r)
{
    return "px:" + pattern_id(p) + ":n=" + n.str() + ":r=" + std::to_string(r);
}

std::string ex_ref(const BitMatrix& m, int n) { return "ex:" + pattern_id(m) + ":n=" + std::to_string(n); }

}  // namespace

Rat grid_px(const Rat& n, int r, const Pattern& p, int threads)
{
    PxOptions o;
    o.threads = threads;
    return *px_lower_search(n, r, p, o).measure;
}

Rat analytic_upper_stack(const Rat& s, int t, const Rat& c, const Rat& n)
{
    if (t < 2) throw PreconditionError("t must be >= 2");
    if (s.sign() <= 0 || c.sign() < 0 || n.sign() <= 0) throw PreconditionError("need s > 0, c >= 0 and n > 0");
    if (t == 2) {
        const Rat rest = max(n - c, Rat(0));
        return c * n + upper_root(rest * rest * s * n, 2, kRootDenom);
    }
    return c * Rat(t) * n + Rat(t) * upper_root(s * pow(n, 2 * t - 1), t, kRootDenom);
}

Rat simplex_volume(int t, const Rat& c, const Rat& n)
{
    if (t < 1) throw PreconditionError("t must be >= 1");
    const Rat side = n - Rat(t - 1) * c;
    if (side.sign() <= 0) return Rat(0);
    std::int64_t fact = 1;
    for (int i = 2; i <= t; ++i) fact *= i;
    return pow(side, t) / Rat(fact);
}

CheckReport check_main_equivalence(const FinitePattern& p, const Rat& n, int r, int threads)
{
    if (p.dim() != 2) throw PreconditionError("main equivalence check is two-dimensional");
    const Rat g = cell_side(n, r);
    const BitMatrix mp = pattern_to_matrix(p);
    const auto gaps = gap_range(p);
    const Rat limit = gaps ? min(gaps->first, Rat(1)) : Rat(1);

    // Construction cell: the largest multiple of g not above the limit that
    // tiles [0, n].
    std::int64_t m = (limit / g).floor();
    while (m > 0 && r % m != 0) --m;
    if (m == 0) throw PreconditionError("cell side " + g.str() + " exceeds the smallest pattern gap; increase r");
    const Rat c = g * Rat(m);
    const int cells = r / static_cast<int>(m);

    const std::int64_t k = gaps ? (gaps->second / g).ceil() : 0;
    const int reduced = static_cast<int>((r + k) / (k + 1));

    CheckReport rep;
    rep.check_id = "main_equivalence";
    rep.params = {{"n", n.str()}, {"r", istr(r)}, {"pattern_id", pattern_id(p)}};
    rep.lhs = c * c * Rat(ex_value(cells, mp));
    rep.mid = grid_px(n, r, p, threads);
    rep.rhs = g * g * Rat((k + 1) * (k + 1)) * Rat(ex_value(reduced, mp));
    rep.relation = Relation::le;
    rep.artifacts = {ex_ref(mp, cells), px_ref(p, n, r), ex_ref(mp, reduced)};
    rep.note = "c^2 ex(n/c, M_P) <= grid px <= g^2 (k+1)^2 ex(ceil(r/(k+1)), M_P) with c = " + c.str() + ", k = " + istr(k);
    return rep;
}

CheckReport check_addedseg(const FinitePattern& p, const Rat& c, const Rat& n, int r, int threads)
{
    const Rat g = cell_side(n, r);
    require_multiple(c, g, "c");
    const TailedPattern tailed = append_segment(p, c);
    CheckReport rep;
    rep.check_id = "addedseg";
    rep.params = {{"c", c.str()}, {"n", n.str()}, {"r", istr(r)}, {"pattern_id", pattern_id(p)}};
    rep.lhs = grid_px(n, r, tailed, threads);
    rep.rhs = grid_px(n, r, p, threads) + c * n;
    rep.relation = Relation::le;
    rep.artifacts = {px_ref(tailed, n, r), px_ref(p, n, r)};
    rep.note = "px(P with segment) <= px(P) + c n";
    return rep;
}

CheckReport check_addedpt(const FinitePattern& p, const Rat& c, const Rat& n, int r, int threads)
{
    const Rat g = cell_side(n, r);
    require_multiple(c, g, "c");
    const FinitePattern longer = append_point(p, c);
    CheckReport rep;
    rep.check_id = "addedpt";
    rep.params = {{"c", c.str()}, {"n", n.str()}, {"r", istr(r)}, {"pattern_id", pattern_id(p)}};
    rep.lhs = grid_px(n, r, longer, threads);
    rep.rhs = grid_px(n, r, p, threads) + c * n;
    rep.relation = Relation::le;
    rep.artifacts = {px_ref(longer, n, r), px_ref(p, n, r)};
    rep.note = "px(P with point) <= px(P) + c n";
    return rep;
}

CheckReport check_ps_blank(const FinitePattern& p, const Rat& q, const Rat& n, int r, int threads)
{
    if (!(Rat(1) < q)) throw PreconditionError("dilation factor must exceed 1");
    const Rat g = cell_side(n, r);
    const FinitePattern dilated = transform(p, Dilate{q});
    CheckReport rep;
    rep.check_id = "ps_blank";
    rep.params = {{"q", q.str()}, {"n", n.str()}, {"r", istr(r)}, {"pattern_id", pattern_id(p)}};
    rep.relation = Relation::le;
    rep.lhs = grid_px(n, r, dilated, threads);
    const auto gaps = gap_range(p);
    if (!gaps) {
        // A single point: every occupied cell contains it and its dilation.
        rep.rhs = Rat(0);
        rep.note = "single point: both sides vanish";
        rep.artifacts = {px_ref(dilated, n, r)};
        return rep;
    }
    const Rat c = gaps->first;
    const Rat d = gaps->second;
    require_multiple(c, g, "smallest gap");
    const std::int64_t blocks = (q * d / c).ceil() + 1;
    const std::int64_t side_cells = ((n / c).ceil() + blocks - 1) / blocks;
    const Rat reduced_n = Rat(side_cells) * c;
    const int reduced_r = static_cast<int>((reduced_n / g).num());
    rep.rhs = Rat(blocks * blocks) * grid_px(reduced_n, reduced_r, p, threads);
    rep.artifacts = {px_ref(dilated, n, r), px_ref(p, reduced_n, reduced_r)};
    rep.note = "px(qP, n) <= K^2 px(P, n') with K = " + istr(blocks) + ", n' = " + reduced_n.str();
    return rep;
}

CheckReport check_kst_sandwich(const Rat& s, const Rat& c, const Rat& n, int r, int threads)
{
    const StackPattern stack(s, 2, c);
    const Rat cell = aligned_cell_size(n, min(min(s, c), Rat(1)));
    const Rat side = n / cell;
    if (!side.is_integer()) throw std::logic_error("aligned cell size does not tile");
    const int m = static_cast<int>(side.num());
    const BitMatrix j22 = BitMatrix::all_ones({2, 2});
    CheckReport rep;
    rep.check_id = "kst_sandwich";
    rep.params = {{"s", s.str()}, {"c", c.str()}, {"n", n.str()}, {"r", istr(r)}};
    rep.lhs = cell * cell * Rat(ex_value(m, j22));
    rep.mid = grid_px(n, r, stack, threads);
    rep.rhs = analytic_upper_stack(s, 2, c, n);
    rep.relation = Relation::le;
    rep.artifacts = {ex_ref(j22, m), px_ref(stack, n, r)};
    rep.note = "c'^2 ex(n/c', J22) <= grid px(P_{s,2,c}) <= c n + (n - c) sqrt(s n), c' = " + cell.str();
    return rep;
}

CheckReport check_projection(const FinitePattern& p3, const Rat& n, int r, int threads)
{
    if (p3.dim() != 3) throw PreconditionError("projection check needs a 3-D pattern");
    const auto last = p3.axis_values(2);
    if (last.size() != 1) throw PreconditionError("pattern must have a constant last coordinate");
    const FinitePattern p2 = project(p3);
    CheckReport rep;
    rep.check_id = "projection";
    rep.params = {{"n", n.str()}, {"r", istr(r)}, {"pattern_id", pattern_id(p3)}};
    rep.lhs = grid_px(n, r, p3, threads);
    rep.rhs = n * grid_px(n, r, p2, threads);
    rep.relation = Relation::eq;
    rep.artifacts = {px_ref(p3, n, r), px_ref(p2, n, r)};
    rep.note = "px(P, 3) = n px(Pr(P), 2)";
    return rep;
}

CheckReport check_simplex_volume(int t, const Rat& c, const Rat& n, std::uint64_t seed, std::int64_t samples)
{
    if (t < 1 || t > 4) throw PreconditionError("t must be in [1, 4]");
    if (c.sign() < 0 || n.sign() <= 0) throw PreconditionError("need c >= 0 and n > 0");
    if (samples < 1 || samples > 100000000) throw PreconditionError("samples must be in [1, 10^8]");
    // Sample y = n (u + 1/2) / 2^32 with u uniform on 32 bits; the membership
    // test runs on the scaled integers.
    const std::int64_t scale = std::int64_t{1} << 32;
    const Rat gap = c * Rat(scale) / n;
    std::vector<Rat> caps;
    for (int i = 0; i < t; ++i) caps.push_back((n - Rat(i) * c) * Rat(scale) / n);
    Rng rng(seed);
    std::int64_t hits = 0;
    std::vector<std::int64_t> u(static_cast<std::size_t>(t));
    for (std::int64_t k = 0; k < samples; ++k) {
        for (auto& v : u) v = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(scale)));
        bool in = true;
        for (int i = 0; i < t && in; ++i) {
            // y_i < n - i c, written as u_i + 1/2 < cap_i.
            if (!(Rat(2 * u[static_cast<std::size_t>(i)] + 1, 2) < caps[static_cast<std::size_t>(i)])) in = false;
            if (in && i + 1 < t && !(gap < Rat(u[static_cast<std::size_t>(i)] - u[static_cast<std::size_t>(i) + 1]))) in = false;
        }
        if (in) ++hits;
    }
    const Rat cube = pow(n, t);
    const Rat frac(hits, samples);
    const Rat estimate = frac * cube;
    const Rat var = frac * (Rat(1) - frac) / Rat(samples);
    const Rat three_sigma = upper_root(Rat(9) * var * cube * cube, 2, kRootDenom);
    const Rat floor_side = max(n / Rat(t) - c, Rat(0));

    CheckReport rep;
    rep.check_id = "simplex_volume";
    rep.params = {{"t", istr(t)}, {"c", c.str()}, {"n", n.str()}, {"samples", istr(samples)}, {"seed", std::to_string(seed)}};
    rep.lhs = pow(floor_side, t) - three_sigma;
    rep.mid = estimate;
    rep.rhs = cube + three_sigma;
    rep.relation = Relation::le;
    rep.note = "(n/t - c)^t <= MC volume <= n^t within 3 sigma; exact volume " + simplex_volume(t, c, n).str();
    return rep;
}

CheckReport check_horizseg(const Rat& c, const Rat& n, int r, int threads)
{
    const HSegment seg(c);
    CheckReport rep;
    rep.check_id = "horizseg";
    rep.params = {{"c", c.str()}, {"n", n.str()}, {"r", istr(r)}};
    rep.lhs = grid_px(n, r, seg, threads);
    rep.rhs = c * n;
    rep.relation = Relation::eq;
    rep.artifacts = {px_ref(seg, n, r)};
    rep.note = "grid px of a horizontal segment equals c n";
    return rep;
}

CheckReport check_diagseg_construction(const Rat& a, const Rat& b, const Rat& n, int r)
{
    CheckReport rep;
    rep.check_id = "diagseg_construction";
    rep.params = {{"a", a.str()}, {"b", b.str()}, {"n", n.str()}, {"r", istr(r)}};
    rep.lhs = region_measure(lshape(a, b, n, r));
    rep.rhs = (a + b) * n - a * b;
    rep.relation = Relation::eq;
    rep.note = "L-shape measure; avoidance of the diagonal segment is cited, not computed";
    return rep;
}

std::vector<CheckReport> check_lowerth(int n)
{
    const BitMatrix j22 = BitMatrix::all_ones({2, 2});
    const ExtremalRecord rec = ex_exact(n, j22);
    const GridRegion s = region_from_matrix(*rec.certificate, Rat(1), Rat(n));
    const FinitePattern grid = grid_pattern_h(2);

    CheckReport measure;
    measure.check_id = "lowerth";
    measure.params = {{"n", istr(n)}, {"part", "measure"}};
    measure.lhs = region_measure(s);
    measure.rhs = Rat(rec.value);
    measure.relation = Relation::eq;
    measure.artifacts = {ex_ref(j22, n)};
    measure.note = "measure of the lifted extremal matrix equals 1^2 ex(n, J22)";

    CheckReport avoid;
    avoid.check_id = "lowerth";
    avoid.params = {{"n", istr(n)}, {"part", "avoidance"}};
    avoid.lhs = Rat(region_contains_finite(s, grid) ? 1 : 0);
    avoid.rhs = Rat(0);
    avoid.relation = Relation::eq;
    avoid.artifacts = {ex_ref(j22, n)};
    avoid.note = "1 if the lifted region contains the unit 2x2 grid, 0 if it is P-free";
    return {measure, avoid};
}

CheckReport check_random_deletion(int n, int r, int seeds, std::uint64_t seed, const Rat& slack)
{
    if (seeds < 1) throw PreconditionError("seeds must be >= 1");
    std::int64_t total = 0;
    for (int i = 0; i < seeds; ++i) total += ex_lower_random_deletion(n, r, std::nullopt, seed + static_cast<std::uint64_t>(i)).value;
    CheckReport rep;
    rep.check_id = "random_deletion";
    rep.params = {{"n", istr(n)}, {"r", istr(r)}, {"seeds", istr(seeds)}, {"seed", std::to_string(seed)}, {"slack", slack.str()}};
    rep.lhs = Rat(total, seeds);
    rep.rhs = slack * Rat(1, 2) * upper_root(pow(Rat(n), 2 * r), r + 1, kRootDenom);
    rep.relation = Relation::ge;
    rep.note = "mean ones after deletion >= slack * n^(2 - 2/(r+1)) / 2; every certificate re-verified";
    return rep;
}

FinitePattern preset_pattern(const std::string& name)
{
    auto pts = [](std::vector<std::pair<int, int>> v) {
        std::vector<Point> out;
        for (auto [x, y] : v) out.push_back({Rat(x), Rat(y)});
        return FinitePattern(2, std::move(out));
    };
    if (name == "point") return pts({{0, 0}});
    if (name == "pair") return pts({{0, 0}, {1, 0}});
    if (name == "column_pair") return pts({{0, 0}, {0, 1}});
    if (name == "diagonal") return pts({{0, 0}, {1, 1}});
    if (name == "grid2") return pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    if (name == "grid3") return grid_pattern_h(3);
    if (name.size() > 5 && name.ends_with(".json")) {
        Pattern p = pattern_from_json(read_json_file(name));
        if (!std::holds_alternative<FinitePattern>(p)) throw PreconditionError(name + " is not a finite pattern");
        return std::get<FinitePattern>(p);
    }
    throw PreconditionError("unknown pattern \"" + name + "\"");
}

BitMatrix preset_matrix(const std::string& text)
{
    if (text == "J22") return BitMatrix::all_ones({2, 2});
    if (text == "J23") return BitMatrix::all_ones({2, 3});
    if (text == "J33") return BitMatrix::all_ones({3, 3});
    if (text == "I2") return BitMatrix::from_rows(std::vector<std::string>{"10", "01"});
    std::vector<std::string> rows;
    std::stringstream ss(text);
    for (std::string row; std::getline(ss, row, '/');) rows.push_back(row);
    if (rows.empty()) throw PreconditionError("empty matrix literal");
    for (const auto& row : rows)
        if (row.empty() || row.size() != rows[0].size() || row.find_first_not_of("01") != std::string::npos)
            throw PreconditionError("matrix literal \"" + text + "\" must be rows of 0/1 separated by '/'");
    return BitMatrix::from_rows(rows);
}

namespace {

int int_param(const Params& p, const std::string& key)
{
    const std::string& v = p.at(key);
    try {
        std::size_t used = 0;
        long long x = std::stoll(v, &used);
        if (used != v.size() || x < -1000000000LL || x > 1000000000LL) throw std::invalid_argument(v);
        return static_cast<int>(x);
    } catch (const std::logic_error&) {
        throw PreconditionError("parameter " + key + " = \"" + v + "\" is not an integer");
    }
}

Rat rat_param(const Params& p, const std::string& key) { return Rat::parse(p.at(key)); }

std::vector<CheckInfo> build_registry()
{
    std::vector<CheckInfo> v;
    v.push_back({"addedpt", "px(P + point at distance c) <= px(P) + c n",
                 {{"pattern", "point"}, {"c", "1"}, {"n", "2"}, {"r", "2"}},
                 [](const Params& p, const CheckContext& ctx) {
                     return std::vector{check_addedpt(preset_pattern(p.at("pattern")), rat_param(p, "c"), rat_param(p, "n"),
                                                      int_param(p, "r"), ctx.threads)};
                 }});
    v.push_back({"addedseg", "px(P + segment of length c) <= px(P) + c n",
                 {{"pattern", "point"}, {"c", "1"}, {"n", "2"}, {"r", "2"}},
                 [](const Params& p, const CheckContext& ctx) {
                     return std::vector{check_addedseg(preset_pattern(p.at("pattern")), rat_param(p, "c"), rat_param(p, "n"),
                                                       int_param(p, "r"), ctx.threads)};
                 }});
    v.push_back({"diagseg_construction", "L-shape measure (a + b) n - a b",
                 {{"a", "1"}, {"b", "1"}, {"n", "2"}, {"r", "2"}},
                 [](const Params& p, const CheckContext&) {
                     return std::vector{check_diagseg_construction(rat_param(p, "a"), rat_param(p, "b"), rat_param(p, "n"),
                                                                   int_param(p, "r"))};
                 }});
    v.push_back({"horizseg", "grid px of a horizontal segment of length c equals c n",
                 {{"c", "1"}, {"n", "4"}, {"r", "4"}},
                 [](const Params& p, const CheckContext& ctx) {
                     return std::vector{check_horizseg(rat_param(p, "c"), rat_param(p, "n"), int_param(p, "r"), ctx.threads)};
                 }});
    v.push_back({"kst_sandwich", "construction <= grid px(P_{s,2,c}) <= analytic bound",
                 {{"s", "1"}, {"c", "1"}, {"n", "4"}, {"r", "4"}},
                 [](const Params& p, const CheckContext& ctx) {
                     return std::vector{check_kst_sandwich(rat_param(p, "s"), rat_param(p, "c"), rat_param(p, "n"),
                                                           int_param(p, "r"), ctx.threads)};
                 }});
    v.push_back({"lowerth", "extremal J22-free matrix lifts to a P-free region of equal measure",
                 {{"n", "4"}},
                 [](const Params& p, const CheckContext&) { return check_lowerth(int_param(p, "n")); }});
    v.push_back({"main_equivalence", "c^2 ex(n/c, M_P) <= grid px <= blowup envelope",
                 {{"pattern", "grid2"}, {"n", "4"}, {"r", "4"}},
                 [](const Params& p, const CheckContext& ctx) {
                     return std::vector{check_main_equivalence(preset_pattern(p.at("pattern")), rat_param(p, "n"),
                                                               int_param(p, "r"), ctx.threads)};
                 }});
    v.push_back({"projection", "3-D grid px of a lifted pattern = n x 2-D grid px",
                 {{"pattern", "pair"}, {"n", "2"}, {"r", "2"}},
                 [](const Params& p, const CheckContext& ctx) {
                     return std::vector{
                         check_projection(lift(preset_pattern(p.at("pattern"))), rat_param(p, "n"), int_param(p, "r"), ctx.threads)};
                 }});
    v.push_back({"ps_blank", "px of a dilation bounded through a smaller square",
                 {{"pattern", "grid2"}, {"q", "2"}, {"n", "4"}, {"r", "4"}},
                 [](const Params& p, const CheckContext& ctx) {
                     return std::vector{check_ps_blank(preset_pattern(p.at("pattern")), rat_param(p, "q"), rat_param(p, "n"),
                                                       int_param(p, "r"), ctx.threads)};
                 }});
    v.push_back({"random_deletion", "mean ones of the deletion construction vs n^(2-2/(r+1)) / 2",
                 {{"n", "64"}, {"r", "2"}, {"seeds", "100"}, {"slack", "9/10"}},
                 [](const Params& p, const CheckContext& ctx) {
                     return std::vector{check_random_deletion(int_param(p, "n"), int_param(p, "r"), int_param(p, "seeds"), ctx.seed,
                                                              rat_param(p, "slack"))};
                 }});
    v.push_back({"simplex_volume", "Monte-Carlo volume of the ordered chain set",
                 {{"t", "2"}, {"c", "1"}, {"n", "4"}, {"samples", "1000000"}},
                 [](const Params& p, const CheckContext& ctx) {
                     return std::vector{check_simplex_volume(int_param(p, "t"), rat_param(p, "c"), rat_param(p, "n"), ctx.seed,
                                                             int_param(p, "samples"))};
                 }});
    v.push_back({"superadditive", "ex(m + n) >= ex(m) + ex(n) for all m + n <= max_sum",
                 {{"matrix", "J22"}, {"max_sum", "6"}},
                 [](const Params& p, const CheckContext& ctx) {
                     std::vector<std::pair<int, int>> pairs;
                     const int top = int_param(p, "max_sum");
                     for (int a = 1; a + a <= top; ++a)
                         for (int b = a; a + b <= top; ++b) pairs.emplace_back(a, b);
                     ExactOptions o;
                     o.threads = ctx.threads;
                     return check_superadditive(preset_matrix(p.at("matrix")), pairs, o);
                 }});
    v.push_back({"tardos_blank", "ex(n, S(M, k)) <= (k + 1)^2 ex(ceil(n / (k + 1)), M)",
                 {{"matrix", "J22"}, {"k", "1"}, {"n", "4"}},
                 [](const Params& p, const CheckContext& ctx) {
                     ExactOptions o;
                     o.threads = ctx.threads;
                     return std::vector{check_tardos_blank(preset_matrix(p.at("matrix")), int_param(p, "k"), int_param(p, "n"), o)};
                 }});
    std::sort(v.begin(), v.end(), [](const CheckInfo& a, const CheckInfo& b) { return a.id < b.id; });
    return v;
}

}  // namespace

const std::vector<CheckInfo>& check_registry()
{
    static const std::vector<CheckInfo> registry = build_registry();
    return registry;
}

const CheckInfo* find_check(std::string_view id)
{
    for (const auto& c : check_registry())
        if (c.id == id) return &c;
    return nullptr;
}

std::vector<CheckReport> run_check(const CheckInfo& info, const Params& overrides, const CheckContext& ctx)
{
    Params merged = info.defaults;
    for (const auto& [k, v] : overrides) {
        if (!merged.count(k)) throw PreconditionError("check " + info.id + " has no parameter \"" + k + "\"");
        merged[k] = v;
    }
    return info.run(merged, ctx);
}

}  // namespace zarex

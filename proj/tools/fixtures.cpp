#include "fixtures.hpp"

#include "oracles.hpp"
#include "zarex/io.hpp"

namespace zarex::fixtures {
namespace {

Json zarankiewicz()
{
    Json values = Json::array();
    for (int n = 1; n <= 7; ++n) values.push_back({{"n", n}, {"value", oracle::zarankiewicz_j22(n)}});
    return {{"schema", kSchema},
            {"fixture", "zarankiewicz_j22"},
            {"oracle", "row-mask enumeration, rows in non-increasing mask order"},
            {"values", values}};
}

FinitePattern pts(std::vector<std::pair<Rat, Rat>> v)
{
    std::vector<Point> out;
    for (auto& [x, y] : v) out.push_back({x, y});
    return FinitePattern(2, std::move(out));
}

Json px_small()
{
    struct Case {
        Pattern pattern;
        Rat n;
        int r;
        int den;
    };
    const std::vector<Case> cases = {
        {pts({{0, 0}}), Rat(2), 2, 2},
        {pts({{0, 0}, {1, 0}}), Rat(2), 2, 4},
        {pts({{0, 0}, {1, 0}}), Rat(3), 3, 4},
        {pts({{0, 0}, {1, 1}}), Rat(3), 3, 4},
        {pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}}), Rat(3), 3, 2},
        {pts({{0, 0}, {Rat(1, 2), Rat(1, 2)}}), Rat(2), 2, 4},
        {SegmentPattern({{Rat(0), Rat(0), Rat(1)}}), Rat(3), 3, 4},
        {SegmentPattern({{Rat(0), Rat(0), Rat(1)}, {Rat(1), Rat(2), Rat(3)}}), Rat(3), 3, 4},
        {StackPattern(Rat(1), 2, Rat(1)), Rat(3), 3, 4},
    };
    Json rows = Json::array();
    for (const auto& c : cases) {
        int cells = 0;
        if (auto* f = std::get_if<FinitePattern>(&c.pattern))
            cells = oracle::px_cells_by_enumeration(2, c.n, c.r, [&](const GridRegion& s) { return oracle::finite_embeds(s, *f, c.den); });
        else if (auto* sg = std::get_if<SegmentPattern>(&c.pattern))
            cells = oracle::px_cells_by_enumeration(2, c.n, c.r, [&](const GridRegion& s) { return oracle::segments_embed(s, *sg, c.den); });
        else
            cells = oracle::px_cells_by_enumeration(2, c.n, c.r, [&](const GridRegion& s) {
                return oracle::stack_embeds(s, std::get<StackPattern>(c.pattern), c.den);
            });
        const Rat g = c.n / Rat(c.r);
        rows.push_back({{"pattern", pattern_to_json(c.pattern)},
                        {"n", rat_to_json(c.n)},
                        {"r", c.r},
                        {"oracle_den", c.den},
                        {"cells", cells},
                        {"measure", rat_to_json(Rat(cells) * g * g)}});
    }
    return {{"schema", kSchema},
            {"fixture", "px_small"},
            {"oracle", "all 2^(r^2) regions, embeddings restricted to a fixed rational grid"},
            {"cases", rows}};
}

}  // namespace

std::vector<std::filesystem::path> regenerate(const std::filesystem::path& dir)
{
    std::vector<std::filesystem::path> written;
    auto put = [&](const char* name, const Json& j) {
        auto path = dir / name;
        write_text_file(path, j.dump(2) + "\n");
        written.push_back(path);
    };
    put("zarankiewicz_j22.json", zarankiewicz());
    put("px_small.json", px_small());
    return written;
}

}  // namespace zarex::fixtures

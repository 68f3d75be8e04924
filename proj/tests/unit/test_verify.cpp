#include <doctest.h>

#include <set>

#include "zarex/errors.hpp"
#include "zarex/verify.hpp"

using namespace zarex;

namespace {

FinitePattern pts(std::vector<std::pair<Rat, Rat>> v)
{
    std::vector<Point> out;
    for (auto& [x, y] : v) out.push_back({x, y});
    return FinitePattern(2, std::move(out));
}

const FinitePattern kPoint = pts({{0, 0}});
const FinitePattern kPair = pts({{0, 0}, {1, 0}});
const FinitePattern kGrid = pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}});

}  // namespace

TEST_CASE("analytic_upper_stack")
{
    // c -> 0 reduces to sqrt(s) n^(3/2).
    CHECK(analytic_upper_stack(Rat(1), 2, Rat(0), Rat(4)) == Rat(8));
    CHECK(analytic_upper_stack(Rat(4), 2, Rat(0), Rat(4)) == Rat(16));
    CHECK(analytic_upper_stack(Rat(1), 2, Rat(1), Rat(4)) == Rat(4) + Rat(6));
    // Irrational roots round up, never down, and stay close.
    const Rat b = analytic_upper_stack(Rat(1), 2, Rat(1), Rat(3));
    CHECK(b > Rat(3) + Rat(2) * Rat(17320, 10000));
    CHECK(b < Rat(3) + Rat(2) * Rat(17321, 10000));
    CHECK(analytic_upper_stack(Rat(1), 3, Rat(0), Rat(8)) == Rat(3) * Rat(32));
    CHECK(analytic_upper_stack(Rat(2), 2, Rat(5), Rat(4)) == Rat(20));
    CHECK_THROWS_AS(analytic_upper_stack(Rat(1), 1, Rat(1), Rat(4)), PreconditionError);
}

TEST_CASE("simplex_volume")
{
    CHECK(simplex_volume(2, Rat(0), Rat(4)) == Rat(8));
    CHECK(simplex_volume(2, Rat(1), Rat(4)) == Rat(9, 2));
    CHECK(simplex_volume(3, Rat(1), Rat(5)) == Rat(27, 6));
    CHECK(simplex_volume(2, Rat(5), Rat(4)) == Rat(0));
}

TEST_CASE("monte-carlo simplex check")
{
    auto r = check_simplex_volume(2, Rat(0), Rat(4), 42, 200000);
    CHECK(r.pass());
    REQUIRE(r.mid);
    CHECK(abs(*r.mid - Rat(8)) < Rat(1, 10));
    // Lower bound clamps at zero once n <= c t.
    auto clamp = check_simplex_volume(2, Rat(3), Rat(4), 1, 10000);
    CHECK(clamp.pass());
    CHECK(clamp.lhs <= Rat(0));
    CHECK(check_simplex_volume(3, Rat(1), Rat(6), 7, 10000).pass());
    CHECK(check_simplex_volume(2, Rat(1), Rat(4), 9, 5000).mid == check_simplex_volume(2, Rat(1), Rat(4), 9, 5000).mid);
}

TEST_CASE("main equivalence")
{
    auto g = check_main_equivalence(kGrid, Rat(4), 4);
    CHECK(g.pass());
    CHECK(g.lhs == Rat(9));
    auto p = check_main_equivalence(kPoint, Rat(3), 3);
    CHECK(p.lhs == Rat(0));
    CHECK(*p.mid == Rat(0));
    CHECK(p.rhs == Rat(0));
    auto two = check_main_equivalence(kPair, Rat(4), 4);
    CHECK(two.pass());
    CHECK(*two.mid == Rat(4));
    CHECK_THROWS_AS(check_main_equivalence(kPair, Rat(2), 1), PreconditionError);
}

TEST_CASE("addedseg and addedpt")
{
    for (auto* p : {&kPoint, &kPair}) {
        CHECK(check_addedseg(*p, Rat(1), Rat(2), 2).pass());
        CHECK(check_addedpt(*p, Rat(1), Rat(2), 2).pass());
        CHECK(check_addedpt(*p, Rat(1), Rat(3), 3).pass());
    }
    auto zero = check_addedpt(kPair, Rat(0), Rat(3), 3);
    CHECK(zero.lhs == zero.rhs);
    CHECK_THROWS_AS(check_addedseg(kPoint, Rat(1, 2), Rat(2), 2), PreconditionError);
}

TEST_CASE("ps_blank")
{
    CHECK(check_ps_blank(kGrid, Rat(2), Rat(4), 4).pass());
    auto pt = check_ps_blank(kPoint, Rat(2), Rat(4), 4);
    CHECK(pt.lhs == Rat(0));
    CHECK(pt.rhs == Rat(0));
    CHECK_THROWS_AS(check_ps_blank(kGrid, Rat(1), Rat(4), 4), PreconditionError);
}

TEST_CASE("kst sandwich")
{
    for (int n = 2; n <= 4; ++n) CHECK(check_kst_sandwich(Rat(1), Rat(1), Rat(n), n).pass());
    auto wide = check_kst_sandwich(Rat(1), Rat(3), Rat(3), 3);
    CHECK(wide.pass());
    CHECK(*wide.mid == Rat(9));
    CHECK(check_kst_sandwich(Rat(3), Rat(1), Rat(3), 3).pass());
}

TEST_CASE("projection")
{
    FinitePattern point3(3, {{Rat(0), Rat(0), Rat(0)}});
    auto z = check_projection(point3, Rat(2), 2);
    CHECK(z.lhs == Rat(0));
    CHECK(z.pass());
    CHECK(check_projection(lift(kPair), Rat(2), 2).pass());
    CHECK_THROWS_AS(check_projection(FinitePattern(3, {{Rat(0), Rat(0), Rat(0)}, {Rat(1), Rat(0), Rat(1)}}), Rat(2), 2),
                    PreconditionError);
}

TEST_CASE("segment constructions")
{
    auto h = check_horizseg(Rat(1), Rat(4), 4);
    CHECK(h.pass());
    CHECK(h.lhs == Rat(4));
    auto l = check_diagseg_construction(Rat(1), Rat(1), Rat(2), 2);
    CHECK(l.lhs == Rat(3));
    CHECK(l.pass());
}

TEST_CASE("lowerth")
{
    for (int n = 2; n <= 5; ++n) {
        auto reps = check_lowerth(n);
        REQUIRE(reps.size() == 2);
        CHECK(reps[0].pass());
        CHECK(reps[1].pass());
    }
}

TEST_CASE("random deletion check is seeded")
{
    auto a = check_random_deletion(16, 2, 5, 3);
    auto b = check_random_deletion(16, 2, 5, 3);
    CHECK(a.lhs == b.lhs);
    // 0.45 * 16^(4/3) = 18.1429...
    CHECK(a.rhs > Rat(1814, 100));
    CHECK(a.rhs < Rat(1815, 100));
}

TEST_CASE("registry")
{
    const auto& reg = check_registry();
    std::set<std::string> ids;
    for (std::size_t i = 0; i < reg.size(); ++i) {
        ids.insert(reg[i].id);
        if (i) CHECK(reg[i - 1].id < reg[i].id);
    }
    for (const char* id : {"addedpt", "addedseg", "diagseg_construction", "horizseg", "kst_sandwich", "lowerth", "main_equivalence",
                           "projection", "ps_blank", "random_deletion", "simplex_volume", "superadditive", "tardos_blank"})
        CHECK(ids.count(id));
    CHECK(find_check("nope") == nullptr);

    CheckContext ctx;
    const auto* h = find_check("horizseg");
    REQUIRE(h);
    auto reps = run_check(*h, {{"n", "2"}, {"r", "2"}}, ctx);
    REQUIRE(reps.size() == 1);
    CHECK(reps[0].params.at("n") == "2");
    CHECK(reps[0].pass());
    CHECK_THROWS_AS(run_check(*h, {{"bogus", "1"}}, ctx), PreconditionError);
    CHECK_THROWS_AS(run_check(*h, {{"r", "x"}}, ctx), PreconditionError);
}

TEST_CASE("presets")
{
    CHECK(preset_pattern("grid2") == kGrid);
    CHECK(preset_matrix("J22") == BitMatrix::from_rows(std::vector<std::string>{"11", "11"}));
    CHECK(preset_matrix("10/01") == BitMatrix::from_rows(std::vector<std::string>{"10", "01"}));
    CHECK_THROWS_AS(preset_pattern("nothing"), PreconditionError);
}

#include <doctest.h>

#include <string>
#include <vector>

#include "zarex/bit_matrix.hpp"
#include "zarex/errors.hpp"
#include "gen.hpp"
#include "oracles.hpp"

using namespace zarex;

namespace {

BitMatrix rows(std::vector<std::string> r) { return BitMatrix::from_rows(r); }

BitMatrix without(BitMatrix m, const Index& e)
{
    m.set(e, false);
    return m;
}

}  // namespace

TEST_CASE("containment examples")
{
    auto j22 = BitMatrix::all_ones({2, 2});
    auto id2 = rows({"10", "01"});
    CHECK(matrix_contains(BitMatrix::all_ones({3, 3}), j22));
    CHECK_FALSE(matrix_contains(id2, j22));
    CHECK(matrix_contains(id2, id2));
    CHECK(matrix_contains(rows({"0110", "1001", "0101"}), rows({"11", "11"})) == false);
    CHECK(matrix_contains(rows({"0101", "0000", "0101"}), j22));
    CHECK_THROWS_AS(matrix_contains(j22, BitMatrix::all_ones({2, 2, 2})), PreconditionError);
}

TEST_CASE("witness maps are strictly increasing and re-verify")
{
    auto a = rows({"1010", "0000", "1011"});
    auto b = rows({"11", "11"});
    auto e = find_embedding(a, b);
    REQUIRE(e.has_value());
    CHECK(verify_embedding(a, b, *e));
    CHECK(e->maps[0] == std::vector<int>{0, 2});
    CHECK(e->maps[1] == std::vector<int>{0, 2});
}

TEST_CASE("blowup inserts zero lines")
{
    auto j22 = BitMatrix::all_ones({2, 2});
    CHECK(blowup(j22, 0) == j22);
    CHECK(blowup(j22, 1) == rows({"101", "000", "101"}));
    auto m = rows({"110", "011"});
    auto b = blowup(m, 2);
    CHECK(b.dims() == std::vector<int>{4, 7});
    CHECK(b.count() == m.count());
    CHECK(b.get(3, 6));
    CHECK_THROWS_AS(blowup(m, -1), PreconditionError);
    auto cube = blowup(BitMatrix::all_ones({2, 2, 2}), 1);
    CHECK(cube.dims() == std::vector<int>{3, 3, 3});
    CHECK(cube.count() == 8);
}

TEST_CASE("copy counting")
{
    CHECK(count_copies(BitMatrix::all_ones({3, 3}), BitMatrix::all_ones({2, 2})) == 9);
    CHECK(count_copies(rows({"10", "01"}), rows({"1"})) == 2);
    CHECK(count_copies(BitMatrix::all_ones({4, 4, 4}), BitMatrix::all_ones({2, 2, 2})) == 216);
    testgen::Gen gen(7);
    auto j22 = BitMatrix::all_ones({2, 2});
    for (int trial = 0; trial < 200; ++trial) {
        auto a = gen.matrix(6, 6);
        CHECK(count_copies(a, j22) == oracle::count_j22(a));
    }
}

TEST_CASE("containment agrees with subset enumeration on every 3x3 host")
{
    std::vector<BitMatrix> patterns;
    for (int rr = 1; rr <= 2; ++rr)
        for (int cc = 1; cc <= 2; ++cc)
            for (int mask = 0; mask < (1 << (rr * cc)); ++mask) {
                BitMatrix b({rr, cc});
                for (int k = 0; k < rr * cc; ++k)
                    if ((mask >> k) & 1) b.set(k / cc, k % cc, true);
                patterns.push_back(b);
            }
    for (int mask = 0; mask < 512; ++mask) {
        BitMatrix a({3, 3});
        for (int k = 0; k < 9; ++k)
            if ((mask >> k) & 1) a.set(k / 3, k % 3, true);
        for (const auto& b : patterns) {
            bool expect = oracle::contains(a, b);
            REQUIRE(matrix_contains(a, b) == expect);
            REQUIRE((count_copies(a, b) == 0) == !expect);
        }
    }
}

TEST_CASE("containment agrees with subset enumeration on random 5x5 hosts and 3x3 patterns")
{
    testgen::Gen gen(2024);
    for (int trial = 0; trial < 3000; ++trial) {
        auto a = gen.matrix(gen.uniform(1, 5), gen.uniform(1, 5), 2, 3);
        auto b = gen.matrix(gen.uniform(1, 3), gen.uniform(1, 3));
        bool expect = oracle::contains(a, b);
        REQUIRE(matrix_contains(a, b) == expect);
        REQUIRE((count_copies(a, b) == 0) == !expect);
        if (expect) {
            auto e = find_embedding(a, b);
            REQUIRE(e.has_value());
            CHECK(verify_embedding(a, b, *e));
        }
    }
}

TEST_CASE("three-dimensional containment agrees with enumeration")
{
    testgen::Gen gen(99);
    for (int trial = 0; trial < 400; ++trial) {
        auto a = gen.matrix_nd({3, 3, 3}, 2, 3);
        auto b = gen.matrix_nd({gen.uniform(1, 2), gen.uniform(1, 2), gen.uniform(1, 2)});
        REQUIRE(matrix_contains(a, b) == oracle::contains(a, b));
    }
}

TEST_CASE("containment is reflexive and transitive")
{
    testgen::Gen gen(5);
    for (int trial = 0; trial < 300; ++trial) {
        auto a = gen.matrix(5, 5, 2, 3);
        CHECK(matrix_contains(a, a));
        auto b = sub_box(a, std::vector<int>{gen.uniform(0, 1), gen.uniform(0, 1)}, {gen.uniform(2, 4), gen.uniform(2, 4)});
        auto c = gen.matrix(2, 2);
        if (matrix_contains(b, c)) CHECK(matrix_contains(a, c));
    }
}

TEST_CASE("blowup preserves containment")
{
    testgen::Gen gen(31);
    for (int trial = 0; trial < 150; ++trial) {
        auto a = gen.matrix(4, 4, 2, 3);
        auto b = gen.matrix(2, 2, 2, 3);
        if (b.count() == 0 || !matrix_contains(a, b)) continue;
        for (int k = 0; k <= 2; ++k) CHECK(matrix_contains(blowup(a, k), blowup(b, k)));
    }
}

TEST_CASE("copies through an entry")
{
    testgen::Gen gen(17);
    auto j22 = BitMatrix::all_ones({2, 2});
    auto corners = rows({"101", "000", "101"});
    for (int trial = 0; trial < 400; ++trial) {
        auto a = gen.matrix(5, 5);
        const auto& b = trial % 2 ? j22 : corners;
        for (const auto& e : a.ones()) {
            bool through = contains_through(a, b, e);
            bool with = matrix_contains(a, b);
            bool rest = matrix_contains(without(a, e), b);
            if (through) CHECK(with);
            if (!through) CHECK(with == rest);
            if (with && !rest) CHECK(through);
        }
    }
}

TEST_CASE("2-D symmetries")
{
    auto m = rows({"110", "001"});
    CHECK(reflect_columns(m) == rows({"011", "100"}));
    CHECK(reflect_rows(m) == rows({"001", "110"}));
    CHECK(transpose(m) == rows({"10", "10", "01"}));
    CHECK(rotate90(m) == rows({"01", "01", "10"}));
    CHECK(rotate90(rotate90(rotate90(rotate90(m)))) == m);
    CHECK(pad_to(m, {3, 4}).get(1, 2));
    CHECK(pad_to(m, {3, 4}).count() == 3);
}

TEST_CASE("guards and index checks")
{
    CHECK_THROWS_AS(BitMatrix({65, 2}), GuardError);
    CHECK_THROWS_AS(BitMatrix({0, 2}), PreconditionError);
    BitMatrix m({2, 2});
    CHECK_THROWS_AS(m.set(2, 0, true), std::out_of_range);
    CHECK(BitMatrix::all_ones({2, 64}).count() == 128);
}

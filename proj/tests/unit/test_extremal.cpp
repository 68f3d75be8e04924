#include <doctest.h>

#include <string>
#include <vector>

#include "zarex/errors.hpp"
#include "zarex/extremal.hpp"
#include "gen.hpp"
#include "oracles.hpp"

using namespace zarex;

namespace {

BitMatrix rows(std::vector<std::string> r) { return BitMatrix::from_rows(r); }

// Lexicographically smallest row-major bitstring among optimal n x n matrices.
std::string smallest_optimal(int n, const BitMatrix& m)
{
    const int cells = n * n;
    int best = -1;
    std::string best_bits;
    for (std::uint32_t mask = 0; mask < (1U << cells); ++mask) {
        BitMatrix a({n, n});
        for (int c = 0; c < cells; ++c)
            if ((mask >> c) & 1U) a.set(c / n, c % n, true);
        if (oracle::contains(a, m)) continue;
        int pop = static_cast<int>(a.count());
        std::string bits = a.bitstring();
        if (pop > best || (pop == best && bits < best_bits)) {
            best = pop;
            best_bits = bits;
        }
    }
    return best_bits;
}

}  // namespace

TEST_CASE("ex examples")
{
    auto j22 = BitMatrix::all_ones({2, 2});
    CHECK(ex_exact(1, j22).value == 1);
    CHECK(ex_exact(5, rows({"1"})).value == 0);
    CHECK(ex_exact(3, rows({"010"})).value == 6);
    CHECK(ex_exact(4, rows({"01"})).value == 4);
    CHECK_THROWS_AS(ex_exact(3, BitMatrix({2, 2})), PreconditionError);
    CHECK_THROWS_AS(ex_exact(8, j22), GuardError);
    CHECK_THROWS_AS(ex_exact(5, BitMatrix::all_ones({2, 2, 2})), GuardError);
}

TEST_CASE("ex of J22 matches the Zarankiewicz oracle")
{
    auto j22 = BitMatrix::all_ones({2, 2});
    for (int n = 1; n <= 6; ++n) {
        auto rec = ex_exact(n, j22);
        CHECK(rec.value == oracle::zarankiewicz_j22(n));
        CHECK(rec.bound == BoundKind::exact);
        REQUIRE(rec.certificate);
        CHECK_FALSE(matrix_contains(*rec.certificate, j22));
        CHECK(static_cast<std::int64_t>(rec.certificate->count()) == rec.value);
    }
}

TEST_CASE("ex matches enumeration for random small patterns")
{
    testgen::Gen gen(11);
    for (int trial = 0; trial < 25; ++trial) {
        BitMatrix m = gen.matrix(gen.uniform(1, 3), gen.uniform(1, 3));
        if (m.count() == 0) continue;
        int n = gen.uniform(1, 4);
        CAPTURE(m.bitstring());
        CAPTURE(n);
        CHECK(ex_exact(n, m).value == oracle::ex_by_enumeration(n, m));
    }
}

TEST_CASE("certificate is the lexicographically smallest optimum")
{
    testgen::Gen gen(5);
    std::vector<BitMatrix> ms = {BitMatrix::all_ones({2, 2}), rows({"10", "01"}), rows({"11"}), rows({"101", "010"})};
    for (int i = 0; i < 4; ++i) ms.push_back(gen.matrix(2, 2));
    for (const auto& m : ms) {
        if (m.count() < 2) continue;
        for (int n = 2; n <= 3; ++n) {
            CAPTURE(m.bitstring());
            CHECK(ex_exact(n, m).certificate->bitstring() == smallest_optimal(n, m));
        }
    }
}

TEST_CASE("value and certificate do not depend on thread count")
{
    auto j22 = BitMatrix::all_ones({2, 2});
    auto m = rows({"110", "011"});
    for (int n = 3; n <= 5; ++n) {
        auto one = ex_exact(n, j22);
        ExactOptions o;
        o.threads = 3;
        auto three = ex_exact(n, j22, o);
        CHECK(one.value == three.value);
        CHECK(*one.certificate == *three.certificate);
        CHECK(ex_exact(n, m).value == ex_exact(n, m, o).value);
    }
}

TEST_CASE("symmetry breaking keeps the value and is refused for asymmetric patterns")
{
    ExactOptions o;
    o.symmetry_breaking = true;
    auto j22 = BitMatrix::all_ones({2, 2});
    for (int n = 2; n <= 6; ++n) {
        auto rec = ex_exact(n, j22, o);
        CHECK(rec.value == oracle::zarankiewicz_j22(n));
        CHECK(rec.symmetry_breaking);
    }
    CHECK_THROWS_AS(ex_exact(3, rows({"10", "01"}), o), PreconditionError);
}

TEST_CASE("ex is monotone and invariant under the matrix symmetries")
{
    std::vector<BitMatrix> ms = {rows({"110", "011"}), rows({"10", "11"}), rows({"100", "011"})};
    for (const auto& m : ms) {
        std::int64_t prev = 0;
        for (int n = 1; n <= 5; ++n) {
            auto v = ex_exact(n, m).value;
            CHECK(v >= prev);
            prev = v;
            if (m.count() > 1) CHECK(v >= n);
            if (n > 4) continue;
            CHECK(ex_exact(n, reflect_columns(m)).value == v);
            CHECK(ex_exact(n, reflect_rows(m)).value == v);
            CHECK(ex_exact(n, rotate90(m)).value == v);
        }
    }
}

TEST_CASE("three-dimensional ex matches enumeration")
{
    auto cube = BitMatrix::all_ones({2, 2, 2});
    auto line = BitMatrix::all_ones({1, 1, 2});
    for (const auto& m : {cube, line}) {
        int best = 0;
        for (std::uint32_t mask = 0; mask < 256; ++mask) {
            BitMatrix a({2, 2, 2});
            for (int c = 0; c < 8; ++c)
                if ((mask >> c) & 1U) a.set(Index{c >> 2, (c >> 1) & 1, c & 1}, true);
            if (!oracle::contains(a, m)) best = std::max(best, static_cast<int>(a.count()));
        }
        CHECK(ex_exact(2, m).value == best);
    }
    CHECK(ex_exact(3, line).value == 9);
}

TEST_CASE("heuristic lower bound")
{
    auto j22 = BitMatrix::all_ones({2, 2});
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto h = ex_lower_heuristic(6, j22, seed);
        CHECK(h.bound == BoundKind::lower);
        CHECK(h.value >= 6);
        CHECK(h.value <= ex_exact(6, j22).value);
        CHECK_FALSE(matrix_contains(*h.certificate, j22));
        CHECK(*ex_lower_heuristic(6, j22, seed).certificate == *h.certificate);
    }
    CHECK(ex_lower_heuristic(4, rows({"1"}), 1).value == 0);
    auto big = ex_lower_heuristic(20, j22, 3, 200);
    CHECK_FALSE(matrix_contains(*big.certificate, j22));
}

TEST_CASE("random deletion")
{
    CHECK(default_deletion_probability(64, 2) == Rat(1, 16));
    CHECK(default_deletion_probability(1, 2) == Rat(1));
    auto zero = ex_lower_random_deletion(10, 2, Rat(0), 1);
    CHECK(zero.value == 0);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        auto rec = ex_lower_random_deletion(64, 2, std::nullopt, seed);
        CHECK_FALSE(matrix_contains(*rec.certificate, BitMatrix::all_ones({2, 2})));
        CHECK(rec.value > 0);
        CHECK(*ex_lower_random_deletion(64, 2, std::nullopt, seed).certificate == *rec.certificate);
    }
    auto r3 = ex_lower_random_deletion(20, 3, Rat(1, 2), 9);
    CHECK_FALSE(matrix_contains(*r3.certificate, BitMatrix::all_ones({3, 3})));
    CHECK_THROWS_AS(ex_lower_random_deletion(10, 1, std::nullopt, 1), PreconditionError);
}

TEST_CASE("superadditivity and the blowup bound")
{
    auto j22 = BitMatrix::all_ones({2, 2});
    auto reps = check_superadditive(j22, {{1, 1}, {2, 2}, {1, 4}, {3, 3}});
    for (const auto& rep : reps) CHECK(rep.pass());
    CHECK(reps[0].lhs == Rat(3));
    CHECK(reps[0].rhs == Rat(2));

    auto tb = check_tardos_blank(j22, 1, 4);
    CHECK(tb.pass());
    CHECK(tb.rhs == Rat(12));
    auto k0 = check_tardos_blank(j22, 0, 4);
    CHECK(k0.lhs == k0.rhs);
    auto single = check_tardos_blank(rows({"1"}), 2, 5);
    CHECK(single.lhs == Rat(0));
    CHECK(single.rhs == Rat(0));
}

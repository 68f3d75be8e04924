#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "zarex/errors.hpp"
#include "zarex/rational.hpp"
#include "../support/gen.hpp"

using namespace zarex;

TEST_CASE("rationals stay reduced with a positive denominator")
{
    Rat a(6, -4);
    CHECK(a.num() == -3);
    CHECK(a.den() == 2);
    CHECK(Rat(0, 7).den() == 1);
    CHECK((Rat(1, 2) + Rat(1, 3)) == Rat(5, 6));
    CHECK((Rat(1, 2) - Rat(1, 2)).sign() == 0);
    CHECK((Rat(2, 3) * Rat(3, 4)) == Rat(1, 2));
    CHECK((Rat(2, 3) / Rat(4, 9)) == Rat(3, 2));
    CHECK(Rat(-7, 2).floor() == -4);
    CHECK(Rat(-7, 2).ceil() == -3);
    CHECK(Rat(7, 2).floor() == 3);
    CHECK(Rat(7, 2).ceil() == 4);
    CHECK_THROWS_AS(Rat(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rat(1) / Rat(0), std::domain_error);
}

TEST_CASE("canonical parsing")
{
    CHECK(Rat::parse("3/2") == Rat(3, 2));
    CHECK(Rat::parse("-5") == Rat(-5));
    CHECK(Rat::parse("0") == Rat(0));
    for (const char* bad : {"", "+1", "01", "-0", "2/4", "3/1", "1/-2", "1/02", "x", "1/", "/2", "1.5"})
        CHECK_THROWS_AS(Rat::parse(bad), SchemaError);
    CHECK(Rat::parse(Rat(-22, 7).str()) == Rat(-22, 7));
}

TEST_CASE("overflow is detected instead of wrapping")
{
    Rat big(std::int64_t{1} << 62);
    CHECK_THROWS_AS(big * big, std::overflow_error);
    CHECK_THROWS_AS(big + big, std::overflow_error);
}

TEST_CASE("ordering is exact")
{
    CHECK(Rat(1, 3) < Rat(334, 1000));
    CHECK(Rat(-1, 2) < Rat(-1, 3));
    CHECK(max(Rat(1, 2), Rat(2, 3)) == Rat(2, 3));
    CHECK(pow(Rat(2, 3), 3) == Rat(8, 27));
    CHECK(pow(Rat(2), -2) == Rat(1, 4));
}

TEST_CASE("roots are rounded in the requested direction")
{
    const std::int64_t den = std::int64_t{1} << 30;
    CHECK(upper_root(Rat(16), 2, den) == Rat(4));
    CHECK(lower_root(Rat(16), 2, den) == Rat(4));
    Rat up = upper_root(Rat(2), 2, den);
    Rat lo = lower_root(Rat(2), 2, den);
    CHECK(pow(up, 2) >= Rat(2));
    CHECK(pow(lo, 2) <= Rat(2));
    CHECK(up - lo == Rat(1, den));
    CHECK(pow(upper_root(Rat(5, 7), 3, 1 << 16), 3) >= Rat(5, 7));
    CHECK(pow(lower_root(Rat(5, 7), 3, 1 << 16), 3) <= Rat(5, 7));
}

TEST_CASE("EpsRat compares base first, then the infinitesimal")
{
    EpsRat a{Rat(1), 1};
    EpsRat b{Rat(1), 0};
    EpsRat c{Rat(1, 1000000), 0};
    CHECK(b < a);
    CHECK(a < EpsRat{Rat(1) + c.base, 0});
    CHECK(max(a, b) == a);
    CHECK((a + Rat(2)) == EpsRat{Rat(3), 1});
    std::ostringstream os;
    os << a;
    CHECK(os.str() == "1+1e");
}

TEST_CASE("field identities on random rationals")
{
    testgen::Gen gen(11);
    for (int i = 0; i < 500; ++i) {
        Rat a(gen.uniform(-50, 50), gen.uniform(1, 30));
        Rat b(gen.uniform(-50, 50), gen.uniform(1, 30));
        Rat c(gen.uniform(-50, 50), gen.uniform(1, 30));
        CHECK((a + b) == (b + a));
        CHECK(((a + b) + c) == (a + (b + c)));
        CHECK((a * (b + c)) == (a * b + a * c));
        CHECK((a - b + b) == a);
        if (b.sign() != 0) CHECK((a / b * b) == a);
        CHECK(Rat::parse(a.str()) == a);
        CHECK(((a < b) + (b < a) + (a == b)) == 1);
    }
}

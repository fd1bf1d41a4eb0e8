#include <catch2/catch_amalgamated.hpp>

#include "fgrow/polynomial.hpp"
#include "fgrow/ratfunc.hpp"
#include "fgrow/roots.hpp"

using namespace fgrow;

namespace {
Polynomial poly(const char* text) {
    RationalFunction f = parse_ratfunc(text, 'x');
    REQUIRE(f.is_poly());
    return f.num();
}
}  // namespace

TEST_CASE("sturm counting on an interval") {
    // (x - 1/2)(x - 2): one root in (0, 1]
    Polynomial p = poly("(2*x - 1)*(x - 2)");
    auto chain = sturm_chain(p);
    CHECK(sturm_count(chain, BigRational(0), BigRational(1)) == 1);
    CHECK(sturm_count(chain, BigRational(0), BigRational(3)) == 2);
    CHECK(sturm_count(chain, BigRational(1), make_rat(3, 2)) == 0);
}

TEST_CASE("repeated roots need the radical first") {
    Polynomial p = poly("(x - 1)^2 * (x + 2)");
    Polynomial r = radical(p);
    CHECK(r.degree() == 2);
    auto chain = sturm_chain(r);
    CHECK(sturm_count(chain, BigRational(0), BigRational(2)) == 1);
    CHECK(sturm_count(chain, BigRational(-3), BigRational(0)) == 1);
}

TEST_CASE("cauchy bound dominates all roots") {
    Polynomial p = poly("x^3 - 10*x + 1");
    BigRational b = cauchy_root_bound(p);
    CHECK(b >= 4);  // largest root magnitude is about 3.05
}

TEST_CASE("minimal root modulus collapses to exact rationals") {
    // 1 - 9 x^2: roots +-1/3
    MinModulus m = *min_root_modulus(poly("1 - 9*x^2"));
    CHECK(m.iv.exact());
    CHECK(m.iv.lo == make_rat(1, 3));

    // repeated rational root
    MinModulus d = *min_root_modulus(poly("(1 - 2*x)^2"));
    CHECK(d.iv.exact());
    CHECK(d.iv.lo == make_rat(1, 2));

    // purely complex pair x^2 + 1: modulus exactly 1
    MinModulus c = *min_root_modulus(poly("x^2 + 1"));
    CHECK(c.iv.exact());
    CHECK(c.iv.lo == 1);
}

TEST_CASE("irrational minimum gives a tight certified interval") {
    // 1 - x - x^2: positive root (sqrt(5)-1)/2 = 0.618...; since x^2 + x - 1
    // is increasing on the positives, containment is a pair of sign checks
    MinModulus m = *min_root_modulus(poly("1 - x - x^2"));
    CHECK(m.iv.lo * m.iv.lo + m.iv.lo <= 1);
    CHECK(m.iv.hi * m.iv.hi + m.iv.hi >= 1);
    CHECK(m.iv.hi - m.iv.lo < make_rat(1, 1000000000000L));
}

TEST_CASE("origin roots give modulus zero") {
    MinModulus m = *min_root_modulus(poly("x^3 - x^5"));
    CHECK(m.iv.exact());
    CHECK(m.iv.lo == 0);
}

TEST_CASE("pole report of a rational function") {
    RationalFunction f = parse_ratfunc("(1 + 3*t^2)/(1 - 9*t^2)");
    PoleReport r = poles(f);
    REQUIRE(r.real_poles.size() == 2);
    CHECK(r.min_modulus->iv.exact());
    CHECK(r.min_modulus->iv.lo == make_rat(1, 3));

    RationalFunction p = parse_ratfunc("1 + t^2");
    PoleReport none = poles(p);
    CHECK(none.real_poles.empty());
}

TEST_CASE("extended gcd certificate") {
    Polynomial a = poly("x^2 - 1"), b = poly("x^2 - 2*x + 1");
    auto [g, u, v] = poly_extgcd(a, b);
    CHECK(g == poly("x - 1"));
    CHECK(u * a + v * b == g);

    // coprime pair: unit gcd and a valid Bezout identity
    auto [g2, u2, v2] = poly_extgcd(poly("x"), poly("x + 1"));
    CHECK(g2.degree() == 0);
    CHECK(u2 * poly("x") + v2 * poly("x + 1") == g2);
}

TEST_CASE("interval helpers") {
    RatInterval iv{make_rat(1, 3), make_rat(1, 3)};
    CHECK(iv.exact());
    RatInterval wide{make_rat(1, 4), make_rat(1, 2)};
    CHECK_FALSE(wide.exact());
    CHECK(wide.mid() == make_rat(3, 8));
}

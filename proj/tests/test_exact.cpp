#include <catch2/catch_amalgamated.hpp>

#include "fgrow/polynomial.hpp"
#include "fgrow/ratfunc.hpp"
#include "fgrow/rational.hpp"

using namespace fgrow;

TEST_CASE("rational helpers") {
    CHECK(make_rat(2, 4) == make_rat(1, 2));
    CHECK_THROWS_AS(make_rat(1, 0), input_error);
    CHECK(rat_to_string(make_rat(-3, 6)) == "-1/2");
    CHECK(rat_to_string(BigRational(7)) == "7");
    CHECK(rat_from_string("22/7") == make_rat(22, 7));
    CHECK(rat_from_string("-5") == BigRational(-5));
    CHECK_THROWS_AS(rat_from_string("1/0"), input_error);
    CHECK_THROWS_AS(rat_from_string("x"), input_error);
    CHECK(rat_pow(make_rat(2, 3), 3) == make_rat(8, 27));
    CHECK(int_pow(BigInt(3), 5) == 243);
    CHECK(rat_abs(make_rat(-1, 2)) == make_rat(1, 2));
}

TEST_CASE("exact square roots") {
    CHECK(rat_sqrt_exact(make_rat(4, 9)) == make_rat(2, 3));
    CHECK(rat_sqrt_exact(BigRational(0)) == BigRational(0));
    CHECK_FALSE(rat_sqrt_exact(BigRational(2)).has_value());
    CHECK_FALSE(rat_sqrt_exact(make_rat(1, 3)).has_value());
    CHECK(rat_floor_sqrt(BigInt(17)) == 4);
    CHECK(rat_floor_sqrt(BigInt(16)) == 4);
}

TEST_CASE("polynomial arithmetic") {
    Polynomial x = Polynomial::variable();
    Polynomial p = x * x - Polynomial(BigRational(1));  // x^2 - 1
    Polynomial q = x - Polynomial(BigRational(1));
    CHECK(p.degree() == 2);
    CHECK(p.evaluate(BigRational(3)) == 8);
    CHECK(Polynomial::divexact(p, q) == x + Polynomial(BigRational(1)));
    auto [quo, rem] = Polynomial::divmod(p, x + Polynomial(BigRational(2)));
    CHECK(quo * (x + Polynomial(BigRational(2))) + rem == p);
    CHECK(rem.degree() == 0);
    CHECK_THROWS_AS(Polynomial::divexact(x, p), internal_error);

    CHECK(p.derivative() == BigRational(2) * x);
    CHECK(p.pow(2) == x.pow(4) - BigRational(2) * x * x + Polynomial(BigRational(1)));
    CHECK(Polynomial().degree() == -1);
    CHECK(p.coeff(5) == 0);
}

TEST_CASE("polynomial reversal and argument scaling") {
    Polynomial x = Polynomial::variable();
    Polynomial p = x.pow(3) - BigRational(16) * x;  // roots 0, +-4
    Polynomial rev = p.reversed();  // 1 - 16 x^2 after the zero root drops off
    Polynomial expected{std::vector<BigRational>{BigRational(1), BigRational(0), BigRational(-16)}};
    CHECK(rev == expected);

    Polynomial s = p.scaled_arg(make_rat(1, 2));
    CHECK(s.evaluate(BigRational(8)) == p.evaluate(BigRational(4)));
}

TEST_CASE("rational functions canonicalize") {
    Polynomial x = Polynomial::variable();
    RationalFunction f(x * x - Polynomial(BigRational(1)), x - Polynomial(BigRational(1)), 'x');
    CHECK(f.is_poly());
    CHECK(f.num() == x + Polynomial(BigRational(1)));
    CHECK(f.evaluate(BigRational(4)) == 5);

    RationalFunction g(x, x * x, 'x');  // 1/x
    CHECK_THROWS_AS(g.evaluate(BigRational(0)), input_error);
    CHECK(g.evaluate(BigRational(2)) == make_rat(1, 2));

    RationalFunction zero_den_ok(Polynomial(), x, 'x');
    CHECK(zero_den_ok.is_zero());
    CHECK_THROWS_AS(RationalFunction(x, Polynomial(), 'x'), input_error);
}

TEST_CASE("rational function arithmetic") {
    RationalFunction t = RationalFunction::variable('t');
    RationalFunction one = RationalFunction::constant(1, 't');
    RationalFunction f = one / (one - t);          // 1/(1-t)
    RationalFunction g = t / (one - t);            // t/(1-t)
    CHECK(f - g == one);
    CHECK(f * (one - t) == one);
    CHECK(f.pow(2) == one / (one - t) / (one - t));
    CHECK((BigRational(3) * g).evaluate(make_rat(1, 2)) == 3);
    CHECK_THROWS_AS(f / (t - t), input_error);
    // mixing variables is an input error
    RationalFunction s = RationalFunction::variable('s');
    CHECK_THROWS_AS(f + s, input_error);
}

TEST_CASE("series coefficients of rational series") {
    RationalFunction t = RationalFunction::variable('t');
    RationalFunction one = RationalFunction::constant(1, 't');
    auto geo = series_coefficients(one / (one - t), 5);
    REQUIRE(geo.size() == 6);
    for (auto& c : geo) CHECK(c == 1);

    // 12 t^2 / (1 - 9 t^2): 0, 0, 12, 0, 108, 0, 972
    RationalFunction mu = (BigRational(12) * t * t) / (one - BigRational(9) * t * t);
    auto got = series_coefficients(mu, 6);
    std::vector<BigRational> want{0, 0, 12, 0, 108, 0, 972};
    CHECK(got == want);

    CHECK_THROWS_AS(series_coefficients(one / t, 3), input_error);
    CHECK_THROWS_AS(series_coefficients(one, -1), input_error);
}

TEST_CASE("substitution composes and lands in the inner variable") {
    RationalFunction t = RationalFunction::variable('t');
    RationalFunction one = RationalFunction::constant(1, 't');
    RationalFunction f = one / (one - t);  // 1/(1-t)
    RationalFunction s = RationalFunction::variable('s');
    RationalFunction inner = RationalFunction::constant(1, 's') - s;  // 1-s
    RationalFunction composed = substitute(f, inner);                 // 1/s
    CHECK(composed.var() == 's');
    CHECK(composed.evaluate(make_rat(1, 4)) == 4);

    // denominator vanishing identically is rejected
    RationalFunction zero_inner = RationalFunction::constant(1, 's');
    CHECK_THROWS_AS(substitute(f, zero_inner), input_error);
}

TEST_CASE("derivatives of rational functions") {
    RationalFunction t = RationalFunction::variable('t');
    RationalFunction one = RationalFunction::constant(1, 't');
    RationalFunction f = one / (one - t);
    CHECK(f.derivative() == f * f);
    CHECK(differentiate(f, 2) == BigRational(2) * f * f * f);
    CHECK(differentiate(f, 0) == f);
}

TEST_CASE("formatter and parser agree") {
    for (const char* text : {
             "(1 + 3*t^2)/(1 - 9*t^2)",
             "1/(2 - s)",
             "t",
             "42",
             "-1/2",
             "(2*t^3)/(1 - t)",
             "1 - 9/4*t + t^5",
         }) {
        RationalFunction f = parse_ratfunc(text);
        RationalFunction g = parse_ratfunc(format_ratfunc(f));
        CHECK(f == g);
    }
    // whitespace and explicit products are accepted
    CHECK(parse_ratfunc("2 * t ^ 2") == parse_ratfunc("2*t^2"));
    CHECK(parse_ratfunc("(1-t)*(1+t)") == parse_ratfunc("1 - t^2"));
    CHECK_THROWS_AS(parse_ratfunc("t + "), input_error);
    CHECK_THROWS_AS(parse_ratfunc("t + s"), input_error);
    CHECK_THROWS_AS(parse_ratfunc(""), input_error);
}

TEST_CASE("parser honours the fallback variable") {
    RationalFunction f = parse_ratfunc("x^2 - 16", 'x');
    CHECK(f.var() == 'x');
    CHECK(f.is_poly());
    CHECK(f.num().degree() == 2);
    // constants pick the fallback too
    CHECK(parse_ratfunc("5", 'z').var() == 'z');
}

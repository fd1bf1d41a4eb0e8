#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "fgrow/measure.hpp"
#include "fgrow/stallings.hpp"

using namespace fgrow;

TEST_CASE("measure params validate s") {
    Alphabet ab(2);
    CHECK_NOTHROW(MeasureParams(ab, make_rat(1, 2)));
    CHECK_THROWS_AS(MeasureParams(ab, BigRational(0)), input_error);
    CHECK_THROWS_AS(MeasureParams(ab, BigRational(1)), input_error);
    CHECK_THROWS_AS(MeasureParams(ab, make_rat(3, 2)), input_error);
    MeasureParams p(ab, make_rat(1, 4));
    CHECK(p.t() == make_rat(1, 4));  // (1-s)/(2m-1) = (3/4)/3
}

TEST_CASE("atoms of single words") {
    Alphabet ab(2);
    MeasureParams p(ab, make_rat(1, 2));
    CHECK(atom(p, Word{}) == make_rat(1, 2));                    // mu_s(1) = s
    CHECK(atom(p, parse_word("a", ab)) == make_rat(1, 16));     // s(1-s)/4
    CHECK(atom(p, parse_word("ab", ab)) == make_rat(1, 96));    // s(1-s)^2/12
    CHECK(atom(p, parse_word("abA", ab)) == make_rat(1, 576));  // s(1-s)^3/36

    CHECK(adjusted_atom(p, parse_word("ab", ab)) == make_rat(1, 36));  // t^2, t = 1/6
    CHECK_THROWS_AS(adjusted_atom(p, Word{}), input_error);

    CHECK(frequency_atom(ab, Word{}) == 1);
    CHECK(frequency_atom(ab, parse_word("ab", ab)) == make_rat(1, 12));  // 1/|S_2|
    CHECK(adjusted_frequency_atom(ab, parse_word("ab", ab)) == make_rat(1, 9));
    CHECK_THROWS_AS(adjusted_frequency_atom(ab, Word{}), input_error);
}

TEST_CASE("atom sums over a sphere are the geometric law") {
    // sum over S_2 of mu_s = s(1-s)^2, 12 words each of mass s(1-s)^2/12
    Alphabet ab(2);
    MeasureParams p(ab, make_rat(1, 3));
    BigRational each = atom(p, parse_word("ab", ab));
    CHECK(BigRational(12) * each == p.s * rat_pow(1 - p.s, 2));
}

TEST_CASE("measure of s from the adjusted star series") {
    Alphabet ab(2);
    RationalFunction even_star = parse_ratfunc("12*t^2/(1 - 9*t^2)");
    RationalFunction mu = to_measure_of_s(ab, even_star, true);
    CHECK(mu == parse_ratfunc("1/(2 - s)"));
    CHECK(mu.var() == 's');

    // without the identity the constant drops
    RationalFunction mu_no1 = to_measure_of_s(ab, even_star, false);
    CHECK(mu_no1 + parse_ratfunc("s") == mu);

    // star series must vanish at 0 and be finite there
    CHECK_THROWS_AS(to_measure_of_s(ab, parse_ratfunc("1 + t"), true), input_error);
    CHECK_THROWS_AS(to_measure_of_s(ab, parse_ratfunc("t/t^2"), true), input_error);
}

TEST_CASE("measure of the cyclic subgroup matches the direct sum") {
    // mu(<a>)(s) = s + 2 sum_k s(1-s)^k / (4*3^(k-1))
    Alphabet ab(2);
    RationalFunction mu = to_measure_of_s(ab, parse_ratfunc("2*t/(1 - t)"), true);
    MeasureParams p(ab, make_rat(1, 2));
    BigRational direct = p.s;
    Word a = parse_word("a", ab);
    for (int k = 1; k <= 60; ++k) direct += BigRational(2) * atom(p, a.pow(k));
    BigRational exact = mu.evaluate(p.s);
    // the tail beyond k=60 is below (1/6)^60
    CHECK(rat_abs(exact - direct) < rat_pow(make_rat(1, 6), 59));
    CHECK(exact == make_rat(13, 20));
}

TEST_CASE("sampling is deterministic in the seed") {
    Alphabet ab(2);
    MeasureParams p(ab, make_rat(1, 2));
    SampleBatch a = sample(p, 500, 123);
    SampleBatch b = sample(p, 500, 123);
    SampleBatch c = sample(p, 500, 124);
    REQUIRE(a.words.size() == 500);
    CHECK(a.words == b.words);
    CHECK(a.words != c.words);
    CHECK(a.seed == 123);
}

TEST_CASE("samples are reduced words") {
    Alphabet ab(3);
    MeasureParams p(ab, make_rat(1, 10));
    SampleBatch batch = sample(p, 2000, 5);
    for (const Word& w : batch.words) {
        for (size_t i = 0; i < w.length(); ++i) {
            CHECK(ab.valid(w[i]));
            if (i > 0) CHECK(w[i] != -w[i - 1]);
        }
    }
}

TEST_CASE("sampler statistics match the law") {
    Alphabet ab(2);
    MeasureParams p(ab, make_rat(1, 4));
    const size_t n = 200000;
    SampleBatch batch = sample(p, n, 2024);
    double mean = 0, ids = 0;
    for (const Word& w : batch.words) {
        mean += static_cast<double>(w.length());
        if (w.is_identity()) ids += 1;
    }
    mean /= static_cast<double>(n);
    ids /= static_cast<double>(n);
    // E L = 3, sd = sqrt(1-s)/s = 3.46; 4 sigma bands
    CHECK(std::abs(mean - 3.0) < 4 * 3.4641 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(ids - 0.25) < 4 * std::sqrt(0.25 * 0.75 / static_cast<double>(n)));
    double pval = geometric_length_pvalue(batch, p.s);
    CHECK(pval > 1e-3);
    CHECK(pval <= 1.0);
}

TEST_CASE("chi-square needs enough mass per cell") {
    Alphabet ab(2);
    MeasureParams p(ab, make_rat(1, 2));
    SampleBatch tiny = sample(p, 3, 1);
    CHECK_THROWS_AS(geometric_length_pvalue(tiny, p.s), input_error);
}

TEST_CASE("monte carlo agrees with the exact measure") {
    Alphabet ab(2);
    SubgroupGraph g = build_subgroup_graph(
        ab, {parse_word("aa", ab), parse_word("ab", ab), parse_word("bb", ab)});
    RegularSet lang = subgroup_language(g);
    RationalFunction mu = to_measure_of_s(ab, measure_subgroup(g), true);

    MeasureParams p(ab, make_rat(1, 3));
    const size_t n = 100000;
    McEstimate est = monte_carlo_measure(
        p, [&](const Word& w) { return lang.accepts(w); }, n, 77);
    CHECK(est.samples == n);
    CHECK(est.hits > 0);
    double exact = rat_to_double(mu.evaluate(p.s));
    CHECK(std::abs(est.estimate - exact) < 4 * est.stderr_);

    // the batch form sees the same words, so the same hits
    McEstimate batched = monte_carlo_measure(sample(p, n, 77),
                                             [&](const Word& w) { return lang.accepts(w); });
    CHECK(batched.hits == est.hits);
    CHECK(batched.estimate == est.estimate);
}

TEST_CASE("identity-only predicate estimates s") {
    Alphabet ab(2);
    MeasureParams p(ab, make_rat(2, 3));
    McEstimate est =
        monte_carlo_measure(p, [](const Word& w) { return w.is_identity(); }, 50000, 9);
    CHECK(std::abs(est.estimate - 2.0 / 3.0) < 4 * est.stderr_);
}

TEST_CASE("upper incomplete gamma ratio sanity") {
    // Q(1/2, x) = erfc(sqrt x): spot values
    CHECK(detail::gamma_q(0.5, 1.0) == Catch::Approx(std::erfc(1.0)).epsilon(1e-9));
    CHECK(detail::gamma_q(3.0, 0.0) == Catch::Approx(1.0));
    CHECK(detail::gamma_q(2.0, 50.0) < 1e-15);
}

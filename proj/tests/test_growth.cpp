#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "fgrow/growth.hpp"

using namespace fgrow;

namespace {

GrowthSeries even_counts() {
    return GrowthSeries::from_rational(parse_ratfunc("(1 + 3*t^2)/(1 - 9*t^2)"),
                                       SeriesKind::Counts);
}

SubgroupGraph graph_of(const Alphabet& ab, std::initializer_list<const char*> gens) {
    std::vector<Word> ws;
    for (const char* g : gens) ws.push_back(parse_word(g, ab));
    return build_subgroup_graph(ab, ws);
}

}  // namespace

TEST_CASE("growth series of sets and subgroups") {
    Alphabet ab(2);
    GrowthSeries even = growth_series(graph_of(ab, {"aa", "ab", "bb"}));
    REQUIRE(even.is_exact());
    CHECK(*even.rational == parse_ratfunc("(1 + 3*t^2)/(1 - 9*t^2)"));
    CHECK(even.prefix(6) ==
          std::vector<BigRational>{1, 0, 12, 0, 108, 0, 972});

    GrowthSeries ca = growth_series(cone(parse_word("a", ab), ab));
    CHECK(*ca.rational == parse_ratfunc("t/(1 - 3*t)"));

    GrowthSeries full = growth_series(full_group(ab));
    CHECK(*full.rational == parse_ratfunc("(1 + t)/(1 - 3*t)"));
}

TEST_CASE("truncated prefixes guard their order") {
    GrowthSeries s = GrowthSeries::from_coefficients({1, 0, 12}, SeriesKind::Counts);
    CHECK(s.order() == 2);
    CHECK(s.prefix(1) == std::vector<BigRational>{1, 0});
    CHECK_THROWS_AS(s.prefix(3), input_error);
    CHECK_THROWS_AS(GrowthSeries::from_coefficients({}, SeriesKind::Counts), input_error);
}

TEST_CASE("frequencies of exact series") {
    Alphabet ab(2);
    GrowthSeries f = frequencies(even_counts(), ab);
    REQUIRE(f.is_exact());
    CHECK(f.kind == SeriesKind::Frequencies);
    CHECK(*f.rational == parse_ratfunc("1/(1 - t^2)"));

    // full group: N = (1+t)/(1-3t) -> F = 1/(1-t)
    GrowthSeries full = GrowthSeries::from_rational(parse_ratfunc("(1 + t)/(1 - 3*t)"),
                                                    SeriesKind::Counts);
    CHECK(*frequencies(full, ab).rational == parse_ratfunc("1/(1 - t)"));
}

TEST_CASE("frequencies of truncated series match the exact ones") {
    Alphabet ab(2);
    GrowthSeries trunc = GrowthSeries::from_coefficients(even_counts().prefix(10),
                                                         SeriesKind::Counts);
    GrowthSeries f = frequencies(trunc, ab);
    CHECK_FALSE(f.is_exact());
    CHECK(f.prefix(10) == frequencies(even_counts(), ab).prefix(10));
}

TEST_CASE("cesaro averages of frequency series") {
    Alphabet ab(2);
    GrowthSeries f = frequencies(even_counts(), ab);
    // (1+0+1+...)/(2n+1): at horizon 2n the average is (n+1)/(2n+1)
    CHECK(cesaro_estimate(f, 100) == make_rat(51, 101));
    CHECK(cesaro_estimate(f, 10000) == make_rat(5001, 10001));
    CHECK(cesaro_estimate(f, 0) == 1);
}

TEST_CASE("classification of exact measures is thick or sparse") {
    Alphabet ab(2);
    GrowthReport even = classify(measure_from_frequencies(*frequencies(even_counts(), ab).rational));
    CHECK(even.classification == Classification::Thick);
    CHECK(even.certified);
    REQUIRE(even.mu0.has_value());
    CHECK(*even.mu0 == make_rat(1, 2));
    REQUIRE(even.mu1.has_value());
    CHECK(*even.mu1 == make_rat(1, 4));

    // <a>: mu(s) = (7/2 s - 1/2 s^2)/(2 + s), sparse with mu1 = 7/4
    GrowthReport gen_a = classify(parse_ratfunc("(7/2*s - 1/2*s^2)/(2 + s)"));
    CHECK(gen_a.classification == Classification::Sparse);
    CHECK(*gen_a.mu0 == 0);
    CHECK(*gen_a.mu1 == make_rat(7, 4));
    CHECK_FALSE(gen_a.mu1_infinite);
}

TEST_CASE("classification rejects non-measure inputs") {
    CHECK_THROWS_AS(classify(parse_ratfunc("2/(1 + s)")), input_error);  // value 2 at s=0
    CHECK_THROWS_AS(classify(parse_ratfunc("1/(1 - 2*s)")), input_error);  // pole at 1/2
    CHECK_THROWS_AS(classify(parse_ratfunc("1/s")), input_error);          // pole at 0
    CHECK_THROWS_AS(classify(parse_ratfunc("-s")), input_error);           // negative values
}

TEST_CASE("truncated classification heuristics") {
    const int K = 64;
    std::vector<BigRational> thick, sparse, inter, sing;
    for (int k = 0; k <= K; ++k) {
        thick.push_back(make_rat(1, 2) + rat_pow(make_rat(1, 2), static_cast<unsigned long>(k)));
        sparse.push_back(rat_pow(make_rat(1, 3), static_cast<unsigned long>(k)));
        inter.push_back(make_rat(1, k + 1));
        sing.push_back(k < K ? BigRational(0) : make_rat(1, 2));
    }
    auto report = [](std::vector<BigRational> f) {
        return classify_frequencies(
            GrowthSeries::from_coefficients(std::move(f), SeriesKind::Frequencies));
    };

    GrowthReport t = report(thick);
    CHECK(t.classification == Classification::Thick);
    CHECK_FALSE(t.certified);
    CHECK(rat_to_double(*t.mu0) > 0.4);

    GrowthReport s = report(sparse);
    CHECK(s.classification == Classification::Sparse);
    REQUIRE(s.mu1.has_value());
    CHECK(rat_to_double(*s.mu1) > 0);

    GrowthReport i = report(inter);
    CHECK(i.classification == Classification::IntermediateDensity);
    CHECK(i.mu1_infinite);

    GrowthReport g = report(sing);
    CHECK(g.classification == Classification::Singular);
}

TEST_CASE("cogrowth of exact series") {
    Alphabet ab(2);
    CogrowthResult even = cogrowth(even_counts(), ab, true);
    CHECK(even.certified);
    CHECK(even.gamma.exact());
    CHECK(even.gamma.lo == 1);
    REQUIRE(even.amenable.has_value());
    CHECK(*even.amenable);

    GrowthSeries gen_a = GrowthSeries::from_rational(parse_ratfunc("(1 + t)/(1 - t)"),
                                                     SeriesKind::Counts);
    CogrowthResult a = cogrowth(gen_a, ab, true);
    CHECK(a.gamma.lo == make_rat(1, 3));
    REQUIRE(a.amenable.has_value());
    CHECK_FALSE(*a.amenable);

    // finite sets have polynomial series: gamma = 0
    GrowthSeries fin = GrowthSeries::from_rational(parse_ratfunc("1 + 4*t"), SeriesKind::Counts);
    CogrowthResult f = cogrowth(fin, ab);
    CHECK(f.gamma.exact());
    CHECK(f.gamma.lo == 0);
    CHECK_FALSE(f.amenable.has_value());

    GrowthSeries zero = GrowthSeries::from_rational(
        RationalFunction::constant(0, 't'), SeriesKind::Counts);
    CHECK(cogrowth(zero, ab).empty);
}

TEST_CASE("cogrowth of truncated series is an uncertified estimate") {
    Alphabet ab(2);
    GrowthSeries trunc = GrowthSeries::from_coefficients(even_counts().prefix(40),
                                                         SeriesKind::Counts);
    CogrowthResult r = cogrowth(trunc, ab);
    CHECK_FALSE(r.certified);
    double est = rat_to_double(r.gamma.lo);
    CHECK(est > 0.9);
    CHECK(est < 1.1);
}

TEST_CASE("godsil transform forward on exact input") {
    Alphabet ab(2);
    GrowthSeries nstar = GrowthSeries::from_rational(parse_ratfunc("1/(1 - 16*t^2)"),
                                                     SeriesKind::MonoidCounts);
    GrowthSeries n = godsil_transform(nstar, ab, GodsilDirection::Forward);
    REQUIRE(n.is_exact());
    CHECK(*n.rational == parse_ratfunc("(1 + 3*t^2)/(1 - 9*t^2)"));
    CHECK(n.kind == SeriesKind::Counts);
}

TEST_CASE("godsil transform inverts on truncated series") {
    Alphabet ab(2);
    const int K = 16;
    GrowthSeries n = godsil_transform(even_counts(), ab, GodsilDirection::Inverse, K);
    CHECK_FALSE(n.is_exact());
    // parity: every even-length monoid word reduces to even length, so all
    // 16^j words of length 2j land in the even subgroup
    auto got = n.prefix(K);
    for (int k = 0; k <= K; ++k) {
        if (k % 2 == 1)
            CHECK(got[static_cast<size_t>(k)] == 0);
        else
            CHECK(got[static_cast<size_t>(k)] == rat_pow(BigRational(16), static_cast<unsigned long>(k / 2)));
    }
    // forward of the inverse returns the original coefficients
    GrowthSeries back = godsil_transform(n, ab, GodsilDirection::Forward);
    CHECK(back.prefix(K) == even_counts().prefix(K));
}

TEST_CASE("godsil inverse requires a truncation order on exact input") {
    Alphabet ab(2);
    CHECK_THROWS_AS(godsil_transform(even_counts(), ab, GodsilDirection::Inverse), input_error);
    CHECK_THROWS_AS(godsil_transform(even_counts(), ab, GodsilDirection::Inverse, 0),
                    input_error);
}

TEST_CASE("return frequency transform, exact and truncated") {
    Alphabet ab(2);
    // index-2 quotient: P(t) = 1/(1-t^2) maps to F(t) = 1/(1-t^2)
    GrowthSeries p = GrowthSeries::from_rational(parse_ratfunc("1/(1 - t^2)"),
                                                 SeriesKind::ReturnProbabilities);
    GrowthSeries f = return_frequency_transform(p, ab);
    REQUIRE(f.is_exact());
    CHECK(f.kind == SeriesKind::Frequencies);
    CHECK(*f.rational == parse_ratfunc("1/(1 - t^2)"));

    GrowthSeries pt = GrowthSeries::from_coefficients(p.prefix(12),
                                                      SeriesKind::ReturnProbabilities);
    GrowthSeries ft = return_frequency_transform(pt, ab, 12);
    CHECK(ft.prefix(12) == f.prefix(12));

    // pointwise double version agrees
    std::vector<double> pd;
    for (auto& c : p.prefix(400)) pd.push_back(rat_to_double(c));
    double direct = return_frequency_value(pd, ab, 0.5);
    CHECK(direct == Catch::Approx(rat_to_double(f.rational->evaluate(make_rat(1, 2))))
                        .epsilon(1e-9));
}

TEST_CASE("quenell spectra of finite quotients") {
    GrowthSeries two = quenell(parse_ratfunc("x^2 - 16", 'x').num(), 2);
    REQUIRE(two.is_exact());
    CHECK(two.kind == SeriesKind::MonoidCounts);
    CHECK(*two.rational == parse_ratfunc("1/(1 - 16*t^2)"));

    // triangle quotient with a zero eigenvalue: (3 - 16t^2)/(3(1 - 16t^2))
    GrowthSeries three = quenell(parse_ratfunc("x^3 - 16*x", 'x').num(), 3);
    CHECK(*three.rational == parse_ratfunc("(3 - 16*t^2)/(3 - 48*t^2)"));

    // trivial quotient: single eigenvalue 2m = 4
    GrowthSeries one = quenell(parse_ratfunc("x - 4", 'x').num(), 1);
    CHECK(*one.rational == parse_ratfunc("1/(1 - 4*t)"));

    CHECK_THROWS_AS(quenell(Polynomial(), 1), input_error);
    CHECK_THROWS_AS(quenell(parse_ratfunc("x^2 - 16", 'x').num(), 3), input_error);
}

TEST_CASE("quenell feeds godsil") {
    Alphabet ab(2);
    GrowthSeries nstar = quenell(parse_ratfunc("x^2 - 16", 'x').num(), 2);
    GrowthSeries n = godsil_transform(nstar, ab, GodsilDirection::Forward);
    CHECK(*n.rational == *even_counts().rational);
}

TEST_CASE("negligibility from the frequency series") {
    Alphabet ab(2);
    // <a>: F = (6 + t)/(6 - 2t), regular at 1 -> negligible
    GrowthSeries gen_a = GrowthSeries::from_rational(parse_ratfunc("(6 + t)/(6 - 2*t)"),
                                                     SeriesKind::Frequencies);
    auto neg = negligibility_of(gen_a);
    REQUIRE(neg.has_value());
    CHECK(*neg);

    // even subgroup: pole at 1 -> not negligible
    GrowthSeries even_f = frequencies(even_counts(), ab);
    auto pos = negligibility_of(even_f);
    REQUIRE(pos.has_value());
    CHECK_FALSE(*pos);

    // truncated input cannot certify either way
    GrowthSeries trunc = GrowthSeries::from_coefficients({1, 0, 1}, SeriesKind::Frequencies);
    CHECK_FALSE(negligibility_of(trunc).has_value());
}

TEST_CASE("weighted means of polynomial weights") {
    // r = z/(1-z): weights k^n summed over one word per length
    RationalFunction r = parse_ratfunc("z/(1 - z)");
    for (int n = 1; n <= 3; ++n) {
        WeightedMean wm = weighted_mean(r, n);
        CHECK(wm.pole_order == n);
    }
    WeightedMean flat = weighted_mean(parse_ratfunc("z/(1 - z/2)"), 2);
    CHECK(flat.pole_order == 0);
    CHECK_THROWS_AS(weighted_mean(r, -1), input_error);
}

TEST_CASE("generating function combinators") {
    GrowthSeries a = GrowthSeries::from_rational(parse_ratfunc("1/(1 - t)"), SeriesKind::Counts);
    GrowthSeries b = GrowthSeries::from_rational(parse_ratfunc("t/(1 - t)"), SeriesKind::Counts);

    GrowthSeries u = gf_union(a, b);
    REQUIRE(u.is_exact());
    CHECK(*u.rational == parse_ratfunc("(1 + t)/(1 - t)"));

    GrowthSeries c = gf_concat(a, b);
    CHECK(*c.rational == parse_ratfunc("t/(1 - 2*t + t^2)"));

    GrowthSeries sq = gf_square_arg(a);
    CHECK(*sq.rational == parse_ratfunc("1/(1 - t^2)"));

    // truncated operands clip to the shorter order
    GrowthSeries at = GrowthSeries::from_coefficients(a.prefix(6), SeriesKind::Counts);
    GrowthSeries bt = GrowthSeries::from_coefficients(b.prefix(4), SeriesKind::Counts);
    GrowthSeries ut = gf_union(at, bt);
    CHECK(ut.order() == 4);
    CHECK(ut.prefix(4) == u.prefix(4));
    GrowthSeries sqt = gf_square_arg(at);
    CHECK(sqt.prefix(12) == sq.prefix(12));
}

TEST_CASE("density estimates of exact frequency series") {
    // even subgroup: density oscillates between 0 and 1, upper density 1
    GrowthSeries even_f = GrowthSeries::from_rational(parse_ratfunc("1/(1 - t^2)"),
                                                      SeriesKind::Frequencies);
    DensityEstimate e = density_estimate(even_f);
    CHECK(e.certified);
    CHECK(e.value == 1);
    CHECK(e.limit_exists == std::optional<bool>(false));

    // full group: limit 1
    GrowthSeries full = GrowthSeries::from_rational(parse_ratfunc("1/(1 - t)"),
                                                    SeriesKind::Frequencies);
    DensityEstimate l = density_estimate(full);
    CHECK(l.value == 1);
    CHECK(l.limit_exists == std::optional<bool>(true));

    // <a>: frequencies vanish, density 0
    GrowthSeries gen_a = GrowthSeries::from_rational(parse_ratfunc("(6 + t)/(6 - 2*t)"),
                                                     SeriesKind::Frequencies);
    DensityEstimate z = density_estimate(gen_a);
    CHECK(z.value == 0);
    CHECK(z.limit_exists == std::optional<bool>(true));
}

TEST_CASE("density estimate rejects ill-posed inputs") {
    // pole inside the unit disk: frequencies explode
    GrowthSeries bad = GrowthSeries::from_rational(parse_ratfunc("1/(1 - 2*t)"),
                                                   SeriesKind::Frequencies);
    CHECK_THROWS_AS(density_estimate(bad), input_error);

    // repeated unit-circle pole
    GrowthSeries dbl = GrowthSeries::from_rational(parse_ratfunc("1/(1 - t)^2"),
                                                   SeriesKind::Frequencies);
    CHECK_THROWS_AS(density_estimate(dbl), input_error);
}

TEST_CASE("density estimate resource cap on huge periods") {
    // (1 + t^256)(1 + t^81 + t^162) has cyclotomic orders 512 and 243,
    // lcm 124416 > the supported period
    RationalFunction den = parse_ratfunc("(1 + t^256)*(1 + t^81 + t^162)");
    GrowthSeries f = GrowthSeries::from_rational(
        RationalFunction(Polynomial(BigRational(1)), den.num(), 't'),
        SeriesKind::Frequencies);
    CHECK_THROWS_AS(density_estimate(f), resource_error);
}

TEST_CASE("density estimate of truncated series uses the tail window") {
    std::vector<BigRational> f;
    for (int k = 0; k <= 64; ++k) f.push_back(k % 2 ? BigRational(0) : BigRational(1));
    DensityEstimate d = density_estimate(
        GrowthSeries::from_coefficients(std::move(f), SeriesKind::Frequencies));
    CHECK_FALSE(d.certified);
    CHECK(d.value == 1);

    CHECK_THROWS_AS(density_estimate(GrowthSeries::from_coefficients(
                        {1, 0, 1}, SeriesKind::Frequencies)),
                    input_error);
}

TEST_CASE("full analysis report of the even subgroup") {
    Alphabet ab(2);
    GrowthReport rep = analyze(even_counts(), ab, true);
    CHECK(rep.classification == Classification::Thick);
    CHECK(*rep.mu0 == make_rat(1, 2));
    CHECK(rep.gamma.has_value());
    CHECK(rep.gamma->lo == 1);
    REQUIRE(rep.negligible.has_value());
    CHECK_FALSE(*rep.negligible);
    CHECK(rep.certified);
}

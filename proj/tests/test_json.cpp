#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "fgrow/json_io.hpp"

using namespace fgrow;

TEST_CASE("rational json forms") {
    CHECK(rational_from_json(Json(3)) == 3);
    CHECK(rational_from_json(Json("3/4")) == make_rat(3, 4));
    CHECK(rational_from_json(Json("-2")) == -2);
    CHECK_THROWS_AS(rational_from_json(Json("x")), input_error);
    CHECK_THROWS_AS(rational_from_json(Json(1.5)), input_error);
    CHECK(rational_json(make_rat(-1, 3)) == Json("-1/3"));
    CHECK(rational_json(BigRational(5)) == Json("5"));
}

TEST_CASE("subgroup files round-trip") {
    Json j = parse_json_text(R"({"rank": 2, "generators": ["aa", "ab", "bb"]})");
    SubgroupGraph g = subgroup_from_json(j);
    CHECK(g.vertices() == 2);
    Alphabet ab(2);
    Json back = subgroup_to_json(
        ab, {parse_word("aa", ab), parse_word("ab", ab), parse_word("bb", ab)});
    SubgroupGraph g2 = subgroup_from_json(back);
    CHECK(g2.vertices() == g.vertices());
    CHECK(set_equal(subgroup_language(g), subgroup_language(g2)));
}

TEST_CASE("subgroup json validation") {
    CHECK_THROWS_AS(subgroup_from_json(parse_json_text(R"({"rank": 0, "generators": []})")),
                    input_error);
    CHECK_THROWS_AS(subgroup_from_json(parse_json_text(R"({"generators": ["a"]})")),
                    input_error);
    CHECK_THROWS_AS(subgroup_from_json(parse_json_text(R"({"rank": 2, "generators": [3]})")),
                    input_error);
}

TEST_CASE("automaton files round-trip") {
    Json j = parse_json_text(R"({
        "rank": 2, "states": 2, "initial": [0], "accept": [1],
        "identity": false,
        "edges": [[0, "a", 1], [1, "a", 1], [1, "b", 1]]
    })");
    RegularSet r = automaton_from_json(j);
    Alphabet ab(2);
    CHECK(r.accepts(parse_word("a", ab)));
    CHECK(r.accepts(parse_word("aab", ab)));
    CHECK_FALSE(r.accepts(parse_word("b", ab)));
    CHECK_FALSE(r.accepts(Word{}));

    Json back = automaton_to_json(r);
    RegularSet r2 = automaton_from_json(back);
    CHECK(set_equal(r, r2));
}

TEST_CASE("automaton json validation") {
    CHECK_THROWS_AS(
        automaton_from_json(parse_json_text(
            R"({"rank": 2, "states": 1, "initial": [0], "accept": [], "identity": false,
                "edges": [[0, "ab", 0]]})")),
        input_error);
    CHECK_THROWS_AS(
        automaton_from_json(parse_json_text(
            R"({"rank": 2, "states": 1, "initial": [5], "accept": [], "identity": false,
                "edges": []})")),
        input_error);
    // accepting a non-reduced path is rejected at normalization
    CHECK_THROWS_AS(
        automaton_from_json(parse_json_text(
            R"({"rank": 2, "states": 2, "initial": [0], "accept": [1], "identity": false,
                "edges": [[0, "a", 1], [1, "A", 1]]})")),
        input_error);
}

TEST_CASE("epsilon acceptance folds into the identity flag") {
    Json j = parse_json_text(R"({
        "rank": 2, "states": 1, "initial": [0], "accept": [0],
        "identity": false, "edges": [[0, "a", 0]]
    })");
    RegularSet r = automaton_from_json(j);
    CHECK(r.contains_identity);
    CHECK(r.accepts(parse_word("aaa", Alphabet(2))));
}

TEST_CASE("set files infer their type") {
    SetInput sub = set_from_json(parse_json_text(R"({"rank": 2, "generators": ["a"]})"));
    CHECK(sub.subgroup.has_value());
    CHECK(sub.alphabet.rank == 2);
    CHECK(sub.set.contains_identity);

    SetInput aut = set_from_json(parse_json_text(
        R"({"rank": 2, "states": 1, "initial": [0], "accept": [0], "identity": true,
            "edges": [[0, "b", 0]]})"));
    CHECK_FALSE(aut.subgroup.has_value());
    CHECK(aut.set.contains_identity);

    CHECK_THROWS_AS(set_from_json(parse_json_text(R"({"rank": 2})")), input_error);
    CHECK_THROWS_AS(set_from_json(parse_json_text(
                        R"({"type": "nonsense", "rank": 2, "generators": []})")),
                    input_error);
}

TEST_CASE("series text: exact rational form") {
    GrowthSeries s = series_from_text("(1 + 3*t^2)/(1 - 9*t^2)\n");
    REQUIRE(s.is_exact());
    CHECK(s.kind == SeriesKind::Counts);
    CHECK(s.prefix(4) == std::vector<BigRational>{1, 0, 12, 0, 108});
    CHECK_THROWS_AS(series_from_text("1 +"), input_error);
    CHECK_THROWS_AS(series_from_text(""), input_error);
}

TEST_CASE("series text: count csv") {
    GrowthSeries s = series_from_text("k,n_k\n0,1\n1,0\n2,12\n");
    CHECK_FALSE(s.is_exact());
    CHECK(s.kind == SeriesKind::Counts);
    CHECK(s.order() == 2);
    CHECK(s.coeffs == std::vector<BigRational>{1, 0, 12});

    // whitespace is tolerated, gaps are not
    CHECK_NOTHROW(series_from_text("k,n_k\n0, 1\n1, 4 \n"));
    CHECK_THROWS_AS(series_from_text("k,n_k\n0,1\n2,12\n"), input_error);
    CHECK_THROWS_AS(series_from_text("k,n_k\n0,x\n"), input_error);
    CHECK_THROWS_AS(series_from_text("k,m_k\n0,1\n"), input_error);
}

TEST_CASE("series text: frequency csv") {
    GrowthSeries s = series_from_text("k,f_k_num,f_k_den\n0,1,1\n1,1,4\n2,0,1\n");
    CHECK(s.kind == SeriesKind::Frequencies);
    CHECK(s.coeffs == std::vector<BigRational>{1, make_rat(1, 4), 0});
    CHECK_THROWS_AS(series_from_text("k,f_k_num,f_k_den\n0,1\n"), input_error);
}

TEST_CASE("csv writer round-trips") {
    std::ostringstream out;
    write_series_csv(out, {1, 0, 12}, SeriesKind::Counts);
    GrowthSeries s = series_from_text(out.str());
    CHECK(s.coeffs == std::vector<BigRational>{1, 0, 12});

    std::ostringstream fo;
    write_series_csv(fo, {1, make_rat(2, 27)}, SeriesKind::Frequencies);
    GrowthSeries f = series_from_text(fo.str());
    CHECK(f.kind == SeriesKind::Frequencies);
    CHECK(f.coeffs == std::vector<BigRational>{1, make_rat(2, 27)});

    // integer kinds refuse fractional coefficients
    std::ostringstream bad;
    CHECK_THROWS_AS(write_series_csv(bad, {make_rat(1, 2)}, SeriesKind::Counts),
                    internal_error);
}

TEST_CASE("report json shape") {
    GrowthReport rep;
    rep.classification = Classification::Thick;
    rep.certified = true;
    rep.mu0 = make_rat(1, 2);
    rep.mu1 = make_rat(1, 4);
    rep.negligible = false;
    Json j = report_json(rep);
    CHECK(j["classification"] == "Thick");
    CHECK(j["certified"] == true);
    CHECK(j["mu0"] == "1/2");
    CHECK(j["mu1"] == "1/4");
    CHECK(j["negligible"] == false);
    CHECK(j["gamma"].is_null());

    GrowthReport inf;
    inf.classification = Classification::IntermediateDensity;
    inf.mu1_infinite = true;
    Json ji = report_json(inf);
    CHECK(ji["mu1"] == "inf");
    CHECK(ji["negligible"] == "unknown");
}

TEST_CASE("cogrowth json shape") {
    CogrowthResult r;
    r.gamma = RatInterval{make_rat(1, 3), make_rat(1, 3)};
    r.certified = true;
    Json j = cogrowth_json(r);
    CHECK(j["gamma"]["lo"] == "1/3");
    CHECK(j["gamma"]["exact"] == true);
    CHECK(j["certified"] == true);
    CHECK_FALSE(j.contains("amenable"));

    r.amenable = false;
    CHECK(cogrowth_json(r)["amenable"] == false);
}

TEST_CASE("malformed json is an input error") {
    CHECK_THROWS_AS(parse_json_text("{"), input_error);
    CHECK_THROWS_AS(parse_json_text(""), input_error);
    CHECK_THROWS_AS(read_text_file("/nonexistent/file.json"), input_error);
}

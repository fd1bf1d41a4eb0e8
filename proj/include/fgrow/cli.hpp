#pragma once

// Command-line front end.  Every command is deterministic given its inputs
// and seed; rationals print exactly, JSON keys are sorted, CSV output uses
// the same format the series loader accepts.
//
// Exit codes: 0 ok, 1 input/parse error, 2 resource cap, 3 internal
// invariant violation.  FGROW_ORACLE_CAP overrides the enumeration budget.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fgrow/growth.hpp"
#include "fgrow/json_io.hpp"
#include "fgrow/measure.hpp"
#include "fgrow/oracle.hpp"
#include "fgrow/stallings.hpp"

namespace fgrow {

namespace cli_detail {

inline std::string fmt_double(double v, int prec = 6) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(prec) << v;
    return ss.str();
}

// "p/q", integer, or plain decimal ("0.25" -> 1/4), all exact
inline BigRational parse_rational_text(const std::string& t) {
    if (t.empty()) throw input_error("empty number");
    if (t.find('/') != std::string::npos || t.find('.') == std::string::npos)
        return rat_from_string(t);
    size_t dot = t.find('.');
    std::string head = t.substr(0, dot), tail = t.substr(dot + 1);
    bool neg = !head.empty() && head[0] == '-';
    if (neg || (!head.empty() && head[0] == '+')) head = head.substr(1);
    if (head.empty()) head = "0";
    if (tail.empty()) tail = "0";
    for (char c : head + tail)
        if (c < '0' || c > '9') throw input_error("bad decimal number: " + t);
    BigInt num(head + tail, 10);  // base must be explicit: "025" is octal otherwise
    BigInt den = int_pow(BigInt(10), static_cast<unsigned long>(tail.size()));
    BigRational q = make_rat(num, den);
    return neg ? BigRational(-q) : q;
}

inline long long oracle_cap() {
    const char* env = std::getenv("FGROW_ORACLE_CAP");
    if (!env) return kDefaultOracleCap;
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end == env || *end != '\0' || v <= 0)
        throw input_error("FGROW_ORACLE_CAP must be a positive integer");
    return v;
}

inline bool looks_like_json(const std::string& text) {
    size_t i = text.find_first_not_of(" \t\r\n");
    return i != std::string::npos && text[i] == '{';
}

enum class SetFilter { Any, SubgroupOnly, AutomatonOnly };

inline SetInput load_set_checked(const std::string& path, SetFilter filter) {
    SetInput in = load_set_file(path);
    if (filter == SetFilter::SubgroupOnly && !in.subgroup)
        throw input_error("file does not describe a subgroup: " + path);
    if (filter == SetFilter::AutomatonOnly && in.subgroup)
        throw input_error("file describes a subgroup, not an automaton: " + path);
    return in;
}

// set file -> exact count series; CSV/text series file -> as written
struct SeriesInput {
    GrowthSeries series = GrowthSeries::from_coefficients({BigRational(0)}, SeriesKind::Counts);
    std::optional<Alphabet> alphabet;  // known only for set files
};

inline SeriesInput load_series_input(const std::string& path) {
    std::string text = read_text_file(path);
    SeriesInput si;
    if (looks_like_json(text)) {
        SetInput in = set_from_json(parse_json_text(text));
        si.series = growth_series(in.set);
        si.alphabet = in.alphabet;
    } else {
        si.series = series_from_text(text);
    }
    return si;
}

inline Alphabet resolve_alphabet(const SeriesInput& si, int rank_flag) {
    if (si.alphabet) {
        if (rank_flag > 0 && rank_flag != si.alphabet->rank)
            throw input_error("--rank contradicts the rank in the set file");
        return *si.alphabet;
    }
    if (rank_flag <= 0) throw input_error("series input needs --rank");
    return Alphabet(rank_flag);
}

inline void print_series(std::ostream& out, const GrowthSeries& s, int maxk) {
    if (s.is_exact()) {
        out << format_ratfunc(*s.rational) << "\n";
        return;
    }
    int K = s.order();
    if (maxk >= 0) K = std::min(K, maxk);
    write_series_csv(out, s.prefix(K), s.kind);
}

// --- command bodies ------------------------------------------------------------

inline void cmd_measure(std::ostream& out, const std::string& path, SetFilter filter,
                        const std::string& s_text) {
    SetInput in = load_set_checked(path, filter);
    RationalFunction mustar = measure_star_regular(in.set.dfa);
    RationalFunction mu = to_measure_of_s(in.alphabet, mustar, in.set.contains_identity);
    out << "mu_star: " << format_ratfunc(mustar) << "\n";
    out << "mu_of_s: " << format_ratfunc(mu) << "\n";
    if (in.subgroup) {
        auto idx = subgroup_index(*in.subgroup);
        out << "index: " << (idx ? std::to_string(*idx) : std::string("infinite")) << "\n";
    }
    if (!s_text.empty()) {
        MeasureParams p(in.alphabet, parse_rational_text(s_text));
        BigRational v = mu.evaluate(p.s);
        out << "s: " << rat_to_string(p.s) << "\n";
        out << "mu_at_s: " << rat_to_string(v) << "\n";
        out << "mu_at_s_decimal: " << fmt_double(rat_to_double(v)) << "\n";
    }
}

inline void cmd_series(std::ostream& out, const std::string& path, SetFilter filter, int maxk,
                       bool freq) {
    if (maxk < 0) throw input_error("--max-k is required");
    SetInput in = load_set_checked(path, filter);
    GrowthSeries n = growth_series(in.set);
    if (freq) {
        GrowthSeries f = frequencies(n, in.alphabet);
        write_series_csv(out, f.prefix(maxk), SeriesKind::Frequencies);
    } else {
        write_series_csv(out, n.prefix(maxk), SeriesKind::Counts);
    }
}

inline void cmd_classify(std::ostream& out, const std::string& path, int rank_flag) {
    SeriesInput si = load_series_input(path);
    GrowthReport rep;
    if (si.series.kind == SeriesKind::Frequencies) {
        rep = classify_frequencies(si.series);
        if (si.series.is_exact()) rep.negligible = negligibility_of(si.series);
    } else {
        Alphabet ab = resolve_alphabet(si, rank_flag);
        rep = analyze(si.series, ab);
    }
    out << report_json(rep).dump(2) << "\n";
}

inline void cmd_cogrowth(std::ostream& out, const std::string& path, int rank_flag, bool normal) {
    SeriesInput si = load_series_input(path);
    if (si.series.kind == SeriesKind::Frequencies)
        throw input_error("cogrowth needs a count series (n_k), not frequencies");
    Alphabet ab = resolve_alphabet(si, rank_flag);
    out << cogrowth_json(cogrowth(si.series, ab, normal)).dump(2) << "\n";
}

inline void cmd_transform_godsil(std::ostream& out, const std::string& path, int rank_flag,
                                 bool inverse, int maxk) {
    SeriesInput si = load_series_input(path);
    Alphabet ab = resolve_alphabet(si, rank_flag);
    GrowthSeries res = godsil_transform(
        si.series, ab, inverse ? GodsilDirection::Inverse : GodsilDirection::Forward, maxk);
    print_series(out, res, -1);
}

inline void cmd_transform_retfreq(std::ostream& out, const std::string& path, int rank_flag,
                                  int maxk) {
    SeriesInput si = load_series_input(path);
    Alphabet ab = resolve_alphabet(si, rank_flag);
    print_series(out, return_frequency_transform(si.series, ab, maxk), -1);
}

inline void cmd_transform_quenell(std::ostream& out, const std::string& path) {
    Json j = parse_json_text(read_text_file(path));
    if (!j.contains("charpoly") || !j["charpoly"].is_string())
        throw input_error("quenell input needs a \"charpoly\" string");
    if (!j.contains("index") || !j["index"].is_number_integer())
        throw input_error("quenell input needs an integer \"index\"");
    RationalFunction f = parse_ratfunc(j["charpoly"].get<std::string>(), 'x');
    if (!f.is_poly()) throw input_error("characteristic polynomial must be a polynomial");
    GrowthSeries ns = quenell(f.num(), j["index"].get<long>());
    out << format_ratfunc(*ns.rational) << "\n";
}

inline void cmd_sample(std::ostream& out, int rank, const std::string& s_text, size_t nsamples,
                       uint64_t seed, bool stats_only) {
    if (rank <= 0) throw input_error("--rank is required");
    if (s_text.empty()) throw input_error("--s is required");
    Alphabet ab(rank);
    MeasureParams p(ab, parse_rational_text(s_text));
    SampleBatch batch = sample(p, nsamples, seed);
    if (!stats_only)
        for (const Word& w : batch.words) out << format_word(w, ab) << "\n";
    size_t total = 0, ids = 0;
    for (const Word& w : batch.words) {
        total += w.length();
        if (w.is_identity()) ++ids;
    }
    double n = static_cast<double>(nsamples);
    out << "samples: " << nsamples << "\n";
    out << "seed: " << seed << "\n";
    out << "mean_length: " << fmt_double(nsamples ? static_cast<double>(total) / n : 0.0) << "\n";
    out << "expected_length: " << fmt_double(rat_to_double((1 - p.s) / p.s)) << "\n";
    out << "identity_fraction: " << fmt_double(nsamples ? static_cast<double>(ids) / n : 0.0)
        << "\n";
    out << "expected_identity_fraction: " << fmt_double(rat_to_double(p.s)) << "\n";
    std::string pv = "n/a";  // needs enough samples to bin lengths
    try {
        pv = fmt_double(geometric_length_pvalue(batch, p.s), 4);
    } catch (const input_error&) {
    }
    out << "length_chi2_p: " << pv << "\n";
}

inline void cmd_mc_measure(std::ostream& out, const std::string& path, const std::string& s_text,
                           size_t nsamples, uint64_t seed) {
    if (s_text.empty()) throw input_error("--s is required");
    SetInput in = load_set_file(path);
    MeasureParams p(in.alphabet, parse_rational_text(s_text));
    McEstimate est = monte_carlo_measure(
        p, [&](const Word& w) { return in.set.accepts(w); }, nsamples, seed);
    RationalFunction mu =
        to_measure_of_s(in.alphabet, measure_star_regular(in.set.dfa), in.set.contains_identity);
    BigRational exact = mu.evaluate(p.s);
    double ex = rat_to_double(exact);
    out << "estimate: " << fmt_double(est.estimate) << "\n";
    out << "stderr: " << fmt_double(est.stderr_) << "\n";
    out << "hits: " << est.hits << "\n";
    out << "samples: " << est.samples << "\n";
    out << "exact: " << rat_to_string(exact) << "\n";
    out << "exact_decimal: " << fmt_double(ex) << "\n";
    double z = est.stderr_ > 0 ? (est.estimate - ex) / est.stderr_ : 0.0;
    out << "z: " << fmt_double(z, 3) << "\n";
}

inline void cmd_oracle_count(std::ostream& out, const std::string& path, int maxk, bool monoid) {
    if (maxk < 0) throw input_error("--max-k is required");
    SetInput in = load_set_file(path);
    long long cap = oracle_cap();
    std::vector<BigInt> counts;
    if (in.subgroup)
        counts = monoid ? count_monoid_preimage(*in.subgroup, maxk, cap)
                        : count_reduced(*in.subgroup, maxk, cap);
    else
        counts = monoid ? count_monoid_preimage(in.set, maxk, cap)
                        : count_reduced(in.set, maxk, cap);
    std::vector<BigRational> coeffs(counts.begin(), counts.end());
    write_series_csv(out, coeffs, SeriesKind::Counts);
}

inline void cmd_cesaro(std::ostream& out, const std::string& path, int horizon) {
    SeriesInput si = load_series_input(path);
    int H = horizon;
    if (H < 0) {
        if (si.series.is_exact()) throw input_error("exact series input needs --n");
        H = si.series.order();
    }
    BigRational v = cesaro_estimate(si.series, H);
    out << "n: " << H << "\n";
    out << "cesaro: " << rat_to_string(v) << "\n";
    out << "cesaro_decimal: " << fmt_double(rat_to_double(v)) << "\n";
}

}  // namespace cli_detail

inline int run_cli(int argc, const char* const* argv) {
    using namespace cli_detail;
    std::ostream& out = std::cout;

    CLI::App app{"exact measures, growth series and classifications of subsets of free groups"};
    app.require_subcommand(1);

    std::string path, s_text;
    int rank = 0, maxk = -1, horizon = -1;
    size_t nsamples = 0;
    uint64_t seed = 0;
    bool normal = false, inverse = false, freq = false, monoid = false, stats_only = false;

    auto* measure = app.add_subcommand("measure", "exact measure of a subgroup or regular set");
    measure->require_subcommand(1);
    for (auto [name, filter] : {std::pair{"subgroup", SetFilter::SubgroupOnly},
                                std::pair{"automaton", SetFilter::AutomatonOnly}}) {
        auto* sub = measure->add_subcommand(name, std::string("measure a ") + name + " file");
        sub->add_option("file", path, "set file (JSON)")->required();
        sub->add_option("--s", s_text, "evaluate the measure at s (rational or decimal)");
        SetFilter f = filter;
        sub->callback([&, f] { cmd_measure(out, path, f, s_text); });
    }

    auto* series = app.add_subcommand("series", "growth and frequency series as CSV");
    series->require_subcommand(1);
    for (auto [name, filter] : {std::pair{"subgroup", SetFilter::SubgroupOnly},
                                std::pair{"automaton", SetFilter::AutomatonOnly}}) {
        auto* sub = series->add_subcommand(name, std::string("series of a ") + name + " file");
        sub->add_option("file", path, "set file (JSON)")->required();
        sub->add_option("--max-k", maxk, "largest k to emit")->required();
        sub->add_flag("--frequencies", freq, "emit f_k instead of n_k");
        SetFilter f = filter;
        sub->callback([&, f] { cmd_series(out, path, f, maxk, freq); });
    }

    auto* classify = app.add_subcommand("classify", "thick/sparse classification report (JSON)");
    classify->add_option("file", path, "set file, or series file (CSV/rational)")->required();
    classify->add_option("--rank", rank, "free group rank (series input only)");
    classify->callback([&] { cmd_classify(out, path, rank); });

    auto* cog = app.add_subcommand("cogrowth", "relative growth rate gamma");
    cog->add_option("file", path, "set file, or count series file")->required();
    cog->add_option("--rank", rank, "free group rank (series input only)");
    cog->add_flag("--normal", normal, "input is a normal subgroup: report amenability");
    cog->callback([&] { cmd_cogrowth(out, path, rank, normal); });

    auto* tf = app.add_subcommand("transform", "series transforms");
    tf->require_subcommand(1);
    auto* godsil = tf->add_subcommand("godsil", "free counts B <-> reduced counts N");
    godsil->add_option("file", path, "series file or set file")->required();
    godsil->add_option("--rank", rank, "free group rank (series input only)");
    godsil->add_flag("--inverse", inverse, "recover B from N (truncated)");
    godsil->add_option("--max-k", maxk, "truncation order");
    godsil->callback([&] { cmd_transform_godsil(out, path, rank, inverse, maxk); });
    auto* rf = tf->add_subcommand("return-frequency", "return probabilities P -> frequencies F");
    rf->add_option("file", path, "series file")->required();
    rf->add_option("--rank", rank, "free group rank (series input only)");
    rf->add_option("--max-k", maxk, "truncation order");
    rf->callback([&] { cmd_transform_retfreq(out, path, rank, maxk); });
    auto* qn = tf->add_subcommand("quenell", "N*(t) from a quotient spectrum");
    qn->add_option("file", path, "JSON {\"charpoly\": \"...\", \"index\": n}")->required();
    qn->callback([&] { cmd_transform_quenell(out, path); });

    auto* smp = app.add_subcommand("sample", "draw random words from W_s");
    smp->add_option("--rank", rank, "free group rank")->required();
    smp->add_option("--s", s_text, "stopping probability in (0,1)")->required();
    smp->add_option("--samples", nsamples, "number of words")->default_val(1000);
    smp->add_option("--seed", seed, "RNG seed")->default_val(0);
    smp->add_flag("--stats-only", stats_only, "suppress the word listing");
    smp->callback([&] { cmd_sample(out, rank, s_text, nsamples, seed, stats_only); });

    auto* mc = app.add_subcommand("mc-measure", "Monte-Carlo estimate of mu_s of a set");
    mc->add_option("file", path, "set file (JSON)")->required();
    mc->add_option("--s", s_text, "stopping probability in (0,1)")->required();
    mc->add_option("--samples", nsamples, "number of words")->default_val(100000);
    mc->add_option("--seed", seed, "RNG seed")->default_val(0);
    mc->callback([&] { cmd_mc_measure(out, path, s_text, nsamples, seed); });

    auto* orc = app.add_subcommand("oracle", "brute-force reference counts");
    orc->require_subcommand(1);
    auto* oc = orc->add_subcommand("count", "exhaustive n_k (or n*_k) counts");
    oc->add_option("file", path, "set file (JSON)")->required();
    oc->add_option("--max-k", maxk, "largest k to count")->required();
    oc->add_flag("--monoid", monoid, "count free-monoid words by their reduction");
    oc->callback([&] { cmd_oracle_count(out, path, maxk, monoid); });

    auto* ces = app.add_subcommand("cesaro", "partial Cesaro average of a series");
    ces->add_option("file", path, "series file")->required();
    ces->add_option("--n", horizon, "horizon (defaults to the truncation order)");
    ces->callback([&] { cmd_cesaro(out, path, horizon); });

    try {
        app.parse(argc, argv);
        return 0;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 2;
    } catch (const internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::bad_alloc&) {
        std::cerr << "resource error: out of memory\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}

inline int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("fgrow");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace fgrow

#pragma once

// File formats: subgroup and automaton JSON, the unified set file with a
// "type" discriminator, series files (CSV of coefficients, or one rational
// function in the text grammar), and JSON rendering of results.  Rationals
// serialize as strings "p/q" so nothing is ever rounded.

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fgrow/automata.hpp"
#include "fgrow/growth.hpp"
#include "fgrow/stallings.hpp"

namespace fgrow {

using Json = nlohmann::json;

inline Json rational_json(const BigRational& q) { return rat_to_string(q); }

inline BigRational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return BigRational(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    throw input_error("expected a rational (integer or \"p/q\" string)");
}

namespace detail {

inline const Json& field(const Json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw input_error(std::string("missing field \"") + name + "\"");
    return *it;
}

inline int int_field(const Json& j, const char* name) {
    const Json& v = field(j, name);
    if (!v.is_number_integer()) throw input_error(std::string("field \"") + name + "\" must be an integer");
    return v.get<int>();
}

}  // namespace detail

// --- subgroup files -----------------------------------------------------------

// {"rank": m, "generators": ["ab", "aBa", ...]}
inline SubgroupGraph subgroup_from_json(const Json& j) {
    Alphabet ab(detail::int_field(j, "rank"));
    const Json& gens = detail::field(j, "generators");
    if (!gens.is_array()) throw input_error("\"generators\" must be an array of words");
    std::vector<Word> ws;
    for (const Json& g : gens) {
        if (!g.is_string()) throw input_error("generators must be strings");
        ws.push_back(parse_word(g.get<std::string>(), ab));
    }
    return build_subgroup_graph(ab, ws);
}

inline Json subgroup_to_json(const Alphabet& ab, const std::vector<Word>& generators) {
    Json j;
    j["type"] = "subgroup";
    j["rank"] = ab.rank;
    Json arr = Json::array();
    for (const Word& w : generators) arr.push_back(format_word(w, ab));
    j["generators"] = std::move(arr);
    return j;
}

// --- automaton files ----------------------------------------------------------

// {"rank": m, "states": n, "initial": [...], "accept": [...], "identity": b,
//  "edges": [[from, "x", to], ...]} — possibly nondeterministic (several
// initial states, parallel edges); determinized here by subset construction.
inline RegularSet automaton_from_json(const Json& j) {
    Alphabet ab(detail::int_field(j, "rank"));
    int nstates = detail::int_field(j, "states");
    if (nstates < 0) throw input_error("negative state count");
    const Json& jinit = detail::field(j, "initial");
    const Json& jacc = detail::field(j, "accept");
    const Json& jedges = detail::field(j, "edges");
    if (!jinit.is_array() || !jacc.is_array() || !jedges.is_array())
        throw input_error("\"initial\", \"accept\" and \"edges\" must be arrays");
    bool identity = false;
    if (auto it = j.find("identity"); it != j.end()) {
        if (!it->is_boolean()) throw input_error("\"identity\" must be a boolean");
        identity = it->get<bool>();
    }

    auto check_state = [&](const Json& v) {
        if (!v.is_number_integer()) throw input_error("state ids must be integers");
        int q = v.get<int>();
        if (q < 0 || q >= nstates) throw input_error("state id out of range");
        return q;
    };

    std::set<int> initial;
    for (const Json& v : jinit) initial.insert(check_state(v));
    if (initial.empty()) throw input_error("automaton needs at least one initial state");
    std::vector<char> accept(static_cast<size_t>(nstates), 0);
    for (const Json& v : jacc) accept[static_cast<size_t>(check_state(v))] = 1;

    std::vector<std::map<Letter, std::set<int>>> arrows(static_cast<size_t>(nstates));
    for (const Json& e : jedges) {
        if (!e.is_array() || e.size() != 3) throw input_error("edges must be [from, \"letter\", to]");
        int from = check_state(e[0]);
        if (!e[1].is_string()) throw input_error("edge labels must be strings");
        Word lw = parse_word(e[1].get<std::string>(), ab);
        if (lw.length() != 1) throw input_error("edge labels must be single letters");
        int to = check_state(e[2]);
        arrows[static_cast<size_t>(from)][lw[0]].insert(to);
    }

    // subset construction
    const auto letters = ordered_letters(ab);
    Dfa d(ab);
    std::map<std::set<int>, int> id;
    std::vector<std::set<int>> order;
    auto get = [&](const std::set<int>& s) {
        auto it = id.find(s);
        if (it != id.end()) return it->second;
        bool acc = false;
        for (int q : s) acc = acc || accept[static_cast<size_t>(q)];
        int n = d.add_state(acc);
        id.emplace(s, n);
        order.push_back(s);
        return n;
    };
    d.initial = get(initial);
    for (size_t i = 0; i < order.size(); ++i) {
        std::set<int> cur = order[i];  // copy: order grows as we go
        int from = id[cur];
        for (Letter x : letters) {
            std::set<int> tgt;
            for (int q : cur) {
                auto it = arrows[static_cast<size_t>(q)].find(x);
                if (it != arrows[static_cast<size_t>(q)].end())
                    tgt.insert(it->second.begin(), it->second.end());
            }
            if (!tgt.empty()) d.next[static_cast<size_t>(from)][x] = get(tgt);
        }
    }

    // an accepting initial state is another way of writing the empty word
    bool eps = false;
    for (int q : initial) eps = eps || accept[static_cast<size_t>(q)];
    return RegularSet{normalize_reduced_form(d), identity || eps};
}

inline Json automaton_to_json(const RegularSet& r) {
    Json j;
    j["type"] = "automaton";
    j["rank"] = r.dfa.alphabet.rank;
    j["states"] = r.dfa.states();
    j["initial"] = Json::array({0});
    Json acc = Json::array();
    for (int q = 0; q < r.dfa.states(); ++q)
        if (r.dfa.accept[static_cast<size_t>(q)]) acc.push_back(q);
    j["accept"] = std::move(acc);
    j["identity"] = r.contains_identity;
    Json edges = Json::array();
    for (int q = 0; q < r.dfa.states(); ++q)
        for (const auto& [x, p] : r.dfa.next[static_cast<size_t>(q)])
            edges.push_back(Json::array({q, format_word(Word::letter(x), r.dfa.alphabet), p}));
    j["edges"] = std::move(edges);
    return j;
}

// --- unified set files ----------------------------------------------------------

struct SetInput {
    Alphabet alphabet{1};
    RegularSet set{Alphabet(1)};            // always populated
    std::optional<SubgroupGraph> subgroup;  // present only for subgroup files
};

inline SetInput set_from_json(const Json& j) {
    if (!j.is_object()) throw input_error("set file must be a JSON object");
    std::string type;
    if (auto it = j.find("type"); it != j.end()) {
        if (!it->is_string()) throw input_error("\"type\" must be a string");
        type = it->get<std::string>();
    } else if (j.contains("generators")) {
        type = "subgroup";
    } else if (j.contains("edges")) {
        type = "automaton";
    } else {
        throw input_error("cannot tell subgroup from automaton: add a \"type\" field");
    }
    SetInput in;
    if (type == "subgroup") {
        SubgroupGraph g = subgroup_from_json(j);
        in.alphabet = g.alphabet;
        in.set = subgroup_language(g);
        in.subgroup = std::move(g);
    } else if (type == "automaton") {
        in.set = automaton_from_json(j);
        in.alphabet = in.set.dfa.alphabet;
    } else {
        throw input_error("unknown set type \"" + type + "\"");
    }
    return in;
}

inline Json parse_json_text(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw input_error("malformed JSON");
    return j;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline SetInput load_set_file(const std::string& path) {
    return set_from_json(parse_json_text(read_text_file(path)));
}

// --- series files -----------------------------------------------------------------

// CSV form: header "k,n_k" (integer counts) or "k,f_k_num,f_k_den"
// (rationals), rows k = 0,1,2,...  Non-CSV files hold one rational function
// in the text grammar and load as an exact series.
inline GrowthSeries series_from_text(const std::string& text, char var = 't',
                                     SeriesKind exact_kind = SeriesKind::Counts) {
    std::istringstream in(text);
    std::string first;
    while (std::getline(in, first)) {
        // skip blank leading lines
        if (first.find_first_not_of(" \t\r") != std::string::npos) break;
        first.clear();
    }
    auto strip = [](std::string s) {
        size_t a = s.find_first_not_of(" \t\r");
        size_t b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string header = strip(first);
    bool csv = header.rfind("k,", 0) == 0;
    if (!csv)
        return GrowthSeries::from_rational(parse_ratfunc(text, var), exact_kind);

    bool freq;
    if (header == "k,n_k")
        freq = false;
    else if (header == "k,f_k_num,f_k_den")
        freq = true;
    else
        throw input_error("series CSV header must be \"k,n_k\" or \"k,f_k_num,f_k_den\"");

    std::vector<BigRational> coeffs;
    std::string line;
    int expect = 0;
    while (std::getline(in, line)) {
        line = strip(line);
        if (line.empty()) continue;
        std::vector<std::string> cells;
        size_t pos = 0;
        while (true) {
            size_t c = line.find(',', pos);
            cells.push_back(strip(line.substr(pos, c - pos)));
            if (c == std::string::npos) break;
            pos = c + 1;
        }
        if (cells.size() != (freq ? 3u : 2u)) throw input_error("bad series row: " + line);
        try {
            if (std::stoi(cells[0]) != expect)
                throw input_error("series rows must run k = 0,1,2,... without gaps");
            if (freq) {
                BigInt num(cells[1]), den(cells[2]);
                coeffs.push_back(make_rat(num, den));
            } else {
                coeffs.push_back(BigRational(BigInt(cells[1])));
            }
        } catch (const std::invalid_argument&) {
            throw input_error("bad number in series row: " + line);
        } catch (const std::out_of_range&) {
            throw input_error("bad number in series row: " + line);
        }
        ++expect;
    }
    if (coeffs.empty()) throw input_error("series file has no rows");
    return GrowthSeries::from_coefficients(std::move(coeffs),
                                           freq ? SeriesKind::Frequencies : SeriesKind::Counts);
}

inline GrowthSeries load_series_file(const std::string& path, char var = 't',
                                     SeriesKind exact_kind = SeriesKind::Counts) {
    return series_from_text(read_text_file(path), var, exact_kind);
}

inline bool integer_series_kind(SeriesKind k) {
    return k == SeriesKind::Counts || k == SeriesKind::PathCounts || k == SeriesKind::MonoidCounts;
}

inline void write_series_csv(std::ostream& out, const std::vector<BigRational>& coeffs,
                             SeriesKind kind) {
    if (integer_series_kind(kind)) {
        out << "k,n_k\n";
        for (size_t k = 0; k < coeffs.size(); ++k) {
            if (coeffs[k].get_den() != 1)
                throw internal_error("count series with a non-integer coefficient");
            out << k << ',' << coeffs[k].get_num().get_str() << '\n';
        }
        return;
    }
    out << "k,f_k_num,f_k_den\n";
    for (size_t k = 0; k < coeffs.size(); ++k)
        out << k << ',' << coeffs[k].get_num().get_str() << ','
            << coeffs[k].get_den().get_str() << '\n';
}

// --- result rendering --------------------------------------------------------------

inline Json interval_json(const RatInterval& iv) {
    Json j;
    j["lo"] = rational_json(iv.lo);
    j["hi"] = rational_json(iv.hi);
    j["exact"] = iv.exact();
    return j;
}

inline Json report_json(const GrowthReport& rep) {
    Json j;
    j["classification"] = classification_name(rep.classification);
    j["certified"] = rep.certified;
    j["mu0"] = rep.mu0 ? rational_json(*rep.mu0) : Json(nullptr);
    if (rep.mu1_infinite)
        j["mu1"] = "inf";
    else
        j["mu1"] = rep.mu1 ? rational_json(*rep.mu1) : Json(nullptr);
    j["gamma"] = rep.gamma ? interval_json(*rep.gamma) : Json(nullptr);
    if (rep.negligible)
        j["negligible"] = *rep.negligible;
    else
        j["negligible"] = "unknown";
    if (rep.mu_of_s) j["mu_of_s"] = format_ratfunc(*rep.mu_of_s);
    return j;
}

inline Json cogrowth_json(const CogrowthResult& c) {
    Json j;
    j["gamma"] = interval_json(c.gamma);
    j["certified"] = c.certified;
    j["empty"] = c.empty;
    if (c.amenable) j["amenable"] = *c.amenable;
    return j;
}

}  // namespace fgrow

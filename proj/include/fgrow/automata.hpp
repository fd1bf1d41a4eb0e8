#pragma once

// Finite automata over the free-group alphabet, recognizing sets of freely
// reduced words. Two layers:
//   - Dfa: plain deterministic partial automaton (internal workhorse for
//     products, minimization, equality),
//   - ReducedDfa: the normalized form used by the measure computation.
//     Each non-initial state is typed by the unique letter on its incoming
//     arrows, the initial state has no incoming arrows and is not accepting,
//     and no state exits through the inverse of its type. On such a machine
//     every accepted word corresponds to exactly one run, and runs spell
//     freely reduced words, so path counting equals word counting.
// Languages never contain the empty word; membership of the identity is a
// separate flag on RegularSet.

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fgrow/poly_matrix.hpp"
#include "fgrow/rng.hpp"
#include "fgrow/words.hpp"

namespace fgrow {

// canonical letter order: x1, x1^-1, x2, x2^-1, ...
inline int letter_rank(Letter x) { return 2 * (std::abs(x) - 1) + (x < 0 ? 1 : 0); }

inline std::vector<Letter> ordered_letters(const Alphabet& ab) {
    std::vector<Letter> out;
    for (int i = 1; i <= ab.rank; ++i) {
        out.push_back(i);
        out.push_back(-i);
    }
    return out;
}

struct Dfa {
    Alphabet ab;
    int initial = 0;
    std::vector<std::map<Letter, int>> next;
    std::vector<char> accept;

    explicit Dfa(const Alphabet& a) : ab(a) {}
    int states() const { return static_cast<int>(next.size()); }
    int add_state(bool acc = false) {
        next.emplace_back();
        accept.push_back(acc ? 1 : 0);
        return states() - 1;
    }
    int step(int q, Letter x) const {  // -1 when undefined
        auto it = next[static_cast<size_t>(q)].find(x);
        return it == next[static_cast<size_t>(q)].end() ? -1 : it->second;
    }
    bool accepts(const Word& w) const {
        int q = initial;
        for (Letter x : w.letters()) {
            q = step(q, x);
            if (q < 0) return false;
        }
        return accept[static_cast<size_t>(q)] != 0;
    }
};

// --- internal Dfa algorithms -----------------------------------------------

inline Dfa dfa_trim(const Dfa& d) {
    const int n = d.states();
    std::vector<char> reach(static_cast<size_t>(n), 0);
    std::queue<int> bfs;
    bfs.push(d.initial);
    reach[static_cast<size_t>(d.initial)] = 1;
    while (!bfs.empty()) {
        int q = bfs.front();
        bfs.pop();
        for (const auto& [x, r] : d.next[static_cast<size_t>(q)])
            if (!reach[static_cast<size_t>(r)]) {
                reach[static_cast<size_t>(r)] = 1;
                bfs.push(r);
            }
    }
    // co-reachable via reverse edges
    std::vector<std::vector<int>> rev(static_cast<size_t>(n));
    for (int q = 0; q < n; ++q)
        for (const auto& [x, r] : d.next[static_cast<size_t>(q)]) rev[static_cast<size_t>(r)].push_back(q);
    std::vector<char> live(static_cast<size_t>(n), 0);
    for (int q = 0; q < n; ++q)
        if (d.accept[static_cast<size_t>(q)] && reach[static_cast<size_t>(q)]) {
            live[static_cast<size_t>(q)] = 1;
            bfs.push(q);
        }
    while (!bfs.empty()) {
        int q = bfs.front();
        bfs.pop();
        for (int p : rev[static_cast<size_t>(q)])
            if (reach[static_cast<size_t>(p)] && !live[static_cast<size_t>(p)]) {
                live[static_cast<size_t>(p)] = 1;
                bfs.push(p);
            }
    }
    Dfa out(d.ab);
    std::vector<int> id(static_cast<size_t>(n), -1);
    // initial always present, even when the language is empty
    id[static_cast<size_t>(d.initial)] = out.add_state(d.accept[static_cast<size_t>(d.initial)] != 0);
    for (int q = 0; q < n; ++q)
        if (live[static_cast<size_t>(q)] && id[static_cast<size_t>(q)] < 0)
            id[static_cast<size_t>(q)] = out.add_state(d.accept[static_cast<size_t>(q)] != 0);
    for (int q = 0; q < n; ++q) {
        if (id[static_cast<size_t>(q)] < 0) continue;
        if (!(q == d.initial || live[static_cast<size_t>(q)])) continue;
        for (const auto& [x, r] : d.next[static_cast<size_t>(q)])
            if (id[static_cast<size_t>(r)] >= 0 && live[static_cast<size_t>(r)])
                out.next[static_cast<size_t>(id[static_cast<size_t>(q)])][x] = id[static_cast<size_t>(r)];
    }
    out.initial = id[static_cast<size_t>(d.initial)];
    return out;
}

// Moore partition refinement on the partial automaton (missing = dead).
// `extra_key` lets callers forbid merging states with different keys (used to
// preserve the incoming-letter typing of normalized machines).
inline Dfa dfa_minimize(const Dfa& d0, const std::vector<int>* extra_key = nullptr) {
    Dfa d = dfa_trim(d0);
    const int n = d.states();
    std::vector<int> cls(static_cast<size_t>(n));
    std::map<std::pair<int, int>, int> init_classes;
    for (int q = 0; q < n; ++q) {
        std::pair<int, int> key{d.accept[static_cast<size_t>(q)],
                                extra_key ? (*extra_key)[static_cast<size_t>(q)] : 0};
        auto it = init_classes.find(key);
        if (it == init_classes.end()) it = init_classes.emplace(key, static_cast<int>(init_classes.size())).first;
        cls[static_cast<size_t>(q)] = it->second;
    }
    const auto letters = ordered_letters(d.ab);
    for (;;) {
        std::map<std::vector<int>, int> sig_map;
        std::vector<int> ncls(static_cast<size_t>(n));
        for (int q = 0; q < n; ++q) {
            std::vector<int> sig{cls[static_cast<size_t>(q)]};
            for (Letter x : letters) {
                int r = d.step(q, x);
                sig.push_back(r < 0 ? -1 : cls[static_cast<size_t>(r)]);
            }
            auto it = sig_map.find(sig);
            if (it == sig_map.end()) it = sig_map.emplace(sig, static_cast<int>(sig_map.size())).first;
            ncls[static_cast<size_t>(q)] = it->second;
        }
        bool changed = false;
        for (int q = 0; q < n; ++q)
            if (ncls[static_cast<size_t>(q)] != cls[static_cast<size_t>(q)]) {
                changed = true;
                break;
            }
        cls = std::move(ncls);
        if (!changed) break;
    }
    int k = 1 + *std::max_element(cls.begin(), cls.end());
    Dfa out(d.ab);
    for (int c = 0; c < k; ++c) out.add_state(false);
    for (int q = 0; q < n; ++q) {
        int c = cls[static_cast<size_t>(q)];
        if (d.accept[static_cast<size_t>(q)]) out.accept[static_cast<size_t>(c)] = 1;
        for (const auto& [x, r] : d.next[static_cast<size_t>(q)])
            out.next[static_cast<size_t>(c)][x] = cls[static_cast<size_t>(r)];
    }
    out.initial = cls[static_cast<size_t>(d.initial)];
    return dfa_trim(out);
}

// Canonical renumbering: BFS from the initial state in canonical letter
// order. Two isomorphic trimmed DFAs renumber identically.
inline Dfa dfa_canonical(const Dfa& d) {
    const auto letters = ordered_letters(d.ab);
    std::vector<int> id(static_cast<size_t>(d.states()), -1);
    std::vector<int> order;
    std::queue<int> bfs;
    id[static_cast<size_t>(d.initial)] = 0;
    order.push_back(d.initial);
    bfs.push(d.initial);
    while (!bfs.empty()) {
        int q = bfs.front();
        bfs.pop();
        for (Letter x : letters) {
            int r = d.step(q, x);
            if (r >= 0 && id[static_cast<size_t>(r)] < 0) {
                id[static_cast<size_t>(r)] = static_cast<int>(order.size());
                order.push_back(r);
                bfs.push(r);
            }
        }
    }
    Dfa out(d.ab);
    for (int q : order) out.add_state(d.accept[static_cast<size_t>(q)] != 0);
    for (int q : order)
        for (const auto& [x, r] : d.next[static_cast<size_t>(q)])
            if (id[static_cast<size_t>(r)] >= 0)
                out.next[static_cast<size_t>(id[static_cast<size_t>(q)])][x] = id[static_cast<size_t>(r)];
    out.initial = 0;
    return out;
}

inline bool dfa_equal_language(const Dfa& a, const Dfa& b) {
    Dfa ca = dfa_canonical(dfa_minimize(a));
    Dfa cb = dfa_canonical(dfa_minimize(b));
    return ca.initial == cb.initial && ca.accept == cb.accept && ca.next == cb.next;
}

// Does the automaton accept any word at all (including possibly epsilon)?
inline bool dfa_nonempty(const Dfa& d) {
    Dfa t = dfa_trim(d);
    for (char a : t.accept)
        if (a) return true;
    return false;
}

enum class BoolOp { Union, Intersection, Difference };

// Product over completed automata; inputs must accept only reduced words,
// which every BoolOp output then inherits.
inline Dfa dfa_product(const Dfa& a, const Dfa& b, BoolOp op) {
    if (a.ab.rank != b.ab.rank) throw input_error("boolean op across different ranks");
    const auto letters = ordered_letters(a.ab);
    std::map<std::pair<int, int>, int> id;  // (-1,-1 allowed as dead side)
    Dfa out(a.ab);
    auto acc = [&](int qa, int qb) {
        bool ia = qa >= 0 && a.accept[static_cast<size_t>(qa)];
        bool ib = qb >= 0 && b.accept[static_cast<size_t>(qb)];
        switch (op) {
            case BoolOp::Union: return ia || ib;
            case BoolOp::Intersection: return ia && ib;
            case BoolOp::Difference: return ia && !ib;
        }
        return false;
    };
    std::queue<std::pair<int, int>> bfs;
    auto get = [&](int qa, int qb) {
        auto key = std::make_pair(qa, qb);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        int s = out.add_state(acc(qa, qb));
        id.emplace(key, s);
        bfs.push(key);
        return s;
    };
    out.initial = get(a.initial, b.initial);
    while (!bfs.empty()) {
        auto [qa, qb] = bfs.front();
        bfs.pop();
        int from = id[{qa, qb}];
        for (Letter x : letters) {
            int ra = qa >= 0 ? a.step(qa, x) : -1;
            int rb = qb >= 0 ? b.step(qb, x) : -1;
            if (ra < 0 && rb < 0) continue;  // joint dead state: never accepting
            out.next[static_cast<size_t>(from)][x] = get(ra, rb);
        }
    }
    return dfa_trim(out);
}

// All nonempty freely reduced words (the whole group minus identity), as a
// plain Dfa: a last-letter tracker.
inline Dfa reduced_universe_dfa(const Alphabet& ab) {
    Dfa d(ab);
    d.add_state(false);  // initial
    std::map<Letter, int> st;
    for (Letter x : ordered_letters(ab)) st[x] = d.add_state(true);
    for (Letter x : ordered_letters(ab)) {
        d.next[0][x] = st[x];
        for (Letter y : ordered_letters(ab))
            if (y != -x) d.next[static_cast<size_t>(st[x])][y] = st[y];
    }
    return d;
}

// Check that the automaton accepts freely reduced words only: no accepted
// monoid word may contain a cancelling pair.
inline bool accepts_only_reduced(const Dfa& d) {
    // pair states (q, last letter); reaching any accepting q after a
    // cancellation is a violation. Equivalent to emptiness of L ∩ non-reduced.
    struct Key {
        int q;
        Letter last;
        bool operator<(const Key& o) const { return std::tie(q, last) < std::tie(o.q, o.last); }
    };
    std::set<Key> seen;
    std::queue<Key> bfs;
    // reachable set after a cancellation happened: track separately
    std::set<Key> dirty_seen;
    std::queue<Key> dirty;
    bfs.push({d.initial, 0});
    seen.insert({d.initial, 0});
    auto letters = ordered_letters(d.ab);
    while (!bfs.empty() || !dirty.empty()) {
        if (!bfs.empty()) {
            Key k = bfs.front();
            bfs.pop();
            for (Letter x : letters) {
                int r = d.step(k.q, x);
                if (r < 0) continue;
                if (k.last != 0 && x == -k.last) {
                    Key nk{r, x};
                    if (dirty_seen.insert(nk).second) dirty.push(nk);
                } else {
                    Key nk{r, x};
                    if (seen.insert(nk).second) bfs.push(nk);
                }
            }
        } else {
            Key k = dirty.front();
            dirty.pop();
            if (d.accept[static_cast<size_t>(k.q)]) return false;
            for (Letter x : letters) {
                int r = d.step(k.q, x);
                if (r < 0) continue;
                Key nk{r, x};
                if (dirty_seen.insert(nk).second) dirty.push(nk);
            }
        }
    }
    for (const auto& k : dirty_seen)
        if (d.accept[static_cast<size_t>(k.q)]) return false;
    return true;
}

// --- the normalized machine -------------------------------------------------

struct ReducedDfa {
    Alphabet alphabet;
    std::vector<std::map<Letter, int>> next;  // state 0 = initial
    std::vector<char> accept;
    std::vector<Letter> type;  // 0 for the initial state

    explicit ReducedDfa(const Alphabet& ab) : alphabet(ab) {}
    int states() const { return static_cast<int>(next.size()); }

    int step(int q, Letter x) const {
        auto it = next[static_cast<size_t>(q)].find(x);
        return it == next[static_cast<size_t>(q)].end() ? -1 : it->second;
    }
    bool accepts_nonempty(const Word& w) const {
        if (w.is_identity()) return false;
        int q = 0;
        for (Letter x : w.letters()) {
            q = step(q, x);
            if (q < 0) return false;
        }
        return accept[static_cast<size_t>(q)] != 0;
    }

    // Invariants: determinism is structural; check typing, initial-state
    // conditions and non-backtracking exits.
    void validate() const {
        if (states() == 0) throw internal_error("ReducedDfa: no states");
        if (type.size() != next.size() || accept.size() != next.size())
            throw internal_error("ReducedDfa: ragged arrays");
        if (type[0] != 0) throw internal_error("ReducedDfa: initial state must have type 0");
        if (accept[0]) throw internal_error("ReducedDfa: initial state must not accept");
        for (int q = 0; q < states(); ++q) {
            if (q > 0 && !alphabet.valid(type[static_cast<size_t>(q)]))
                throw internal_error("ReducedDfa: non-initial state lacks a letter type");
            for (const auto& [x, r] : next[static_cast<size_t>(q)]) {
                if (!alphabet.valid(x)) throw internal_error("ReducedDfa: invalid letter");
                if (r <= 0 || r >= states()) throw internal_error("ReducedDfa: arrow into initial or out of range");
                if (type[static_cast<size_t>(r)] != x)
                    throw internal_error("ReducedDfa: arrow labelled differently from target type");
                if (q > 0 && x == -type[static_cast<size_t>(q)])
                    throw internal_error("ReducedDfa: backtracking exit");
            }
        }
    }

    Dfa to_dfa() const {
        Dfa d(alphabet);
        for (int q = 0; q < states(); ++q) d.add_state(accept[static_cast<size_t>(q)] != 0);
        for (int q = 0; q < states(); ++q)
            for (const auto& [x, r] : next[static_cast<size_t>(q)]) d.next[static_cast<size_t>(q)][x] = r;
        d.initial = 0;
        return d;
    }
};

// Normalize an arbitrary partial DFA whose language consists of reduced
// words into the typed form: split states by incoming letter, fresh initial
// state, drop inverse-of-type exits (no accepted word is lost because no
// accepted word backtracks). At most 2m*n + 1 states.
inline ReducedDfa normalize_reduced_form(const Dfa& d0) {
    Dfa d = dfa_trim(d0);
    if (!accepts_only_reduced(d))
        throw input_error("automaton accepts a non-reduced word; not a set of group elements");
    struct Key {
        int q;
        Letter in;
        bool operator<(const Key& o) const { return std::tie(q, in) < std::tie(o.q, o.in); }
    };
    std::map<Key, int> id;
    ReducedDfa out(d.ab);
    out.next.emplace_back();
    out.accept.push_back(0);
    out.type.push_back(0);
    std::queue<Key> bfs;
    auto get = [&](int q, Letter in) {
        Key k{q, in};
        auto it = id.find(k);
        if (it != id.end()) return it->second;
        out.next.emplace_back();
        out.accept.push_back(d.accept[static_cast<size_t>(q)]);
        out.type.push_back(in);
        int s = out.states() - 1;
        id.emplace(k, s);
        bfs.push(k);
        return s;
    };
    const auto letters = ordered_letters(d.ab);
    for (Letter x : letters) {
        int r = d.step(d.initial, x);
        if (r >= 0) out.next[0][x] = get(r, x);
    }
    while (!bfs.empty()) {
        Key k = bfs.front();
        bfs.pop();
        int from = id[k];
        for (Letter x : letters) {
            if (x == -k.in) continue;  // provably dead: would spell a cancellation
            int r = d.step(k.q, x);
            if (r >= 0) out.next[static_cast<size_t>(from)][x] = get(r, x);
        }
    }
    // trim co-reachable, minimize preserving types, renumber canonically
    Dfa flat = out.to_dfa();
    // dfa_minimize trims internally but does not track the type vector, so
    // carry types through by re-deriving them from incoming letters.
    Dfa min = [&] {
        Dfa t = dfa_trim(flat);
        // recover types in the trimmed machine from incoming arrows
        std::vector<int> tkey(static_cast<size_t>(t.states()), 0);
        for (int q = 0; q < t.states(); ++q)
            for (const auto& [x, r] : t.next[static_cast<size_t>(q)]) tkey[static_cast<size_t>(r)] = x;
        return dfa_minimize(t, &tkey);
    }();
    Dfa canon = dfa_canonical(min);
    ReducedDfa res(d.ab);
    for (int q = 0; q < canon.states(); ++q) {
        res.next.emplace_back();
        res.accept.push_back(canon.accept[static_cast<size_t>(q)]);
        res.type.push_back(0);
    }
    for (int q = 0; q < canon.states(); ++q)
        for (const auto& [x, r] : canon.next[static_cast<size_t>(q)]) {
            res.next[static_cast<size_t>(q)][x] = r;
            res.type[static_cast<size_t>(r)] = x;
        }
    res.validate();
    return res;
}

// A set of reduced words as (normalized automaton, identity flag).
struct RegularSet {
    ReducedDfa dfa;
    bool contains_identity = false;

    explicit RegularSet(const Alphabet& ab) : dfa(ab) {}
    RegularSet(ReducedDfa d, bool id) : dfa(std::move(d)), contains_identity(id) {}

    const Alphabet& alphabet() const { return dfa.alphabet; }
    bool accepts(const Word& w) const {
        return w.is_identity() ? contains_identity : dfa.accepts_nonempty(w);
    }
};

// Cone C(w): all reduced words with prefix w. cone(identity) is the whole
// group (identity included via the flag).
inline RegularSet cone(const Word& w, const Alphabet& ab) {
    ReducedDfa out(ab);
    out.next.emplace_back();
    out.accept.push_back(0);
    out.type.push_back(0);
    // prefix path
    int prev = 0;
    for (size_t i = 0; i < w.length(); ++i) {
        out.next.emplace_back();
        out.accept.push_back(0);
        out.type.push_back(w[i]);
        out.next[static_cast<size_t>(prev)][w[i]] = out.states() - 1;
        prev = out.states() - 1;
    }
    // tail: one state per letter, all accepting, non-backtracking closure
    std::map<Letter, int> tail;
    for (Letter x : ordered_letters(ab)) {
        out.next.emplace_back();
        out.accept.push_back(1);
        out.type.push_back(x);
        tail[x] = out.states() - 1;
    }
    for (Letter x : ordered_letters(ab))
        for (Letter y : ordered_letters(ab))
            if (y != -x) out.next[static_cast<size_t>(tail[x])][y] = tail[y];
    if (w.is_identity()) {
        // the path part is just the initial state; feed it into the tail
        for (Letter x : ordered_letters(ab)) out.next[0][x] = tail[x];
    } else {
        out.accept[static_cast<size_t>(prev)] = 1;  // w itself
        Letter last = w[w.length() - 1];
        for (Letter y : ordered_letters(ab))
            if (y != -last) out.next[static_cast<size_t>(prev)][y] = tail[y];
    }
    // normalization cleans up any unreachable tail states
    ReducedDfa norm = normalize_reduced_form(out.to_dfa());
    return {std::move(norm), w.is_identity()};
}

inline RegularSet full_group(const Alphabet& ab) { return cone(Word(), ab); }

inline RegularSet empty_set(const Alphabet& ab) {
    ReducedDfa d(ab);
    d.next.emplace_back();
    d.accept.push_back(0);
    d.type.push_back(0);
    return {std::move(d), false};
}

inline RegularSet singleton(const Word& w, const Alphabet& ab) {
    if (w.is_identity()) {
        RegularSet s = empty_set(ab);
        s.contains_identity = true;
        return s;
    }
    ReducedDfa d(ab);
    d.next.emplace_back();
    d.accept.push_back(0);
    d.type.push_back(0);
    int prev = 0;
    for (size_t i = 0; i < w.length(); ++i) {
        d.next.emplace_back();
        d.accept.push_back(i + 1 == w.length() ? 1 : 0);
        d.type.push_back(w[i]);
        d.next[static_cast<size_t>(prev)][w[i]] = d.states() - 1;
        prev = d.states() - 1;
    }
    return {std::move(d), false};
}

inline RegularSet set_boolean(const RegularSet& a, const RegularSet& b, BoolOp op) {
    Dfa prod = dfa_product(a.dfa.to_dfa(), b.dfa.to_dfa(), op);
    ReducedDfa norm = normalize_reduced_form(prod);
    bool id = false;
    switch (op) {
        case BoolOp::Union: id = a.contains_identity || b.contains_identity; break;
        case BoolOp::Intersection: id = a.contains_identity && b.contains_identity; break;
        case BoolOp::Difference: id = a.contains_identity && !b.contains_identity; break;
    }
    return {std::move(norm), id};
}

inline RegularSet set_union(const RegularSet& a, const RegularSet& b) {
    return set_boolean(a, b, BoolOp::Union);
}
inline RegularSet set_intersection(const RegularSet& a, const RegularSet& b) {
    return set_boolean(a, b, BoolOp::Intersection);
}
inline RegularSet set_difference(const RegularSet& a, const RegularSet& b) {
    return set_boolean(a, b, BoolOp::Difference);
}

inline bool set_equal(const RegularSet& a, const RegularSet& b) {
    if (a.contains_identity != b.contains_identity) return false;
    return dfa_equal_language(a.dfa.to_dfa(), b.dfa.to_dfa());
}

// Prefix closure of the nonempty-word part, with the identity included
// whenever the set is nonempty (the empty prefix). After trimming, every
// state lies on a path from the initial state to an accepting state, so the
// prefixes are exactly the words reaching any non-initial state.
inline RegularSet prefix_closure(const RegularSet& s) {
    Dfa d = dfa_trim(s.dfa.to_dfa());
    bool nonempty = s.contains_identity || dfa_nonempty(d);
    for (int q = 0; q < d.states(); ++q)
        if (q != d.initial) d.accept[static_cast<size_t>(q)] = 1;
    return {normalize_reduced_form(d), nonempty};
}

inline IntMatrix adjacency_matrix(const ReducedDfa& d) {
    IntMatrix A(static_cast<size_t>(d.states()), std::vector<BigInt>(static_cast<size_t>(d.states()), 0));
    for (int q = 0; q < d.states(); ++q)
        for (const auto& [x, r] : d.next[static_cast<size_t>(q)]) A[static_cast<size_t>(q)][static_cast<size_t>(r)] += 1;
    return A;
}

// mu*(L) = sum_{j accepting} ((I - tA)^{-1})_{0j}: one path per word, each
// word of length k contributing t^k.
inline RationalFunction measure_star_regular(const ReducedDfa& d, char var = 't') {
    std::vector<int> from{0}, to;
    for (int q = 0; q < d.states(); ++q)
        if (d.accept[static_cast<size_t>(q)]) to.push_back(q);
    if (to.empty()) return RationalFunction::constant(0, var);
    return resolvent_entry_sum(adjacency_matrix(d), from, to, var);
}

// Random normalized machines for property tests: a random partial DFA over
// the reduced universe, trimmed and normalized (nullopt when empty).
inline std::optional<RegularSet> random_regular_set(Xoshiro256& rng, const Alphabet& ab,
                                                    int nstates, int percent_edge,
                                                    int percent_accept) {
    Dfa d(ab);
    for (int q = 0; q < nstates; ++q) d.add_state(rng.below(100) < static_cast<uint64_t>(percent_accept));
    for (int q = 0; q < nstates; ++q)
        for (Letter x : ordered_letters(ab))
            if (rng.below(100) < static_cast<uint64_t>(percent_edge))
                d.next[static_cast<size_t>(q)][x] = static_cast<int>(rng.below(static_cast<uint64_t>(nstates)));
    Dfa constrained = dfa_product(d, reduced_universe_dfa(ab), BoolOp::Intersection);
    if (!dfa_nonempty(constrained)) return std::nullopt;
    return RegularSet{normalize_reduced_form(constrained), rng.below(2) == 1};
}

}  // namespace fgrow

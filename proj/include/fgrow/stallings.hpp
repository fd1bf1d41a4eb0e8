#pragma once

// Folded core subgroup graphs (Stallings graphs) for finitely generated
// subgroups of a free group, with
//   - membership and index,
//   - consolidation of degree-2 chains into word-labelled edges,
//   - the transfer automaton whose resolvent row gives mu*(H \ {1}),
//   - a production path through the regular-language machinery (the walk
//     automaton intersected with the reduced universe), which reduces the
//     measure to an integer transfer matrix and is much faster than the
//     symbolic matrix inverse,
//   - the Schreier-graph spectral radius (exact for finite index, truncated
//     lower bound otherwise).

#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <tuple>
#include <vector>

#include "fgrow/automata.hpp"
#include "fgrow/poly_matrix.hpp"
#include "fgrow/roots.hpp"
#include "fgrow/words.hpp"

namespace fgrow {

struct SubgroupGraph {
    Alphabet alphabet;
    // vertex 0 is the basepoint; next[v][l] = w is always paired with
    // next[w][-l] = v (one geometric edge, two directed readings)
    std::vector<std::map<Letter, int>> next;

    explicit SubgroupGraph(const Alphabet& ab) : alphabet(ab) {}

    int vertices() const { return static_cast<int>(next.size()); }
    int degree(int v) const { return static_cast<int>(next[static_cast<size_t>(v)].size()); }
    int edge_count() const {  // geometric (undirected) edges
        int total = 0;
        for (int v = 0; v < vertices(); ++v) total += degree(v);
        return total / 2;
    }
    int step(int v, Letter x) const {
        auto it = next[static_cast<size_t>(v)].find(x);
        return it == next[static_cast<size_t>(v)].end() ? -1 : it->second;
    }

    bool operator==(const SubgroupGraph& o) const {
        return alphabet.rank == o.alphabet.rank && next == o.next;
    }

    void validate() const {
        if (next.empty()) throw internal_error("SubgroupGraph: no basepoint");
        for (int v = 0; v < vertices(); ++v)
            for (const auto& [x, w] : next[static_cast<size_t>(v)]) {
                if (!alphabet.valid(x)) throw internal_error("SubgroupGraph: invalid letter");
                if (w < 0 || w >= vertices()) throw internal_error("SubgroupGraph: vertex out of range");
                if (step(w, -x) != v) throw internal_error("SubgroupGraph: unpaired edge");
            }
        for (int v = 1; v < vertices(); ++v)
            if (degree(v) <= 1) throw internal_error("SubgroupGraph: non-core vertex");
    }
};

inline bool membership(const SubgroupGraph& g, const Word& w) {
    int v = 0;
    for (Letter x : w.letters()) {
        v = g.step(v, x);
        if (v < 0) return false;
    }
    return v == 0;
}

// Finite iff the graph is 2m-regular (then it is the Schreier coset graph
// and the vertex count is the index); nullopt = infinite.
inline std::optional<long long> subgroup_index(const SubgroupGraph& g) {
    for (int v = 0; v < g.vertices(); ++v)
        if (g.degree(v) != g.alphabet.letters()) return std::nullopt;
    return g.vertices();
}

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x)
            x = parent[static_cast<size_t>(x)] =
                parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
        return x;
    }
};

}  // namespace detail

// Iterated folding of the wedge of generator loops (union-find, merging
// whenever a vertex acquires two same-letter exits), then spur removal so
// the graph is core, then a canonical BFS renumbering. The canonical form
// makes graph equality decide subgroup equality.
inline SubgroupGraph build_subgroup_graph(const Alphabet& ab, const std::vector<Word>& generators) {
    for (const Word& w : generators)
        for (Letter x : w.letters())
            if (!ab.valid(x))
                throw input_error("generator uses a letter outside the alphabet of rank " +
                                  std::to_string(ab.rank));

    // wedge of loops at vertex 0
    int nv = 1;
    std::vector<std::tuple<int, Letter, int>> raw;
    for (const Word& w : generators) {
        if (w.is_identity()) continue;  // identity generators are dropped
        int cur = 0;
        for (size_t i = 0; i < w.length(); ++i) {
            int nxt = (i + 1 == w.length()) ? 0 : nv++;
            raw.emplace_back(cur, w[i], nxt);
            cur = nxt;
        }
    }

    detail::UnionFind uf(static_cast<size_t>(nv));
    std::vector<std::map<Letter, int>> exits(static_cast<size_t>(nv));
    std::vector<std::pair<int, int>> pending;
    auto attach = [&](int u, Letter l, int v) {
        u = uf.find(u);
        v = uf.find(v);
        auto [it, fresh] = exits[static_cast<size_t>(u)].emplace(l, v);
        if (!fresh) {
            int w = uf.find(it->second);
            it->second = w;
            if (w != v) pending.emplace_back(w, v);
        }
    };
    for (const auto& [u, l, v] : raw) {
        attach(u, l, v);
        attach(v, -l, u);
    }
    while (!pending.empty()) {
        auto [a, b] = pending.back();
        pending.pop_back();
        a = uf.find(a);
        b = uf.find(b);
        if (a == b) continue;
        if (exits[static_cast<size_t>(a)].size() < exits[static_cast<size_t>(b)].size()) std::swap(a, b);
        uf.parent[static_cast<size_t>(b)] = a;
        std::map<Letter, int> moved;
        moved.swap(exits[static_cast<size_t>(b)]);
        for (const auto& [l, w] : moved) attach(a, l, w);
    }

    // resolve targets to roots
    std::vector<char> is_root(static_cast<size_t>(nv), 0);
    for (int v = 0; v < nv; ++v) is_root[static_cast<size_t>(uf.find(v))] = 1;
    for (int v = 0; v < nv; ++v) {
        if (!is_root[static_cast<size_t>(v)]) continue;
        for (auto& [l, w] : exits[static_cast<size_t>(v)]) w = uf.find(w);
    }
    const int base = uf.find(0);

    // spur removal: peel degree-<=1 vertices other than the basepoint
    std::queue<int> peel;
    for (int v = 0; v < nv; ++v)
        if (is_root[static_cast<size_t>(v)] && v != base && exits[static_cast<size_t>(v)].size() <= 1)
            peel.push(v);
    while (!peel.empty()) {
        int v = peel.front();
        peel.pop();
        if (!is_root[static_cast<size_t>(v)] || v == base) continue;
        if (exits[static_cast<size_t>(v)].size() > 1) continue;
        is_root[static_cast<size_t>(v)] = 0;
        if (!exits[static_cast<size_t>(v)].empty()) {
            auto [l, w] = *exits[static_cast<size_t>(v)].begin();
            exits[static_cast<size_t>(w)].erase(-l);
            if (w != base && exits[static_cast<size_t>(w)].size() <= 1) peel.push(w);
        }
        exits[static_cast<size_t>(v)].clear();
    }

    // canonical BFS renumbering from the basepoint
    const auto letters = ordered_letters(ab);
    std::vector<int> id(static_cast<size_t>(nv), -1);
    std::vector<int> order;
    id[static_cast<size_t>(base)] = 0;
    order.push_back(base);
    for (size_t head = 0; head < order.size(); ++head) {
        int v = order[head];
        for (Letter x : letters) {
            auto it = exits[static_cast<size_t>(v)].find(x);
            if (it == exits[static_cast<size_t>(v)].end()) continue;
            int w = it->second;
            if (id[static_cast<size_t>(w)] < 0) {
                id[static_cast<size_t>(w)] = static_cast<int>(order.size());
                order.push_back(w);
            }
        }
    }
    SubgroupGraph g(ab);
    g.next.resize(order.size());
    for (size_t i = 0; i < order.size(); ++i)
        for (const auto& [l, w] : exits[static_cast<size_t>(order[i])])
            g.next[i][l] = id[static_cast<size_t>(w)];
    g.validate();
    return g;
}

// --- consolidation -----------------------------------------------------------

struct ConsolidatedEdge {
    int from, to;  // SubgroupGraph vertex ids (members of V*)
    Word label;    // nonempty reduced word read along the chain
    int rev;       // index of the reverse edge
};

struct ConsolidatedGraph {
    Alphabet alphabet;
    std::vector<int> vstar;  // vstar[0] = basepoint, then all vertices of degree >= 3
    std::vector<ConsolidatedEdge> edges;

    explicit ConsolidatedGraph(const Alphabet& ab) : alphabet(ab) {}
};

// V* = basepoint plus all vertices of degree >= 3; each directed edge of the
// consolidated graph reads off a maximal chain of degree-2 vertices. The
// chain's word is reduced because the graph is folded.
inline ConsolidatedGraph consolidate(const SubgroupGraph& g) {
    ConsolidatedGraph cg(g.alphabet);
    std::vector<char> instar(static_cast<size_t>(g.vertices()), 0);
    instar[0] = 1;
    cg.vstar.push_back(0);
    for (int v = 1; v < g.vertices(); ++v)
        if (g.degree(v) >= 3) {
            instar[static_cast<size_t>(v)] = 1;
            cg.vstar.push_back(v);
        }
    for (int v : cg.vstar)
        for (const auto& [l0, w0] : g.next[static_cast<size_t>(v)]) {
            std::vector<Letter> letters{l0};
            Letter last = l0;
            int cur = w0;
            while (!instar[static_cast<size_t>(cur)]) {
                // degree-2 interior vertex: continue along the non-reversing exit
                for (const auto& [l2, w2] : g.next[static_cast<size_t>(cur)])
                    if (l2 != -last) {
                        letters.push_back(l2);
                        last = l2;
                        cur = w2;
                        break;
                    }
            }
            cg.edges.push_back({v, cur, Word(letters), -1});
        }
    // pair up reverses: the reverse of e starts at e.to with the inverse of
    // e's last letter; (origin, first letter) is unique since g is folded
    std::map<std::pair<int, Letter>, int> by_start;
    for (size_t i = 0; i < cg.edges.size(); ++i)
        by_start[{cg.edges[i].from, cg.edges[i].label[0]}] = static_cast<int>(i);
    for (size_t i = 0; i < cg.edges.size(); ++i) {
        const Word& lab = cg.edges[i].label;
        auto it = by_start.find({cg.edges[i].to, -lab[lab.length() - 1]});
        if (it == by_start.end()) throw internal_error("consolidate: missing reverse edge");
        cg.edges[i].rev = it->second;
    }
    for (size_t i = 0; i < cg.edges.size(); ++i) {
        const auto& e = cg.edges[i];
        const auto& r = cg.edges[static_cast<size_t>(e.rev)];
        if (r.rev != static_cast<int>(i) || r.from != e.to || r.to != e.from ||
            r.label != e.label.inverse())
            throw internal_error("consolidate: reverse pairing broken");
    }
    return cg;
}

// --- transfer automaton ------------------------------------------------------

// States: 0 = "wrote the empty word", 1+e = "just traversed consolidated
// edge e". A transition into 1+f multiplies by t^{|label(f)|}; traversing an
// edge and then its own reverse is forbidden, so accepted runs spell exactly
// the reduced basepoint loops, one run per word.
struct TransferAutomaton {
    RatMatrix A;
    std::vector<int> accept;  // state indices (1-based offset already applied)

    explicit TransferAutomaton(size_t n) : A(n, 't') {}
    size_t states() const { return A.size(); }
};

inline TransferAutomaton transfer_automaton(const ConsolidatedGraph& cg) {
    const size_t ne = cg.edges.size();
    TransferAutomaton ta(ne + 1);
    auto tpow = [](size_t k) {
        return RationalFunction::from_poly(Polynomial(BigRational(1)).shifted(static_cast<int>(k)), 't');
    };
    for (size_t f = 0; f < ne; ++f) {
        if (cg.edges[f].from == 0) ta.A.at(0, 1 + f) = tpow(cg.edges[f].label.length());
        for (size_t e = 0; e < ne; ++e)
            if (cg.edges[e].to == cg.edges[f].from && cg.edges[e].rev != static_cast<int>(f))
                ta.A.at(1 + e, 1 + f) = tpow(cg.edges[f].label.length());
        if (cg.edges[f].to == 0) ta.accept.push_back(static_cast<int>(1 + f));
    }
    return ta;
}

// mu*(H \ {1}) = sum over accept states j of ((E - A)^{-1})_{0 j}.
inline RationalFunction measure_star_transfer(const TransferAutomaton& ta) {
    if (ta.accept.empty()) return RationalFunction::constant(0, 't');
    RatMatrix resolvent = (RatMatrix::identity(ta.states(), 't') - ta.A).inverse();
    RationalFunction sum = RationalFunction::constant(0, 't');
    for (int j : ta.accept) sum = sum + resolvent.at(0, static_cast<size_t>(j));
    return sum;
}

// --- the regular-language route ----------------------------------------------

// Loops at the basepoint, as a plain walk DFA (accepts unreduced words too;
// callers must intersect with the reduced universe).
inline Dfa subgroup_walk_dfa(const SubgroupGraph& g) {
    Dfa d(g.alphabet);
    for (int v = 0; v < g.vertices(); ++v) d.add_state(v == 0);
    for (int v = 0; v < g.vertices(); ++v)
        for (const auto& [x, w] : g.next[static_cast<size_t>(v)]) d.next[static_cast<size_t>(v)][x] = w;
    d.initial = 0;
    return d;
}

// H as a RegularSet: the normalized automaton of H \ {1}, identity flag set.
// In a folded graph a reduced word labels at most one basepoint loop, and
// conversely every basepoint loop label that is reduced lies in H, so the
// intersection with the reduced universe is exactly H \ {1}.
inline RegularSet subgroup_language(const SubgroupGraph& g) {
    if (g.edge_count() == 0) {
        RegularSet s = empty_set(g.alphabet);
        s.contains_identity = true;
        return s;
    }
    Dfa prod = dfa_product(subgroup_walk_dfa(g), reduced_universe_dfa(g.alphabet),
                           BoolOp::Intersection);
    return {normalize_reduced_form(prod), true};
}

inline RationalFunction measure_subgroup(const SubgroupGraph& g) {
    return measure_star_regular(subgroup_language(g).dfa);
}

inline RationalFunction measure_subgroup(const Alphabet& ab, const std::vector<Word>& generators) {
    return measure_subgroup(build_subgroup_graph(ab, generators));
}

// --- Schreier spectral radius -------------------------------------------------

struct SpectralRadius {
    RatInterval value;
    bool approximate = false;
};

// Exact mode (finite index): the Schreier graph is the 2m-regular graph g
// itself, so nu = max |eigenvalue| / 2m = 1; certified from the
// characteristic polynomial (2m is a root, no root exceeds 2m in modulus).
// Estimate mode (any index, radius >= 1): closed-walk counts c_k on the ball
// of the completed Schreier graph give the certified lower bound
// max over even k <= radius of c_k^{1/k} / 2m, monotone in the radius.
inline SpectralRadius schreier_spectral_radius(const SubgroupGraph& g,
                                               std::optional<int> radius = std::nullopt) {
    const int two_m = g.alphabet.letters();
    if (!radius) {
        if (!subgroup_index(g))
            throw input_error(
                "subgroup has infinite index; spectral radius needs a truncation radius");
        const size_t n = static_cast<size_t>(g.vertices());
        IntMatrix A(n, std::vector<BigInt>(n, 0));
        for (int v = 0; v < g.vertices(); ++v)
            for (const auto& [x, w] : g.next[static_cast<size_t>(v)])
                A[static_cast<size_t>(v)][static_cast<size_t>(w)] += 1;
        Polynomial chi = char_poly(A);
        const BigRational top(two_m);
        if (chi.evaluate(top) != 0)
            throw internal_error("regular graph adjacency lost its top eigenvalue");
        Polynomial rad = radical(chi);
        auto chain = sturm_chain(rad);
        BigRational bound = cauchy_root_bound(rad) + 1;
        if (sturm_count(chain, top, bound) != 0)
            throw internal_error("eigenvalue above the graph degree");
        int below = sturm_count(chain, -bound, -top);
        if (sign_at(rad, -top) == 0) below -= 1;
        if (below != 0) throw internal_error("eigenvalue below minus the graph degree");
        return {{BigRational(1), BigRational(1)}, false};
    }

    const int r = *radius;
    if (r < 1) throw input_error("truncation radius must be at least 1");

    // Ball of the completed Schreier graph: missing exits hang (2m-1)-ary
    // trees. Closed walks of length k <= r never leave distance k/2, so
    // expanding exits only for vertices at distance < r is exact.
    struct Node {
        std::vector<int> out;  // one entry per signed letter, built when expanded
    };
    std::vector<Node> nodes;
    std::vector<int> dist;
    std::vector<int> gamma_id(static_cast<size_t>(g.vertices()), -1);  // graph vertex -> node
    std::vector<std::pair<int, Letter>> tree_parent;                   // per node; (-1,0) for graph nodes
    const auto letters = ordered_letters(g.alphabet);

    auto new_node = [&](int d, int parent, Letter in) {
        nodes.emplace_back();
        dist.push_back(d);
        tree_parent.emplace_back(parent, in);
        return static_cast<int>(nodes.size()) - 1;
    };
    auto graph_node = [&](int v, int d) {
        if (gamma_id[static_cast<size_t>(v)] < 0) gamma_id[static_cast<size_t>(v)] = new_node(d, -1, 0);
        return gamma_id[static_cast<size_t>(v)];
    };
    std::queue<std::pair<int, int>> bfs;  // (node, graph vertex or -1)
    bfs.push({graph_node(0, 0), 0});
    while (!bfs.empty()) {
        auto [u, gv] = bfs.front();
        bfs.pop();
        if (dist[static_cast<size_t>(u)] >= r) continue;  // fringe: no exits needed
        const int d = dist[static_cast<size_t>(u)] + 1;
        for (Letter x : letters) {
            int target;
            if (gv >= 0) {
                int w = g.step(gv, x);
                if (w >= 0) {
                    bool fresh = gamma_id[static_cast<size_t>(w)] < 0;
                    target = graph_node(w, d);
                    if (fresh) bfs.push({target, w});
                } else {
                    target = new_node(d, u, x);
                    bfs.push({target, -1});
                }
            } else {
                auto [p, in] = tree_parent[static_cast<size_t>(u)];
                if (x == -in) {
                    target = p;
                } else {
                    target = new_node(d, u, x);
                    bfs.push({target, -1});
                }
            }
            nodes[static_cast<size_t>(u)].out.push_back(target);
        }
    }

    // closed-walk counts by sparse DP
    std::vector<BigInt> cur(nodes.size(), 0), nxt(nodes.size(), 0);
    cur[0] = 1;
    BigRational best_lo(0), best_hi(0);
    const BigInt scale = BigInt(1) << 32;
    const BigInt denom_unit = BigInt(two_m) * scale;
    for (int k = 1; k <= r; ++k) {
        for (auto& x : nxt) x = 0;
        for (size_t u = 0; u < nodes.size(); ++u) {
            if (cur[u] == 0) continue;
            for (int w : nodes[u].out) nxt[static_cast<size_t>(w)] += cur[u];
        }
        std::swap(cur, nxt);
        if (k % 2 != 0 || cur[0] == 0) continue;
        // bound c_k^{1/k}/(2m) by integer k-th roots of c_k * scale^k
        BigInt scaled = cur[0] * int_pow(scale, static_cast<unsigned long>(k));
        BigInt root;
        mpz_root(root.get_mpz_t(), scaled.get_mpz_t(), static_cast<unsigned long>(k));
        BigRational lo = make_rat(root, denom_unit);
        BigRational hi = make_rat(root + 1, denom_unit);
        if (lo > best_lo) best_lo = lo;
        if (hi > best_hi) best_hi = hi;
    }
    return {{best_lo, best_hi}, true};
}

}  // namespace fgrow

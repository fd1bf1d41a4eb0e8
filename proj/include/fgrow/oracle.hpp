#pragma once

// Brute-force reference counts: exhaustive enumeration of reduced words, of
// free-monoid words (counted by their free reduction), and closed lattice
// walks on Z^2.  Deliberately slow and simple; every exact pipeline is
// validated against these at desk scale.

#include <optional>
#include <vector>

#include "fgrow/automata.hpp"
#include "fgrow/stallings.hpp"
#include "fgrow/words.hpp"

namespace fgrow {

inline constexpr long long kDefaultOracleCap = 100000000;  // ~1e8 enumerated words

// Membership is threaded through the search as incremental state (automaton
// state, graph vertex, ...) so enumeration costs O(words), not
// O(words x length).  A stepper provides:
//   State start();
//   std::optional<State> advance(State, Letter);   // nullopt = provably dead
//   bool accepted(State, const std::vector<Letter>& reduced_word);

struct SubgroupStepper {
    const SubgroupGraph& g;
    using State = int;
    State start() const { return 0; }
    std::optional<State> advance(State v, Letter x) const {
        int w = g.step(v, x);
        if (w < 0) return std::nullopt;
        return w;
    }
    bool accepted(State v, const std::vector<Letter>&) const { return v == 0; }
};

struct RegularSetStepper {
    const RegularSet& r;
    using State = int;
    State start() const { return 0; }
    std::optional<State> advance(State q, Letter x) const {
        int p = r.dfa.step(q, x);
        if (p < 0) return std::nullopt;
        return p;
    }
    bool accepted(State q, const std::vector<Letter>& w) const {
        if (w.empty()) return r.contains_identity;
        return r.dfa.accept[static_cast<size_t>(q)] != 0;
    }
};

// arbitrary predicate on the reduced word; cannot prune
template <typename Fn>
struct PredicateStepper {
    Fn fn;
    struct State {};
    State start() const { return {}; }
    std::optional<State> advance(State, Letter) const { return State{}; }
    bool accepted(State, const std::vector<Letter>& w) const {
        Word word;
        for (Letter x : w) word.push(x);
        return fn(word);
    }
};

template <typename Fn>
PredicateStepper<Fn> predicate_stepper(Fn fn) {
    return PredicateStepper<Fn>{std::move(fn)};
}

// n_k = number of reduced words of length k <= K accepted by the stepper.
// DFS over the reduced-word tree with an explicit stack.
template <typename Stepper>
std::vector<BigInt> count_reduced(const Alphabet& ab, int K, const Stepper& st,
                                  long long cap = kDefaultOracleCap) {
    if (K < 0) throw input_error("negative enumeration horizon");
    if (K >= 1 && sphere_size(ab.rank, K) > BigInt(static_cast<long>(cap)))
        throw resource_error("enumeration budget exceeded: sphere too large");

    using State = typename Stepper::State;
    const auto letters = ordered_letters(ab);
    std::vector<BigInt> out(static_cast<size_t>(K) + 1, BigInt(0));
    std::vector<Letter> w;
    std::vector<State> states{st.start()};
    std::vector<size_t> li(1, 0);  // li[d]: next letter index to try at depth d
    if (st.accepted(states.back(), w)) out[0] = 1;
    while (true) {
        size_t d = w.size();
        if (static_cast<int>(d) < K && li[d] < letters.size()) {
            Letter x = letters[li[d]++];
            if (!w.empty() && w.back() == -x) continue;  // would cancel: not reduced
            auto nxt = st.advance(states.back(), x);
            if (!nxt) continue;  // dead: no extension can be accepted
            w.push_back(x);
            states.push_back(*std::move(nxt));
            li.push_back(0);
            if (st.accepted(states.back(), w)) out[w.size()] += 1;
        } else {
            if (d == 0) break;
            w.pop_back();
            states.pop_back();
            li.pop_back();
        }
    }
    return out;
}

// n*_k = number of free-monoid words of length k whose free reduction is
// accepted.  The reduced form acts as a stack, so membership state is kept
// per reduced prefix and restored on cancellation; dead states may revive
// after a cancellation and are therefore carried instead of pruned.
template <typename Stepper>
std::vector<BigInt> count_monoid_preimage(const Alphabet& ab, int K, const Stepper& st,
                                          long long cap = kDefaultOracleCap) {
    if (K < 0) throw input_error("negative enumeration horizon");
    if (int_pow(BigInt(ab.letters()), static_cast<unsigned long>(K)) >
        BigInt(static_cast<long>(cap)))
        throw resource_error("enumeration budget exceeded: too many monoid words");

    using State = typename Stepper::State;
    using OptState = std::optional<State>;
    const auto letters = ordered_letters(ab);
    std::vector<BigInt> out(static_cast<size_t>(K) + 1, BigInt(0));
    std::vector<Letter> red;          // reduced form of the current monoid word
    std::vector<OptState> states{OptState(st.start())};
    struct Undo {
        bool was_pop = false;
        Letter letter = 0;  // for pops: what to push back
        OptState state;
    };
    std::vector<Undo> undo;        // edge that produced depth d+1
    std::vector<size_t> li(1, 0);  // per-depth letter cursor
    if (states.back() && st.accepted(*states.back(), red)) out[0] = 1;
    while (true) {
        size_t d = undo.size();
        if (static_cast<int>(d) < K && li[d] < letters.size()) {
            Letter x = letters[li[d]++];
            Undo u;
            if (!red.empty() && red.back() == -x) {
                u.was_pop = true;
                u.letter = red.back();
                u.state = std::move(states.back());
                red.pop_back();
                states.pop_back();
            } else {
                const OptState& top = states.back();
                states.push_back(top ? st.advance(*top, x) : std::nullopt);
                red.push_back(x);
            }
            undo.push_back(std::move(u));
            li.push_back(0);
            if (states.back() && st.accepted(*states.back(), red)) out[undo.size()] += 1;
        } else {
            if (d == 0) break;
            Undo u = std::move(undo.back());
            undo.pop_back();
            li.pop_back();
            if (u.was_pop) {
                red.push_back(u.letter);
                states.push_back(std::move(u.state));
            } else {
                red.pop_back();
                states.pop_back();
            }
        }
    }
    return out;
}

// convenience forms for the two native set representations
inline std::vector<BigInt> count_reduced(const SubgroupGraph& g, int K,
                                         long long cap = kDefaultOracleCap) {
    return count_reduced(g.alphabet, K, SubgroupStepper{g}, cap);
}
inline std::vector<BigInt> count_reduced(const RegularSet& r, int K,
                                         long long cap = kDefaultOracleCap) {
    return count_reduced(r.dfa.alphabet, K, RegularSetStepper{r}, cap);
}
inline std::vector<BigInt> count_monoid_preimage(const SubgroupGraph& g, int K,
                                                 long long cap = kDefaultOracleCap) {
    return count_monoid_preimage(g.alphabet, K, SubgroupStepper{g}, cap);
}
inline std::vector<BigInt> count_monoid_preimage(const RegularSet& r, int K,
                                                 long long cap = kDefaultOracleCap) {
    return count_monoid_preimage(r.dfa.alphabet, K, RegularSetStepper{r}, cap);
}

// closed simple-walk counts on Z^2: b_{2k} = C(2k,k)^2, odd counts zero
inline std::vector<BigInt> lattice_return_counts(int K) {
    if (K < 0) throw input_error("negative horizon");
    if (K > 4000) throw input_error("lattice horizon capped at 4000");
    std::vector<BigInt> b(static_cast<size_t>(K) + 1, BigInt(0));
    b[0] = 1;
    for (int k = 1; 2 * k <= K; ++k) {
        BigInt c;
        mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(2 * k),
                     static_cast<unsigned long>(k));
        b[static_cast<size_t>(2 * k)] = c * c;
    }
    return b;
}

}  // namespace fgrow

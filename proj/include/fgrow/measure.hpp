#pragma once

// The measure family mu_s of the stopping-s no-return walk, its adjusted and
// frequency companions, the exact t <-> s change of variables, and the
// sampler with Monte-Carlo estimation.
//
//   mu_s(w)  = s (1-s)^{|w|} / (2m (2m-1)^{|w|-1}),   mu_s(1) = s
//   mu*(w)   = t^{|w|},  t = (1-s)/(2m-1)             (w != 1)
//   lambda(w)  = 1/(2m (2m-1)^{|w|-1}),  lambda(1) = 1
//   lambda*(w) = (2m-1)^{-|w|}                        (w != 1)
//
// and for a set R with adjusted series mu*(R \ 1)(t),
//   mu(R)(s) = ((2m-1)/2m) s mu*(R \ 1)(t)|_{t=(1-s)/(2m-1)} + s [1 in R].

#include <array>
#include <cmath>
#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

#include "fgrow/automata.hpp"
#include "fgrow/ratfunc.hpp"
#include "fgrow/rng.hpp"
#include "fgrow/words.hpp"

namespace fgrow {

struct MeasureParams {
    Alphabet alphabet;
    BigRational s;

    MeasureParams(const Alphabet& ab, BigRational stop) : alphabet(ab), s(std::move(stop)) {
        if (!(s > 0 && s < 1)) throw input_error("stopping probability s must lie strictly in (0,1)");
    }
    BigRational t() const { return (1 - s) / (alphabet.letters() - 1); }
};

inline BigRational atom(const MeasureParams& p, const Word& w) {
    if (w.is_identity()) return p.s;
    const int m = p.alphabet.rank;
    BigRational num = p.s * rat_pow(1 - p.s, static_cast<unsigned long>(w.length()));
    BigInt den = BigInt(2 * m) * int_pow(BigInt(2 * m - 1), static_cast<unsigned long>(w.length() - 1));
    return num / BigRational(den);
}

inline BigRational adjusted_atom(const MeasureParams& p, const Word& w) {
    if (w.is_identity()) throw input_error("the adjusted measure is undefined at the identity");
    return rat_pow(p.t(), static_cast<unsigned long>(w.length()));
}

inline BigRational frequency_atom(const Alphabet& ab, const Word& w) {
    if (w.is_identity()) return 1;
    BigInt den = BigInt(2 * ab.rank) *
                 int_pow(BigInt(2 * ab.rank - 1), static_cast<unsigned long>(w.length() - 1));
    return make_rat(BigInt(1), den);
}

inline BigRational adjusted_frequency_atom(const Alphabet& ab, const Word& w) {
    if (w.is_identity()) throw input_error("the adjusted frequency measure is undefined at the identity");
    return make_rat(BigInt(1), int_pow(BigInt(2 * ab.rank - 1), static_cast<unsigned long>(w.length())));
}

// mu(R)(s) from the adjusted series of R \ {1}. The input must be a power
// series in t with zero constant term (no identity mass inside it).
inline RationalFunction to_measure_of_s(const Alphabet& ab, const RationalFunction& mustar,
                                        bool contains_identity) {
    if (mustar.den().evaluate(BigRational(0)) == 0)
        throw input_error("adjusted measure series must be regular at t=0");
    if (mustar.num().evaluate(BigRational(0)) != 0 && !mustar.is_zero())
        throw input_error("adjusted measure series must vanish at t=0 (identity handled separately)");
    const int c = ab.letters() - 1;  // 2m-1
    RationalFunction s = RationalFunction::variable('s');
    RationalFunction subst =
        (RationalFunction::constant(1, 's') - s) * RationalFunction::constant(make_rat(1, c), 's');
    RationalFunction composed = substitute(mustar, subst);
    RationalFunction out = RationalFunction::constant(make_rat(c, c + 1), 's') * s * composed;
    if (contains_identity) out = out + s;
    return out;
}

// --- sampling ----------------------------------------------------------------

struct SampleBatch {
    uint64_t seed = 0;
    std::vector<Word> words;
    size_t count() const { return words.size(); }
};

namespace detail {

// number of independent RNG streams; sample i always comes from stream i%8,
// so results do not depend on how many workers run
constexpr int kSampleStreams = 8;

inline uint64_t stop_threshold(const BigRational& s) {
    BigInt t = (s.get_num() << 64) / s.get_den();
    return t.get_ui();
}

inline Word sample_word(Xoshiro256& rng, const std::vector<Letter>& letters, uint64_t stop) {
    Word w;
    Letter last = 0;
    for (;;) {
        if (rng.next() < stop) break;
        if (last == 0) {
            last = letters[rng.below(letters.size())];
        } else {
            size_t skip = static_cast<size_t>(letter_rank(-last));
            size_t i = rng.below(letters.size() - 1);
            last = letters[i + (i >= skip ? 1 : 0)];
        }
        w.push(last);
    }
    return w;
}

template <typename PerStream>
inline void run_streams(PerStream&& work) {
    unsigned hw = std::thread::hardware_concurrency();
    int nthreads = static_cast<int>(hw == 0 ? 1 : std::min<unsigned>(hw, kSampleStreams));
    if (nthreads <= 1) {
        for (int j = 0; j < kSampleStreams; ++j) work(j);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(nthreads));
    for (int tid = 0; tid < nthreads; ++tid)
        pool.emplace_back([tid, nthreads, &work] {
            for (int j = tid; j < kSampleStreams; j += nthreads) work(j);
        });
    for (auto& th : pool) th.join();
}

}  // namespace detail

// i.i.d. draws from W_s: length geometric(s), first letter uniform over 2m,
// later letters uniform over the 2m-1 non-backtracking choices. Reproducible
// from the seed alone.
inline SampleBatch sample(const MeasureParams& p, size_t batch_size, uint64_t seed) {
    SampleBatch batch{seed, std::vector<Word>(batch_size)};
    const uint64_t stop = detail::stop_threshold(p.s);
    const auto letters = ordered_letters(p.alphabet);
    detail::run_streams([&](int j) {
        Xoshiro256 rng(seed, static_cast<uint64_t>(j));
        for (size_t i = static_cast<size_t>(j); i < batch_size; i += detail::kSampleStreams)
            batch.words[i] = detail::sample_word(rng, letters, stop);
    });
    return batch;
}

struct McEstimate {
    double estimate = 0;
    double stderr_ = 0;
    size_t hits = 0;
    size_t samples = 0;
};

inline McEstimate mc_result(size_t hits, size_t n) {
    McEstimate e;
    e.hits = hits;
    e.samples = n;
    e.estimate = n == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(n);
    e.stderr_ = n == 0 ? 0.0 : std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(n));
    return e;
}

// sample mean of the membership indicator under mu_s, with binomial standard
// error; streams like sample() but without storing the words
template <typename Pred>
inline McEstimate monte_carlo_measure(const MeasureParams& p, Pred&& member, size_t batch_size,
                                      uint64_t seed) {
    const uint64_t stop = detail::stop_threshold(p.s);
    const auto letters = ordered_letters(p.alphabet);
    std::array<size_t, detail::kSampleStreams> hits{};
    detail::run_streams([&](int j) {
        Xoshiro256 rng(seed, static_cast<uint64_t>(j));
        size_t h = 0;
        for (size_t i = static_cast<size_t>(j); i < batch_size; i += detail::kSampleStreams)
            if (member(detail::sample_word(rng, letters, stop))) ++h;
        hits[static_cast<size_t>(j)] = h;
    });
    size_t total = 0;
    for (size_t h : hits) total += h;
    return mc_result(total, batch_size);
}

template <typename Pred>
inline McEstimate monte_carlo_measure(const SampleBatch& batch, Pred&& member) {
    size_t h = 0;
    for (const Word& w : batch.words)
        if (member(w)) ++h;
    return mc_result(h, batch.count());
}

// --- goodness of fit ----------------------------------------------------------

namespace detail {

// regularized upper incomplete gamma Q(a,x) (series / continued fraction)
inline double gamma_q(double a, double x) {
    if (x < 0 || a <= 0) throw internal_error("gamma_q domain");
    if (x == 0) return 1.0;
    double gln = std::lgamma(a);
    if (x < a + 1.0) {
        // P(a,x) by series, return 1 - P
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
        }
        double p = sum * std::exp(-x + a * std::log(x) - gln);
        return 1.0 - p;
    }
    // Q(a,x) by Lentz continued fraction
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - gln) * h;
}

}  // namespace detail

// chi-square p-value for the geometric(s) length law: individual cells while
// the expected count stays >= 5, one tail cell for the rest; df = cells - 1
inline double geometric_length_pvalue(const SampleBatch& batch, const BigRational& s) {
    const double sd = rat_to_double(s);
    const double n = static_cast<double>(batch.count());
    if (batch.count() == 0) throw input_error("empty sample batch");
    size_t maxlen = 0;
    for (const Word& w : batch.words) maxlen = std::max(maxlen, w.length());
    std::vector<double> observed(maxlen + 1, 0.0);
    for (const Word& w : batch.words) observed[w.length()] += 1.0;

    int cells = 0;
    double chi2 = 0.0, tail_obs = 0.0, tail_exp = n;
    for (size_t k = 0; k <= maxlen; ++k) {
        double expect = n * sd * std::pow(1.0 - sd, static_cast<double>(k));
        if (expect < 5.0 || tail_exp - expect < 5.0) {
            for (size_t j = k; j <= maxlen; ++j) tail_obs += observed[j];
            break;
        }
        chi2 += (observed[k] - expect) * (observed[k] - expect) / expect;
        tail_exp -= expect;
        ++cells;
        if (k == maxlen) tail_obs = 0.0;  // everything binned individually
    }
    if (tail_exp > 0) {
        chi2 += (tail_obs - tail_exp) * (tail_obs - tail_exp) / tail_exp;
        ++cells;
    }
    if (cells < 2) throw input_error("too few cells for a chi-square test (increase N)");
    return detail::gamma_q(static_cast<double>(cells - 1) / 2.0, chi2 / 2.0);
}

}  // namespace fgrow

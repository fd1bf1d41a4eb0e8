#pragma once

// Growth series N(t) = sum n_k t^k and everything downstream of them:
// frequency series, Cesaro means, the thick/sparse classification, cogrowth,
// the Godsil and return-frequency transforms, Quenell's eigenvalue formula,
// negligibility, weighted means, combinators for unambiguous constructions,
// and asymptotic density.
//
// A series is either exact (a rational function of t) or a truncated
// coefficient list of known order.  Any operation touching a truncated
// operand yields a truncated result; exactness is never silently upgraded.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "fgrow/automata.hpp"
#include "fgrow/ratfunc.hpp"
#include "fgrow/roots.hpp"
#include "fgrow/stallings.hpp"
#include "fgrow/words.hpp"

namespace fgrow {

// what the coefficients count; purely descriptive, carried through transforms
enum class SeriesKind {
    Counts,              // n_k: reduced words of length k in the set
    PathCounts,          // b_k: closed paths / non-reduced words
    MonoidCounts,        // n*_k: monoid words mapping into the set
    Frequencies,         // f_k = n_k / |S_k|
    ReturnProbabilities  // p_k: random-walk return probabilities
};

struct GrowthSeries {
    SeriesKind kind = SeriesKind::Counts;
    std::optional<RationalFunction> rational;  // exact form when present
    std::vector<BigRational> coeffs;           // otherwise: coeffs[k], k <= order()

    static GrowthSeries from_rational(RationalFunction f, SeriesKind kind) {
        GrowthSeries s;
        s.kind = kind;
        s.rational = std::move(f);
        return s;
    }
    static GrowthSeries from_coefficients(std::vector<BigRational> c, SeriesKind kind) {
        if (c.empty()) throw input_error("truncated series needs at least one coefficient");
        GrowthSeries s;
        s.kind = kind;
        s.coeffs = std::move(c);
        return s;
    }

    bool is_exact() const { return rational.has_value(); }
    // highest coefficient index available; -1 means unlimited (exact form)
    int order() const { return is_exact() ? -1 : static_cast<int>(coeffs.size()) - 1; }

    std::vector<BigRational> prefix(int K) const {
        if (K < 0) throw input_error("negative series order");
        if (is_exact()) return series_coefficients(*rational, K);
        if (K > order()) throw input_error("series is truncated below the requested order");
        return std::vector<BigRational>(coeffs.begin(), coeffs.begin() + K + 1);
    }
};

// N(t) of a regular set: the transfer resolvent counts the reduced words
// themselves, so only the identity needs adding back.
inline GrowthSeries growth_series(const RegularSet& r) {
    RationalFunction n = measure_star_regular(r.dfa);
    if (r.contains_identity) n = n + RationalFunction::constant(1, 't');
    return GrowthSeries::from_rational(std::move(n), SeriesKind::Counts);
}

inline GrowthSeries growth_series(const SubgroupGraph& g) {
    return growth_series(subgroup_language(g));
}

// --- truncated power-series kernel ---------------------------------------------

namespace detail {

using Coeffs = std::vector<BigRational>;

inline Coeffs ts_trim(Coeffs a, int K) {
    a.resize(static_cast<size_t>(K) + 1);
    return a;
}

inline Coeffs ts_mul(const Coeffs& a, const Coeffs& b, int K) {
    Coeffs r(static_cast<size_t>(K) + 1);
    for (size_t i = 0; i < a.size() && i <= static_cast<size_t>(K); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size() && i + j <= static_cast<size_t>(K); ++j) {
            if (b[j] == 0) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

// 1/a mod t^{K+1}; needs a[0] != 0
inline Coeffs ts_inv(const Coeffs& a, int K) {
    if (a.empty() || a[0] == 0) throw input_error("series reciprocal needs a nonzero constant term");
    Coeffs r(static_cast<size_t>(K) + 1);
    r[0] = 1 / a[0];
    for (int k = 1; k <= K; ++k) {
        BigRational s = 0;
        for (int i = 1; i <= k && i < static_cast<int>(a.size()); ++i)
            s += a[static_cast<size_t>(i)] * r[static_cast<size_t>(k - i)];
        r[static_cast<size_t>(k)] = -s / a[0];
    }
    return r;
}

// f(g) mod t^{K+1} by Horner; needs g[0] == 0
inline Coeffs ts_compose(const Coeffs& f, const Coeffs& g, int K) {
    if (!g.empty() && g[0] != 0)
        throw input_error("series composition needs zero constant term in the inner series");
    Coeffs r(static_cast<size_t>(K) + 1);
    for (size_t i = f.size(); i-- > 0;) {
        r = ts_mul(r, g, K);
        r[0] += f[i];
    }
    return r;
}

inline Coeffs poly_coeffs(const Polynomial& p, int K) {
    Coeffs c(static_cast<size_t>(K) + 1);
    for (int i = 0; i <= std::min(K, p.degree()); ++i) c[static_cast<size_t>(i)] = p.coeff(i);
    return c;
}

// natural log of a positive rational without overflow
inline double rat_log(const BigRational& q) {
    if (!(q > 0)) throw internal_error("rat_log of a nonpositive value");
    long en = 0, ed = 0;
    double dn = mpz_get_d_2exp(&en, q.get_num().get_mpz_t());
    double dd = mpz_get_d_2exp(&ed, q.get_den().get_mpz_t());
    return std::log(dn) - std::log(dd) +
           (static_cast<double>(en) - static_cast<double>(ed)) * std::log(2.0);
}

}  // namespace detail

// --- frequencies and Cesaro means -----------------------------------------------

// f_k = n_k / |S_k|.  Exactly: F(t) = n0 + ((2m-1)/2m) (N(t/(2m-1)) - n0),
// since |S_k| = 2m (2m-1)^{k-1} for k >= 1.
inline GrowthSeries frequencies(const GrowthSeries& n, const Alphabet& ab) {
    const int c = ab.letters() - 1;
    if (n.is_exact()) {
        const RationalFunction& N = *n.rational;
        BigRational n0 = N.evaluate(0);  // throws if N is not a power series
        char var = N.var();
        RationalFunction scaled = substitute(
            N, RationalFunction::constant(make_rat(1, c), var) * RationalFunction::variable(var));
        RationalFunction f = RationalFunction::constant(n0, var) +
                             RationalFunction::constant(make_rat(c, c + 1), var) *
                                 (scaled - RationalFunction::constant(n0, var));
        return GrowthSeries::from_rational(std::move(f), SeriesKind::Frequencies);
    }
    std::vector<BigRational> f(n.coeffs.size());
    for (size_t k = 0; k < f.size(); ++k)
        f[k] = n.coeffs[k] / BigRational(sphere_size(ab.rank, static_cast<int>(k)));
    return GrowthSeries::from_coefficients(std::move(f), SeriesKind::Frequencies);
}

// (f_0 + ... + f_n)/(n+1)
inline BigRational cesaro_estimate(const GrowthSeries& f, int n) {
    if (n < 0) throw input_error("Cesaro horizon must be nonnegative");
    std::vector<BigRational> c = f.prefix(n);
    BigRational s = 0;
    for (const auto& x : c) s += x;
    return s / BigRational(n + 1);
}

// --- classification ---------------------------------------------------------------

enum class Classification { Thick, Sparse, IntermediateDensity, Singular };

inline const char* classification_name(Classification c) {
    switch (c) {
        case Classification::Thick: return "Thick";
        case Classification::Sparse: return "Sparse";
        case Classification::IntermediateDensity: return "IntermediateDensity";
        case Classification::Singular: return "Singular";
    }
    return "?";
}

struct GrowthReport {
    std::optional<RationalFunction> mu_of_s;  // exact measure function when rational
    std::optional<BigRational> mu0;           // absent: does not exist / unknown
    std::optional<BigRational> mu1;           // finite value when present
    bool mu1_infinite = false;                // mu1 = +infinity (log-divergent case)
    std::optional<RatInterval> gamma;
    Classification classification = Classification::Sparse;
    std::optional<bool> negligible;  // absent: unknown
    bool certified = false;          // exact-rational pipeline (vs truncated heuristics)
};

// Exact classification of a measure function s -> mu(R)(s).  Validity checks:
// regular at 0, no pole inside (0,1), values in [0,1] at sample points.
// mu0 = mu(0); thick iff mu0 > 0; mu1 is the linear coefficient at s=0.
inline GrowthReport classify(const RationalFunction& mu) {
    const Polynomial& den = mu.den();
    if (den.evaluate(BigRational(0)) == 0)
        throw input_error("not a measure function: pole at s=0");
    Polynomial rad = radical(den);
    if (rad.degree() >= 1) {
        auto chain = sturm_chain(rad);
        int inside = sturm_count(chain, BigRational(0), BigRational(1));
        if (sign_at(rad, BigRational(1)) == 0) --inside;  // (0,1] counts the endpoint
        if (inside > 0) throw input_error("not a measure function: pole inside (0,1)");
    }
    for (const BigRational& s : {make_rat(1, 10), make_rat(1, 2), make_rat(9, 10)}) {
        BigRational v = mu.evaluate(s);
        if (v < 0 || v > 1)
            throw input_error("not a measure function: value outside [0,1] on (0,1)");
    }
    BigRational mu0 = mu.evaluate(0);
    if (mu0 < 0 || mu0 > 1) throw input_error("not a measure function: mu(0) outside [0,1]");

    GrowthReport rep;
    rep.mu_of_s = mu;
    rep.mu0 = mu0;
    rep.mu1 = mu.derivative().evaluate(0);
    rep.classification = mu0 > 0 ? Classification::Thick : Classification::Sparse;
    rep.certified = true;
    return rep;
}

// mu(R)(s) = s F(1-s) from an exact frequency series
inline RationalFunction measure_from_frequencies(const RationalFunction& f) {
    RationalFunction s = RationalFunction::variable('s');
    RationalFunction sub = RationalFunction::constant(1, 's') - s;
    return s * substitute(f, sub);
}

namespace detail {

// Heuristic tags for truncated frequency data (never certified).  Cesaro
// stability over the half vs full horizon signals a positive density (thick);
// otherwise the tail is compared octave against octave: geometric decay means
// a convergent sum (sparse), roughly equal octaves mean a ~1/k tail whose sum
// diverges logarithmically (intermediate), anything wilder is tagged singular.
inline GrowthReport classify_truncated(const std::vector<BigRational>& f) {
    const int K = static_cast<int>(f.size()) - 1;
    if (K < 16) throw input_error("truncated classification needs at least 17 coefficients");
    std::vector<double> fd(f.size());
    for (size_t i = 0; i < f.size(); ++i) fd[i] = rat_to_double(f[i]);

    auto mean = [&](int upto) {
        double s = 0;
        for (int k = 0; k <= upto; ++k) s += fd[static_cast<size_t>(k)];
        return s / (upto + 1);
    };
    double full = mean(K), half = mean(K / 2);
    GrowthReport rep;
    rep.certified = false;
    if (full > 0.01 && std::fabs(full - half) <= 0.1 * std::max(full, half)) {
        rep.classification = Classification::Thick;
        // report the exact Cesaro mean as the density estimate
        BigRational s = 0;
        for (const auto& x : f) s += x;
        rep.mu0 = s / BigRational(K + 1);
        return rep;
    }
    double o0 = 0, o1 = 0;
    for (int k = K / 2 + 1; k <= K; ++k) o0 += fd[static_cast<size_t>(k)];
    for (int k = K / 4 + 1; k <= K / 2; ++k) o1 += fd[static_cast<size_t>(k)];
    if (o0 <= 0.75 * o1 || (o0 == 0 && o1 == 0)) {
        rep.classification = Classification::Sparse;
        rep.mu0 = 0;
        BigRational s = 0;  // partial sum approximates mu1 = sum f_k
        for (const auto& x : f) s += x;
        rep.mu1 = s;
    } else if (o1 > 0 && o0 <= 1.3 * o1) {
        rep.classification = Classification::IntermediateDensity;
        rep.mu0 = 0;
        rep.mu1_infinite = true;
    } else {
        rep.classification = Classification::Singular;
    }
    return rep;
}

}  // namespace detail

// Classification straight from a frequency series; exact input takes the
// certified rational route, truncated input the heuristic one.
inline GrowthReport classify_frequencies(const GrowthSeries& f) {
    if (f.is_exact()) return classify(measure_from_frequencies(*f.rational));
    return detail::classify_truncated(f.coeffs);
}

// --- cogrowth ----------------------------------------------------------------------

struct CogrowthResult {
    RatInterval gamma{BigRational(0), BigRational(0)};
    bool certified = false;
    bool empty = false;           // the zero series
    std::optional<bool> amenable; // set only for declared-normal, certified inputs
};

// gamma(R) = 1/((2m-1) * radius), radius = min pole modulus of N(t); infinite
// radius (polynomial N) gives gamma = 0.  Truncated input yields the root
// estimate max n_k^{1/k}/(2m-1) over the upper half of the window.
inline CogrowthResult cogrowth(const GrowthSeries& n, const Alphabet& ab, bool normal = false) {
    const int c = ab.letters() - 1;
    CogrowthResult res;
    if (n.is_exact()) {
        const RationalFunction& N = *n.rational;
        res.certified = true;
        if (N.is_zero()) {
            res.empty = true;
            if (normal) res.amenable = false;
            return res;
        }
        if (N.den().degree() < 1) {
            // polynomial: finitely many words
            if (normal) res.amenable = false;
            return res;
        }
        auto mm = min_root_modulus(N.den());
        if (!mm) throw internal_error("nonconstant denominator without roots");
        if (mm->iv.lo == 0) throw input_error("growth series has a pole at t=0");
        res.gamma = RatInterval{1 / (BigRational(c) * mm->iv.hi), 1 / (BigRational(c) * mm->iv.lo)};
        if (normal) {
            if (res.gamma.exact())
                res.amenable = res.gamma.lo == 1;
            else if (res.gamma.hi < 1 || res.gamma.lo > 1)
                res.amenable = false;
            // interval straddling 1 without collapsing: leave undetermined
        }
        return res;
    }
    const int K = n.order();
    if (K < 2) throw input_error("cogrowth estimate needs at least 3 coefficients");
    bool any = false;
    double best = 0;
    for (int k = std::max(1, K / 2); k <= K; ++k) {
        const BigRational& nk = n.coeffs[static_cast<size_t>(k)];
        if (!(nk > 0)) continue;
        any = true;
        best = std::max(best, std::exp(detail::rat_log(nk) / k) / c);
    }
    res.certified = false;
    if (!any) return res;  // no mass in the window: estimate 0
    BigRational g(best);
    res.gamma = RatInterval{g, g};
    return res;
}

// --- Godsil and return-frequency transforms ------------------------------------

enum class GodsilDirection { Forward, Inverse };

namespace detail {

// compositional inverse h of g(t) = t/(1+c t^2), i.e. h = t (1 + c h^2),
// computed mod t^{K+1} by fixed-point iteration (order grows by 2 per step)
inline Coeffs godsil_inverse_subst(const BigRational& c, int K) {
    Coeffs h(static_cast<size_t>(K) + 1);
    if (K >= 1) h[1] = 1;
    for (int it = 0; it <= K / 2 + 1; ++it) {
        Coeffs sq = ts_mul(h, h, K);
        Coeffs next(static_cast<size_t>(K) + 1);
        if (K >= 1) next[1] = 1;
        for (int k = 3; k <= K; ++k) next[static_cast<size_t>(k)] = c * sq[static_cast<size_t>(k - 1)];
        if (next == h) break;
        h = std::move(next);
    }
    return h;
}

}  // namespace detail

// Forward: N(t) = (1-t^2)/(1+(2m-1)t^2) * B(t/(1+(2m-1)t^2)), linking the
// non-backtracking count N to the free count B.  Inverse recovers B from N;
// the inverse substitution is algebraic, so that direction is always a
// truncated series (pass trunc_order when the input is exact).
inline GrowthSeries godsil_transform(const GrowthSeries& b, const Alphabet& ab,
                                     GodsilDirection dir, int trunc_order = -1) {
    const BigRational c(ab.letters() - 1);
    if (dir == GodsilDirection::Forward && b.is_exact()) {
        char var = b.rational->var();
        RationalFunction t = RationalFunction::variable(var);
        RationalFunction one = RationalFunction::constant(1, var);
        RationalFunction oneplus = one + RationalFunction::constant(c, var) * t * t;
        RationalFunction g = t / oneplus;
        RationalFunction n = (one - t * t) / oneplus * substitute(*b.rational, g);
        return GrowthSeries::from_rational(std::move(n), SeriesKind::Counts);
    }

    int K = b.is_exact() ? trunc_order : b.order();
    if (b.is_exact() && dir == GodsilDirection::Inverse && trunc_order < 0)
        throw input_error("inverse transform yields a truncated series; pass a truncation order");
    if (!b.is_exact() && trunc_order >= 0) K = std::min(K, trunc_order);
    if (K < 1) throw input_error("transform needs truncation order at least 1");
    detail::Coeffs in = b.prefix(K);

    detail::Coeffs onep(static_cast<size_t>(K) + 1);  // 1 + c t^2
    onep[0] = 1;
    if (K >= 2) onep[2] = c;
    detail::Coeffs out;
    if (dir == GodsilDirection::Forward) {
        detail::Coeffs g(static_cast<size_t>(K) + 1);  // t/(1+c t^2)
        detail::Coeffs inv = detail::ts_inv(onep, K);
        for (int k = K; k >= 1; --k) g[static_cast<size_t>(k)] = inv[static_cast<size_t>(k - 1)];
        detail::Coeffs pre(static_cast<size_t>(K) + 1);  // 1 - t^2
        pre[0] = 1;
        if (K >= 2) pre[2] = -1;
        out = detail::ts_mul(detail::ts_mul(pre, inv, K), detail::ts_compose(in, g, K), K);
        return GrowthSeries::from_coefficients(std::move(out), SeriesKind::Counts);
    }
    // inverse: B(u) = N(h(u)) (1 + c h^2)/(1 - h^2)
    detail::Coeffs h = detail::godsil_inverse_subst(c, K);
    detail::Coeffs hsq = detail::ts_mul(h, h, K);
    detail::Coeffs top(static_cast<size_t>(K) + 1), bot(static_cast<size_t>(K) + 1);
    top[0] = 1;
    bot[0] = 1;
    for (int k = 2; k <= K; ++k) {
        top[static_cast<size_t>(k)] = c * hsq[static_cast<size_t>(k)];
        bot[static_cast<size_t>(k)] = -hsq[static_cast<size_t>(k)];
    }
    out = detail::ts_mul(detail::ts_mul(detail::ts_compose(in, h, K), top, K),
                         detail::ts_inv(bot, K), K);
    return GrowthSeries::from_coefficients(std::move(out), SeriesKind::PathCounts);
}

// F(t) = (1/2m) ((2m-1)^2 - t^2)/((2m-1) + t^2) * P(2mt/((2m-1)+t^2)) + 1/2m:
// frequency series of a normal subgroup from its walk return probabilities.
inline GrowthSeries return_frequency_transform(const GrowthSeries& p, const Alphabet& ab,
                                               int trunc_order = -1) {
    const int tm = ab.letters();
    const BigRational c(tm - 1), invm = make_rat(1, tm);
    if (p.is_exact()) {
        char var = p.rational->var();
        RationalFunction t = RationalFunction::variable(var);
        RationalFunction cc = RationalFunction::constant(c, var);
        RationalFunction denom = cc + t * t;
        RationalFunction g = RationalFunction::constant(BigRational(tm), var) * t / denom;
        RationalFunction f = RationalFunction::constant(invm, var) *
                                 ((cc * cc - t * t) / denom) * substitute(*p.rational, g) +
                             RationalFunction::constant(invm, var);
        return GrowthSeries::from_rational(std::move(f), SeriesKind::Frequencies);
    }
    int K = p.order();
    if (trunc_order >= 0) K = std::min(K, trunc_order);
    if (K < 1) throw input_error("transform needs truncation order at least 1");
    detail::Coeffs in = p.prefix(K);
    detail::Coeffs denom(static_cast<size_t>(K) + 1);  // c + t^2
    denom[0] = c;
    if (K >= 2) denom[2] = 1;
    detail::Coeffs dinv = detail::ts_inv(denom, K);
    detail::Coeffs g(static_cast<size_t>(K) + 1);  // 2mt/(c+t^2)
    for (int k = K; k >= 1; --k)
        g[static_cast<size_t>(k)] = BigRational(tm) * dinv[static_cast<size_t>(k - 1)];
    detail::Coeffs pre(static_cast<size_t>(K) + 1);  // (c^2 - t^2)/(c + t^2)
    pre[0] = c * c;
    if (K >= 2) pre[2] = -1;
    pre = detail::ts_mul(pre, dinv, K);
    detail::Coeffs out = detail::ts_mul(pre, detail::ts_compose(in, g, K), K);
    for (auto& x : out) x *= invm;
    out[0] += invm;
    return GrowthSeries::from_coefficients(std::move(out), SeriesKind::Frequencies);
}

// double-precision point evaluation of the same transform, for horizons where
// exact series composition is too wide; p[k] = p_k
inline double return_frequency_value(const std::vector<double>& p, const Alphabet& ab, double t0) {
    const double tm = ab.letters(), c = tm - 1;
    const double x = tm * t0 / (c + t0 * t0);
    double px = 0, xp = 1;
    for (double pk : p) {
        px += pk * xp;
        xp *= x;
    }
    return (1.0 / tm) * ((c * c - t0 * t0) / (c + t0 * t0)) * px + 1.0 / tm;
}

// N*(t) = (1/n) sum_i 1/(1 - lambda_i t) over the spectrum of the quotient's
// adjacency matrix, given as its characteristic polynomial chi: with rev the
// coefficient reversal of chi/lc, N*(t) = (1/n)(n - t rev'(t)/rev(t)).
inline GrowthSeries quenell(const Polynomial& chi, long index) {
    if (chi.is_zero()) throw input_error("zero characteristic polynomial");
    if (index < 1 || chi.degree() != static_cast<int>(index))
        throw input_error("index must equal the degree of the characteristic polynomial");
    Polynomial monic = (1 / chi.leading()) * chi;
    Polynomial rev = monic.reversed();  // drops zero eigenvalues; rev(0) = 1
    Polynomial n{BigRational(index)};
    RationalFunction nstar =
        RationalFunction(n * rev - rev.derivative().shifted(1), n * rev, 't');
    if (nstar.evaluate(0) != 1) throw internal_error("return series must start at 1");
    return GrowthSeries::from_rational(std::move(nstar), SeriesKind::MonoidCounts);
}

// --- negligibility and weighted means -------------------------------------------

// r(z) = sum f_k z^k is the frequency series; the set is polynomially
// negligible iff r is regular at z = 1.
inline bool negligibility_test(const RationalFunction& r) {
    return r.den().evaluate(BigRational(1)) != 0;
}

inline std::optional<bool> negligibility_of(const GrowthSeries& f) {
    if (!f.is_exact()) return std::nullopt;  // truncated data cannot certify regularity
    return negligibility_test(*f.rational);
}

struct WeightedMean {
    RationalFunction series;  // G(z) = (1-z) d^n/dz^n ( z^{n+1} r(z) )
    int pole_order = 0;       // order of the pole of G at z=1; growth degree on average
};

// weighted series for the weight g(w) = (|w|+1)...(|w|+n): differentiation
// turns sum E_k z^k into sum (k+1)...(k+n) E_k z^k up to the z-power bookkeeping
inline WeightedMean weighted_mean(const RationalFunction& r, int n) {
    if (n < 0) throw input_error("weight degree must be nonnegative");
    char var = r.var();
    RationalFunction zn =
        RationalFunction::from_poly(Polynomial::monomial(1, n + 1), var);
    RationalFunction g = differentiate(zn * r, n);
    RationalFunction one = RationalFunction::constant(1, var);
    g = (one - RationalFunction::variable(var)) * g;
    WeightedMean wm{g, 0};
    Polynomial den = g.den();
    Polynomial zm1 = Polynomial::variable() - Polynomial(BigRational(1));
    while (den.degree() >= 1 && den.evaluate(BigRational(1)) == 0) {
        den = Polynomial::divexact(den, zm1);
        ++wm.pole_order;
    }
    return wm;
}

// --- combinators for unambiguous constructions ----------------------------------

namespace detail {

inline int common_order(const GrowthSeries& a, const GrowthSeries& b) {
    if (!a.is_exact() && !b.is_exact()) return std::min(a.order(), b.order());
    return a.is_exact() ? b.order() : a.order();
}

}  // namespace detail

// disjoint union: counts add
inline GrowthSeries gf_union(const GrowthSeries& a, const GrowthSeries& b) {
    if (a.is_exact() && b.is_exact())
        return GrowthSeries::from_rational(*a.rational + *b.rational, a.kind);
    int K = detail::common_order(a, b);
    detail::Coeffs ca = a.prefix(K), cb = b.prefix(K);
    for (size_t i = 0; i < ca.size(); ++i) ca[i] += cb[i];
    return GrowthSeries::from_coefficients(std::move(ca), a.kind);
}

// unambiguous concatenation: counts multiply
inline GrowthSeries gf_concat(const GrowthSeries& a, const GrowthSeries& b) {
    if (a.is_exact() && b.is_exact())
        return GrowthSeries::from_rational(*a.rational * *b.rational, a.kind);
    int K = detail::common_order(a, b);
    return GrowthSeries::from_coefficients(detail::ts_mul(a.prefix(K), b.prefix(K), K), a.kind);
}

// g(t) -> g(t^2): every word doubled in length (e.g. squares of a code)
inline GrowthSeries gf_square_arg(const GrowthSeries& a) {
    if (a.is_exact()) {
        char var = a.rational->var();
        RationalFunction t2 = RationalFunction::from_poly(Polynomial::monomial(1, 2), var);
        return GrowthSeries::from_rational(substitute(*a.rational, t2), a.kind);
    }
    detail::Coeffs out(2 * a.coeffs.size() - 1);
    for (size_t i = 0; i < a.coeffs.size(); ++i) out[2 * i] = a.coeffs[i];
    return GrowthSeries::from_coefficients(std::move(out), a.kind);
}

// --- asymptotic density -----------------------------------------------------------

struct DensityEstimate {
    BigRational value;                 // rho = limsup f_k (exact) or window max
    bool certified = false;
    std::optional<bool> limit_exists;  // exact case: whether lim f_k itself exists
};

namespace detail {

inline int euler_phi(int n) {
    int r = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

inline const Polynomial& cyclotomic(int d, std::map<int, Polynomial>& cache) {
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
    std::vector<BigRational> xd(static_cast<size_t>(d) + 1);
    xd[0] = -1;
    xd[static_cast<size_t>(d)] = 1;
    Polynomial p{std::vector<BigRational>(xd)};
    for (int e = 1; e < d; ++e)
        if (d % e == 0) p = Polynomial::divexact(p, cyclotomic(e, cache));
    return cache.emplace(d, std::move(p)).first->second;
}

}  // namespace detail

// limsup of the coefficients of an exact frequency series.  Bounded rational
// coefficients force every unit-circle pole to be simple and at a root of
// unity, so the denominator splits as (cyclotomic part) * V with V pole-free
// on the closed unit disk; modulo decaying terms f_k is then periodic, and
// rho is the largest value over one period.  Anything outside that shape is
// rejected rather than guessed at.
inline DensityEstimate density_estimate(const GrowthSeries& f) {
    if (f.is_exact()) {
        const RationalFunction& F = *f.rational;
        DensityEstimate est;
        est.certified = true;
        if (F.den().evaluate(0) == 0) throw input_error("frequency series has a pole at 0");
        if (F.is_poly()) {
            est.value = 0;  // finitely many nonzero frequencies
            est.limit_exists = true;
            return est;
        }
        Polynomial rem = F.den();
        std::map<int, Polynomial> cache;
        std::vector<int> orders;
        Polynomial cyc(BigRational(1));
        const int d0 = rem.degree();
        for (int d = 1; d <= 2 * d0 * d0 + 4 && rem.degree() >= 1; ++d) {
            if (detail::euler_phi(d) > rem.degree()) continue;
            const Polynomial& phi = detail::cyclotomic(d, cache);
            int mult = 0;
            for (;;) {
                auto [q, r] = Polynomial::divmod(rem, phi);
                if (!r.is_zero()) break;
                rem = std::move(q);
                ++mult;
            }
            if (mult >= 2)
                throw input_error("not a bounded frequency series: repeated pole on the unit circle");
            if (mult == 1) {
                orders.push_back(d);
                cyc *= phi;
            }
        }
        if (rem.degree() >= 1) {
            auto mm = min_root_modulus(rem, 96);
            if (!mm) throw internal_error("nonconstant polynomial without roots");
            if (mm->iv.hi <= 1)
                throw input_error("not a bounded frequency series: pole inside the unit disk");
            if (!(mm->iv.lo > 1))
                throw input_error("cannot certify the pole configuration near the unit circle");
        }
        if (orders.empty()) {
            est.value = 0;  // all poles strictly outside: f_k -> 0
            est.limit_exists = true;
            return est;
        }
        long long period = 1;
        for (int d : orders) {
            period = std::lcm<long long>(period, d);
            if (period > 100000) throw resource_error("unit-circle pole period too large");
        }
        const int D = static_cast<int>(period);
        std::vector<BigRational> om(static_cast<size_t>(D) + 1);
        om[0] = 1;
        om[static_cast<size_t>(D)] = -1;
        Polynomial one_minus_tD{std::move(om)};
        // F = S + B/(1-t^D) + W/V with deg B < D; only B matters asymptotics-wise
        Polynomial numer = F.num() * Polynomial::divexact(one_minus_tD, cyc);
        Polynomial den2 = one_minus_tD * rem;
        Polynomial r = Polynomial::divmod(numer, den2).second;
        auto [g, u, v] = poly_extgcd(one_minus_tD, rem);
        if (g.degree() != 0) throw internal_error("cyclotomic and outer parts share a root");
        Polynomial part = (1 / g.coeff(0)) * (r * v);
        Polynomial b = Polynomial::divmod(part, one_minus_tD).second;
        BigRational best = b.coeff(0);
        bool all_equal = true;
        for (int k = 1; k < D; ++k) {
            BigRational sk = b.coeff(k);
            if (sk != b.coeff(0)) all_equal = false;
            if (sk > best) best = sk;
        }
        est.value = best;
        est.limit_exists = all_equal;
        return est;
    }
    const int K = f.order();
    if (K + 1 < 32) throw input_error("density estimate needs at least 32 coefficients");
    DensityEstimate est;
    est.certified = false;
    BigRational best = 0;
    for (int k = (3 * K) / 4; k <= K; ++k) best = std::max(best, f.coeffs[static_cast<size_t>(k)]);
    est.value = best;
    return est;
}

// --- one-stop report ---------------------------------------------------------------

// Everything the classification pipeline can say about a growth series of
// counts: measure function and tags, cogrowth, negligibility.
inline GrowthReport analyze(const GrowthSeries& n, const Alphabet& ab, bool normal = false) {
    GrowthSeries f = frequencies(n, ab);
    GrowthReport rep = classify_frequencies(f);
    CogrowthResult cg = cogrowth(n, ab, normal);
    if (cg.certified || !n.is_exact()) rep.gamma = cg.gamma;
    rep.negligible = negligibility_of(f);
    return rep;
}

}  // namespace fgrow

#pragma once

// Exact real-root machinery for denominators of growth/measure series:
//   - Sturm chains and half-open root counting with rational endpoints
//   - Yun squarefree decomposition (multiplicities)
//   - isolation by bisection, with simplest-rational probing so nice roots
//     (1/3, 1, ...) are recognized exactly instead of trapped in an interval
//   - certified minimum root modulus over C via the composed-product
//     resultant R(x) = Res_y(D(y), y^n D(x/y)), whose roots are the pairwise
//     products of roots of D; its least positive real root is (min |root|)^2.

#include <optional>
#include <utility>
#include <vector>

#include "fgrow/poly_matrix.hpp"

namespace fgrow {

struct RatInterval {
    BigRational lo, hi;
    bool exact() const { return lo == hi; }
    BigRational mid() const { return (lo + hi) / 2; }
    double approx() const { return rat_to_double(mid()); }
};

inline int rat_sign(const BigRational& q) { return q < 0 ? -1 : (q > 0 ? 1 : 0); }

inline int sign_at(const Polynomial& p, const BigRational& x) { return rat_sign(p.evaluate(x)); }

// Sturm chain of p (use the radical of p for counting if p may have repeated
// roots). Remainders are scaled by positive constants only, which preserves
// the sign-variation property.
inline std::vector<Polynomial> sturm_chain(const Polynomial& p) {
    std::vector<Polynomial> chain;
    if (p.is_zero()) return chain;
    chain.push_back(p);
    Polynomial d = p.derivative();
    if (d.is_zero()) return chain;
    chain.push_back(d);
    for (;;) {
        const Polynomial& a = chain[chain.size() - 2];
        const Polynomial& b = chain[chain.size() - 1];
        Polynomial r = Polynomial::divmod(a, b).second;
        if (r.is_zero()) break;
        r = -r;
        // positive rescale to keep coefficients small
        auto [prim, scale] = r.primitive();
        chain.push_back(scale > 0 ? prim : -prim);
    }
    return chain;
}

inline int sturm_variations(const std::vector<Polynomial>& chain, const BigRational& x) {
    int vars = 0, prev = 0;
    for (const auto& p : chain) {
        int s = sign_at(p, x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++vars;
        prev = s;
    }
    return vars;
}

// Number of distinct real roots of chain[0] in (a, b]; requires p(a) != 0.
inline int sturm_count(const std::vector<Polynomial>& chain, const BigRational& a,
                       const BigRational& b) {
    if (chain.empty()) return 0;
    return sturm_variations(chain, a) - sturm_variations(chain, b);
}

// Strict upper bound on the modulus of all complex roots.
inline BigRational cauchy_root_bound(const Polynomial& p) {
    if (p.degree() < 1) return 1;
    BigRational lead = rat_abs(p.leading()), mx = 0;
    for (int i = 0; i < p.degree(); ++i) {
        BigRational v = rat_abs(p.coeff(i)) / lead;
        if (v > mx) mx = v;
    }
    return mx + 1;
}

// The rational with smallest denominator (then smallest numerator) in [a, b].
inline BigRational simplest_rational_between(const BigRational& a, const BigRational& b) {
    if (a > b) throw internal_error("simplest_rational_between: empty interval");
    if (a <= 0 && 0 <= b) return 0;
    if (b < 0) return -simplest_rational_between(-b, -a);
    // 0 < a <= b
    BigInt fa;
    mpz_fdiv_q(fa.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    BigRational n(fa);
    if (n + 1 <= b) {
        // an integer lies in [a, b]
        return a <= n ? n : n + 1;
    }
    if (a == n) return a;
    BigRational frac = simplest_rational_between(1 / (b - n), 1 / (a - n));
    return n + 1 / frac;
}

// Yun's algorithm: p = prod f_i^i with the f_i squarefree and coprime.
// Returns (factor, multiplicity) pairs, factors primitive with positive lead.
inline std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p) {
    std::vector<std::pair<Polynomial, int>> out;
    if (p.degree() < 1) return out;
    Polynomial d = p.derivative();
    Polynomial g = poly_gcd(p, d);
    Polynomial w = Polynomial::divexact(p, g);
    Polynomial y = Polynomial::divexact(d, g);
    Polynomial z = y - w.derivative();
    int i = 1;
    while (w.degree() > 0 || !z.is_zero()) {
        if (w.degree() == 0) break;
        Polynomial gi = poly_gcd(w, z);
        if (gi.degree() > 0) out.emplace_back(gi.primitive().first, i);
        w = Polynomial::divexact(w, gi.degree() > 0 ? gi : Polynomial(BigRational(1)));
        y = Polynomial::divexact(z, gi.degree() > 0 ? gi : Polynomial(BigRational(1)));
        z = y - w.derivative();
        ++i;
    }
    return out;
}

// Squarefree radical: product of the distinct irreducible factors.
inline Polynomial radical(const Polynomial& p) {
    if (p.degree() < 1) return p.is_zero() ? p : Polynomial(BigRational(1));
    Polynomial g = poly_gcd(p, p.derivative());
    return Polynomial::divexact(p, g).primitive().first;
}

namespace detail {

// Bisect a width-one-root interval (signs differ at the ends) down to the
// requested width, probing for an exact rational root along the way.
inline RatInterval refine_root(const Polynomial& p, BigRational lo, BigRational hi, int bits) {
    int slo = sign_at(p, lo);
    BigRational width_target = make_rat(BigInt(1), int_pow(BigInt(2), static_cast<unsigned long>(bits)));
    int iter = 0;
    while (hi - lo > width_target) {
        if (iter % 6 == 0) {
            BigRational s = simplest_rational_between(lo, hi);
            if (p.evaluate(s) == 0) return {s, s};
        }
        BigRational mid = (lo + hi) / 2;
        int sm = sign_at(p, mid);
        if (sm == 0) return {mid, mid};
        if (sm == slo)
            lo = mid;
        else
            hi = mid;
        ++iter;
    }
    BigRational s = simplest_rational_between(lo, hi);
    if (p.evaluate(s) == 0) return {s, s};
    return {lo, hi};
}

// Isolating intervals for all roots of squarefree p in (0, bound], ascending.
inline void isolate_positive(const Polynomial& p, std::vector<RatInterval>& out, int bits) {
    Polynomial q = p;  // exact rational roots get divided out as found
    while (q.evaluate(0) == 0) q = Polynomial::divexact(q, Polynomial::variable());
    if (q.degree() < 1) return;
    std::vector<Polynomial> chain = sturm_chain(q);
    BigRational bound = cauchy_root_bound(q);
    struct Seg {
        BigRational lo, hi;
        int count;
    };
    std::vector<Seg> work{{BigRational(0), bound, sturm_count(chain, 0, bound)}};
    std::vector<RatInterval> found;
    while (!work.empty()) {
        Seg s = work.back();
        work.pop_back();
        if (s.count == 0) continue;
        if (s.count == 1) {
            // endpoint signs: single root in (lo, hi]; p(hi) may be 0
            if (q.evaluate(s.hi) == 0) {
                found.push_back({s.hi, s.hi});
                continue;
            }
            found.push_back(refine_root(q, s.lo, s.hi, bits));
            continue;
        }
        BigRational mid = (s.lo + s.hi) / 2;
        if (q.evaluate(mid) == 0) {
            found.push_back({mid, mid});
            // divide the root out so Sturm endpoints stay regular
            Polynomial lin = Polynomial::variable() - Polynomial(mid);
            q = Polynomial::divexact(q, lin);
            chain = sturm_chain(q);
            work.push_back({s.lo, mid, sturm_count(chain, s.lo, mid)});
            work.push_back({mid, s.hi, sturm_count(chain, mid, s.hi)});
            continue;
        }
        int left = sturm_count(chain, s.lo, mid);
        work.push_back({s.lo, mid, left});
        work.push_back({mid, s.hi, s.count - left});
    }
    std::sort(found.begin(), found.end(),
              [](const RatInterval& a, const RatInterval& b) { return a.lo < b.lo; });
    for (auto& iv : found) out.push_back(iv);
}

}  // namespace detail

struct RealRoot {
    RatInterval iv;
    int multiplicity;
};

// All real roots of p with multiplicities, as exact points or isolating
// intervals, ascending. `bits` controls interval width (<= 2^-bits).
inline std::vector<RealRoot> real_roots(const Polynomial& p, int bits = 48) {
    std::vector<RealRoot> out;
    if (p.degree() < 1) return out;
    // factor out powers of t
    Polynomial q = p;
    int zero_mult = 0;
    while (q.coeff(0) == 0 && q.degree() >= 1) {
        q = Polynomial::divexact(q, Polynomial::variable());
        ++zero_mult;
    }
    for (const auto& [factor, mult] : squarefree_decomposition(q)) {
        std::vector<RatInterval> pos, negd;
        detail::isolate_positive(factor, pos, bits);
        Polynomial mirrored = factor.scaled_arg(BigRational(-1));
        detail::isolate_positive(mirrored, negd, bits);
        for (const auto& iv : negd) out.push_back({{-iv.hi, -iv.lo}, mult});
        for (const auto& iv : pos) out.push_back({iv, mult});
    }
    if (zero_mult > 0) out.push_back({{BigRational(0), BigRational(0)}, zero_mult});
    std::sort(out.begin(), out.end(),
              [](const RealRoot& a, const RealRoot& b) { return a.iv.lo < b.iv.lo; });
    return out;
}

// Integer Bareiss determinant (exact divisions).
inline BigInt int_det(IntMatrix A) {
    const size_t n = A.size();
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        size_t piv = k;
        while (piv < n && A[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(A[piv], A[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                BigInt v = A[k][k] * A[i][j] - A[i][k] * A[k][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                A[i][j] = v;
            }
            A[i][k] = 0;
        }
        prev = A[k][k];
    }
    return sign > 0 ? A[n - 1][n - 1] : -A[n - 1][n - 1];
}

// Newton interpolation through (x_i, y_i), exact.
inline Polynomial poly_interpolate(const std::vector<BigRational>& xs,
                                   const std::vector<BigRational>& ys) {
    const size_t n = xs.size();
    std::vector<BigRational> dd(ys);  // divided differences, updated in place
    Polynomial result, basis(BigRational(1));
    for (size_t k = 0; k < n; ++k) {
        if (k > 0) {
            for (size_t i = n - 1; i >= k; --i)
                dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
            basis *= Polynomial::variable() - Polynomial(xs[k - 1]);
        }
        result += dd[k] * basis;
    }
    return result;
}

// R(x) = Res_y(D(y), y^n D(x/y)): roots of R are all pairwise products of
// roots of D. Requires D(0) != 0 so the second argument keeps y-degree n.
inline Polynomial root_product_resultant(const Polynomial& Dq) {
    Polynomial D = Dq.primitive().first;
    int n = D.degree();
    if (n < 1) throw internal_error("root_product_resultant: constant polynomial");
    if (D.coeff(0) == 0) throw internal_error("root_product_resultant: zero constant term");
    std::vector<BigInt> d(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        BigRational c = D.coeff(i);
        if (c.get_den() != 1) throw internal_error("primitive polynomial not integral");
        d[static_cast<size_t>(i)] = c.get_num();
    }
    int points = n * n + 1;
    std::vector<BigRational> xs, ys;
    xs.reserve(static_cast<size_t>(points));
    ys.reserve(static_cast<size_t>(points));
    for (int pt = 0; pt < points; ++pt) {
        BigInt x(pt);
        // g(y) = sum_j d_j x^j y^{n-j}; Sylvester matrix of (D, g), size 2n
        std::vector<BigInt> g(static_cast<size_t>(n) + 1);  // by y-degree, ascending
        BigInt xp = 1;
        for (int j = 0; j <= n; ++j) {
            g[static_cast<size_t>(n - j)] = d[static_cast<size_t>(j)] * xp;
            xp *= x;
        }
        size_t N = 2 * static_cast<size_t>(n);
        IntMatrix S(N, std::vector<BigInt>(N, 0));
        for (int r = 0; r < n; ++r)  // rows of D coefficients, descending
            for (int j = 0; j <= n; ++j) S[static_cast<size_t>(r)][static_cast<size_t>(r + j)] = d[static_cast<size_t>(n - j)];
        for (int r = 0; r < n; ++r)
            for (int j = 0; j <= n; ++j)
                S[static_cast<size_t>(n + r)][static_cast<size_t>(r + j)] = g[static_cast<size_t>(n - j)];
        xs.emplace_back(BigInt(pt));
        ys.emplace_back(int_det(std::move(S)));
    }
    return poly_interpolate(xs, ys);
}

struct MinModulus {
    RatInterval iv;   // bounds for min |root|; iv.exact() means exact value
};

// Certified minimum modulus over all complex roots of D; nullopt when D has
// no roots. Exact when the value is rational (recognized via the resultant).
inline std::optional<MinModulus> min_root_modulus(const Polynomial& Dq, int bits = 48) {
    Polynomial D = Dq;
    if (D.is_zero()) throw internal_error("min_root_modulus of zero polynomial");
    // roots at the origin
    if (D.coeff(0) == 0 && D.degree() >= 1)
        return MinModulus{{BigRational(0), BigRational(0)}};
    if (D.degree() < 1) return std::nullopt;
    Polynomial R = radical(root_product_resultant(radical(D)));
    // minimal positive real root of R is (min modulus)^2; it exists because
    // beta * conj(beta) is a positive real root for any min-modulus root beta
    std::vector<Polynomial> chain = sturm_chain(R);
    BigRational lo = 0, hi = cauchy_root_bound(R);
    if (sturm_count(chain, lo, hi) < 1)
        throw internal_error("composed resultant lost its positive real root");
    BigRational width_target = make_rat(BigInt(1), int_pow(BigInt(2), static_cast<unsigned long>(2 * bits)));
    int iter = 0;
    while (hi - lo > width_target) {
        if (iter % 6 == 0 && lo > 0) {
            BigRational s = simplest_rational_between(lo, hi);
            if (R.evaluate(s) == 0 && sturm_count(chain, lo, s) == 1) {
                lo = hi = s;
                break;
            }
        }
        BigRational mid = (lo + hi) / 2;
        int c = sturm_count(chain, lo, mid);
        if (c >= 1) {
            if (c == 1 && R.evaluate(mid) == 0) {
                lo = hi = mid;  // mid is the least positive root, exactly
                break;
            }
            hi = mid;  // least root stays in (lo, hi]
        } else {
            lo = mid;  // c == 0 implies R(mid) != 0, lo stays regular
        }
        ++iter;
    }
    if (lo == hi) {
        auto s = rat_sqrt_exact(lo);
        if (s) return MinModulus{{*s, *s}};
    }
    // rational sqrt bounds: sqrt(p/q) in [ floor(sqrt(p*q*4^b))/(q*2^b), +1 ulp ]
    auto sqrt_lower = [&](const BigRational& v) {
        BigInt scaled = v.get_num() * v.get_den() * int_pow(BigInt(4), static_cast<unsigned long>(bits));
        BigInt s;
        mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
        return make_rat(s, v.get_den() * int_pow(BigInt(2), static_cast<unsigned long>(bits)));
    };
    auto sqrt_upper = [&](const BigRational& v) {
        BigInt scaled = v.get_num() * v.get_den() * int_pow(BigInt(4), static_cast<unsigned long>(bits));
        BigInt s;
        mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
        return make_rat(s + 1, v.get_den() * int_pow(BigInt(2), static_cast<unsigned long>(bits)));
    };
    return MinModulus{{sqrt_lower(lo), sqrt_upper(hi)}};
}

// Extended gcd over Q[t]: returns (g, u, v) with u*a + v*b = g (g monic-ish,
// primitive positive-lead when nonzero).
inline std::tuple<Polynomial, Polynomial, Polynomial> poly_extgcd(const Polynomial& a,
                                                                  const Polynomial& b) {
    Polynomial r0 = a, r1 = b;
    Polynomial s0(BigRational(1)), s1;
    Polynomial t0, t1(BigRational(1));
    while (!r1.is_zero()) {
        auto [q, r] = Polynomial::divmod(r0, r1);
        Polynomial s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (!r0.is_zero()) {
        BigRational lead = r0.leading();
        BigRational inv = 1 / lead;
        r0 = inv * r0;
        s0 = inv * s0;
        t0 = inv * t0;
    }
    return {r0, s0, t0};
}

// Poles of a canonical rational function: by canonicality every denominator
// root is a genuine pole. Real locations come with multiplicities; the
// minimum modulus over all complex poles bounds the convergence radius.
struct PoleReport {
    std::vector<RealRoot> real_poles;
    std::optional<MinModulus> min_modulus;  // nullopt when f is a polynomial
};

inline PoleReport poles(const RationalFunction& f, int bits = 48) {
    PoleReport r;
    if (f.den().degree() < 1) return r;
    r.real_poles = real_roots(f.den(), bits);
    r.min_modulus = min_root_modulus(f.den(), bits);
    return r;
}

}  // namespace fgrow

#pragma once

// Dense univariate polynomials over the rationals, ascending coefficient
// order, no trailing zeros. Zero polynomial has degree -1.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "fgrow/rational.hpp"

namespace fgrow {

class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(const BigRational& c) {
        if (c != 0) c_.push_back(c);
    }
    explicit Polynomial(std::vector<BigRational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial monomial(const BigRational& c, int k) {
        if (c == 0) return {};
        std::vector<BigRational> v(static_cast<size_t>(k) + 1);
        v.back() = c;
        return Polynomial(std::move(v));
    }
    static Polynomial variable() { return monomial(1, 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<BigRational>& coeffs() const { return c_; }

    BigRational coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
        return c_[static_cast<size_t>(k)];
    }
    BigRational leading() const { return c_.empty() ? BigRational(0) : c_.back(); }

    // Lowest nonzero coefficient and its index; {0, -1} for the zero poly.
    std::pair<BigRational, int> low_term() const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) return {c_[i], static_cast<int>(i)};
        return {BigRational(0), -1};
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<BigRational> v(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < v.size(); ++i) {
            if (i < a.c_.size()) v[i] += a.c_[i];
            if (i < b.c_.size()) v[i] += b.c_[i];
        }
        return Polynomial(std::move(v));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<BigRational> v(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < v.size(); ++i) {
            if (i < a.c_.size()) v[i] += a.c_[i];
            if (i < b.c_.size()) v[i] -= b.c_[i];
        }
        return Polynomial(std::move(v));
    }
    Polynomial operator-() const {
        Polynomial r(*this);
        for (auto& c : r.c_) c = -c;
        return r;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigRational> v(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j] == 0) continue;
                v[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return Polynomial(std::move(v));
    }
    friend Polynomial operator*(const BigRational& s, const Polynomial& a) {
        if (s == 0) return {};
        Polynomial r(a);
        for (auto& c : r.c_) c *= s;
        return r;
    }
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    bool operator==(const Polynomial& o) const { return c_ == o.c_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    // Multiply by x^k.
    Polynomial shifted(int k) const {
        if (is_zero()) return {};
        std::vector<BigRational> v(c_.size() + static_cast<size_t>(k));
        std::copy(c_.begin(), c_.end(), v.begin() + k);
        return Polynomial(std::move(v));
    }

    Polynomial pow(unsigned e) const {
        Polynomial r(BigRational(1)), b(*this);
        while (e) {
            if (e & 1u) r *= b;
            b *= b;
            e >>= 1u;
        }
        return r;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<BigRational> v(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = BigRational(static_cast<long>(i)) * c_[i];
        return Polynomial(std::move(v));
    }

    BigRational evaluate(const BigRational& x) const {
        BigRational acc = 0;
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    // Field division over Q: a = q*b + r with deg r < deg b.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
        if (b.is_zero()) throw internal_error("polynomial division by zero");
        Polynomial r(a), q;
        std::vector<BigRational> qc;
        int db = b.degree();
        if (r.degree() >= db) qc.assign(static_cast<size_t>(r.degree() - db) + 1, BigRational(0));
        const BigRational lead = b.leading();
        while (!r.is_zero() && r.degree() >= db) {
            int k = r.degree() - db;
            BigRational f = r.leading() / lead;
            qc[static_cast<size_t>(k)] = f;
            r -= (f * b).shifted(k);
        }
        return {Polynomial(std::move(qc)), r};
    }

    // Exact division; throws if the remainder is nonzero (used where theory
    // guarantees divisibility, e.g. Bareiss pivots).
    static Polynomial divexact(const Polynomial& a, const Polynomial& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw internal_error("inexact polynomial division");
        return q;
    }

    // x^deg * p(1/x): coefficient reversal (for reversed char polys etc.)
    Polynomial reversed() const {
        std::vector<BigRational> v(c_.rbegin(), c_.rend());
        return Polynomial(std::move(v));
    }

    // p(c*x) for a rational constant c.
    Polynomial scaled_arg(const BigRational& s) const {
        std::vector<BigRational> v(c_);
        BigRational p = 1;
        for (size_t i = 1; i < v.size(); ++i) {
            p *= s;
            v[i] *= p;
        }
        return Polynomial(std::move(v));
    }

    // Integer multiple with coprime integer coefficients and positive lowest
    // nonzero coefficient; also returns the scalar it was multiplied by.
    std::pair<Polynomial, BigRational> primitive() const {
        if (is_zero()) return {{}, BigRational(1)};
        BigInt l = 1, g = 0;
        for (const auto& c : c_) {
            if (c == 0) continue;
            BigInt d = c.get_den();
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        }
        std::vector<BigRational> v(c_);
        for (auto& c : v) c *= BigRational(l);
        for (const auto& c : v) {
            if (c == 0) continue;
            BigInt n = c.get_num();
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
        }
        BigRational scale = make_rat(l, g);
        if (low_term().first < 0) scale = -scale;
        std::vector<BigRational> w(c_);
        for (auto& c : w) c *= scale;
        return {Polynomial(std::move(w)), scale};
    }
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

  private:

    std::vector<BigRational> c_;
};

// Primitive gcd (positive leading coefficient); gcd(0,0) = 0.
inline Polynomial poly_gcd(Polynomial a, Polynomial b) {
    if (a.is_zero() && b.is_zero()) return {};
    a = a.primitive().first;
    b = b.primitive().first;
    while (!b.is_zero()) {
        Polynomial r = Polynomial::divmod(a, b).second;
        a = std::move(b);
        b = r.is_zero() ? Polynomial() : r.primitive().first;
    }
    if (a.leading() < 0) a = -a;
    return a;
}

inline Polynomial poly_lcm(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return Polynomial::divexact(a * b, poly_gcd(a, b)).primitive().first;
}

inline std::string format_coeff(const BigRational& c) { return rat_to_string(c); }

// Human form, ascending powers: "1 - 9*t^2", "2*t^3", "1/2 + 1/4*s".
inline std::string format_poly(const Polynomial& p, char var) {
    if (p.is_zero()) return "0";
    std::string out;
    const auto& c = p.coeffs();
    for (size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        BigRational a = c[k];
        if (out.empty()) {
            if (a < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        bool unit = (a == 1);
        if (k == 0) {
            out += format_coeff(a);
        } else {
            if (!unit) out += format_coeff(a) + "*";
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

}  // namespace fgrow

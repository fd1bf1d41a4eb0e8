#pragma once

// Rational functions in one variable over Q, kept in a canonical form so
// structural equality is semantic equality:
//   - gcd(numerator, denominator) = 1
//   - denominator has coprime integer coefficients whose lowest nonzero
//     coefficient is positive
// The variable is carried as a tag ('t', 's', 'z', ...); mixing tags in
// arithmetic is an error, substitution rebinds the tag.

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "fgrow/polynomial.hpp"

namespace fgrow {

class RationalFunction {
  public:
    RationalFunction() : num_(), den_(BigRational(1)), var_('t') {}
    RationalFunction(Polynomial num, Polynomial den, char var) : var_(var) {
        if (den.is_zero()) throw input_error("rational function with zero denominator");
        num_ = std::move(num);
        den_ = std::move(den);
        canonicalize();
    }
    static RationalFunction constant(const BigRational& c, char var) {
        return RationalFunction(Polynomial(c), Polynomial(BigRational(1)), var);
    }
    static RationalFunction variable(char var) {
        return RationalFunction(Polynomial::variable(), Polynomial(BigRational(1)), var);
    }
    static RationalFunction from_poly(Polynomial p, char var) {
        return RationalFunction(std::move(p), Polynomial(BigRational(1)), var);
    }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    char var() const { return var_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.degree() == 0 && den_.coeff(0) == 1; }

    bool operator==(const RationalFunction& o) const {
        return var_ == o.var_ && num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        a.check_var(b);
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, a.var_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        a.check_var(b);
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_, a.var_);
    }
    RationalFunction operator-() const {
        RationalFunction r(*this);
        r.num_ = -r.num_;
        return r;
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        a.check_var(b);
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_, a.var_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        a.check_var(b);
        if (b.is_zero()) throw input_error("division by the zero rational function");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_, a.var_);
    }
    friend RationalFunction operator*(const BigRational& s, const RationalFunction& a) {
        return RationalFunction(s * a.num_, a.den_, a.var_);
    }

    RationalFunction pow(unsigned e) const {
        RationalFunction r = constant(1, var_), b = *this;
        while (e) {
            if (e & 1u) r = r * b;
            b = b * b;
            e >>= 1u;
        }
        return r;
    }

    BigRational evaluate(const BigRational& x) const {
        BigRational d = den_.evaluate(x);
        if (d == 0) throw input_error("evaluation at a pole of the rational function");
        return num_.evaluate(x) / d;
    }

    RationalFunction derivative() const {
        return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(),
                                den_ * den_, var_);
    }

  private:
    void check_var(const RationalFunction& o) const {
        if (var_ != o.var_)
            throw input_error(std::string("mixed variables in arithmetic: '") + var_ +
                              "' vs '" + o.var_ + "'");
    }
    void canonicalize() {
        if (num_.is_zero()) {
            den_ = Polynomial(BigRational(1));
            return;
        }
        Polynomial g = poly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = Polynomial::divexact(num_, g);
            den_ = Polynomial::divexact(den_, g);
        }
        auto [dprim, scale] = den_.primitive();
        den_ = std::move(dprim);
        num_ = scale * num_;
    }

    Polynomial num_, den_;
    char var_;
};

// p(A/B) * B^D as a polynomial, for D >= deg p.
inline Polynomial poly_homogeneous_eval(const Polynomial& p, const Polynomial& A,
                                        const Polynomial& B, int D) {
    Polynomial acc;
    std::vector<Polynomial> bpow(static_cast<size_t>(D) + 1);
    bpow[0] = Polynomial(BigRational(1));
    for (int i = 1; i <= D; ++i) bpow[static_cast<size_t>(i)] = bpow[static_cast<size_t>(i - 1)] * B;
    Polynomial apow(BigRational(1));
    for (int i = 0; i <= p.degree(); ++i) {
        if (p.coeff(i) != 0) acc += p.coeff(i) * (apow * bpow[static_cast<size_t>(D - i)]);
        if (i < p.degree()) apow *= A;
    }
    return acc;
}

// f(g): substitute the rational function g for f's variable.  The result is
// expressed in g's variable.  Errors out if the substituted denominator
// vanishes identically (composition undefined).
inline RationalFunction substitute(const RationalFunction& f, const RationalFunction& g) {
    const Polynomial &A = g.num(), &B = g.den();
    int D = std::max(f.num().degree(), f.den().degree());
    if (D < 0) D = 0;
    Polynomial top = poly_homogeneous_eval(f.num(), A, B, D);
    Polynomial bot = poly_homogeneous_eval(f.den(), A, B, D);
    if (bot.is_zero()) throw input_error("substitution makes the denominator vanish identically");
    return RationalFunction(std::move(top), std::move(bot), g.var());
}

// Taylor coefficients c_0..c_K of f at 0 via the denominator recurrence;
// requires f regular at the origin.
inline std::vector<BigRational> series_coefficients(const RationalFunction& f, int K) {
    if (K < 0) throw input_error("series truncation order must be nonnegative");
    const Polynomial &p = f.num(), &q = f.den();
    BigRational q0 = q.coeff(0);
    if (q0 == 0) throw input_error("series expansion at a pole (denominator vanishes at 0)");
    std::vector<BigRational> c(static_cast<size_t>(K) + 1);
    for (int k = 0; k <= K; ++k) {
        BigRational s = p.coeff(k);
        for (int i = 1; i <= std::min(k, q.degree()); ++i)
            s -= q.coeff(i) * c[static_cast<size_t>(k - i)];
        c[static_cast<size_t>(k)] = s / q0;
    }
    return c;
}

inline RationalFunction differentiate(const RationalFunction& f, int n) {
    if (n < 0) throw input_error("derivative order must be nonnegative");
    RationalFunction g = f;
    for (int i = 0; i < n; ++i) g = g.derivative();
    return g;
}

// same function, different variable tag (for t <-> z bookkeeping)
inline RationalFunction with_variable(const RationalFunction& f, char var) {
    return RationalFunction(f.num(), f.den(), var);
}

inline std::string format_ratfunc(const RationalFunction& f) {
    if (f.is_poly()) return format_poly(f.num(), f.var());
    int terms = 0;
    for (int k = 0; k <= f.num().degree(); ++k)
        if (f.num().coeff(k) != 0) ++terms;
    std::string ns = format_poly(f.num(), f.var());
    if (terms > 1) ns = "(" + ns + ")";
    return ns + "/(" + format_poly(f.den(), f.var()) + ")";
}

// --- text grammar ---------------------------------------------------------
// expr := term (('+'|'-') term)* ; term := unary (('*'|'/') unary)* ;
// unary := '-' unary | primary ; primary := atom ('^' nat)? ;
// atom := nat | letter | '(' expr ')'
// One variable letter per expression; `fallback` names the variable when the
// text is constant (e.g. "1").

class RatFuncParser {
  public:
    RatFuncParser(const std::string& text, char fallback)
        : s_(text), pos_(0), var_(0), fallback_(fallback) {}

    RationalFunction parse() {
        RationalFunction r = expr();
        skip_ws();
        if (pos_ != s_.size())
            throw input_error("unexpected trailing text in expression: '" + s_.substr(pos_) + "'");
        return r;
    }

  private:
    char cur_var() const { return var_ ? var_ : fallback_; }

    RationalFunction expr() {
        RationalFunction acc = term();
        for (;;) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                acc = acc + term();
            } else if (peek() == '-') {
                ++pos_;
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }
    RationalFunction term() {
        RationalFunction acc = unary();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                acc = acc * unary();
            } else if (peek() == '/') {
                ++pos_;
                acc = acc / unary();
            } else {
                return acc;
            }
        }
    }
    RationalFunction unary() {
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            return -unary();
        }
        return primary();
    }
    RationalFunction primary() {
        RationalFunction base = atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            if (!std::isdigit(peek())) throw input_error("expected integer exponent after '^'");
            unsigned long e = std::stoul(number());
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }
    RationalFunction atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            RationalFunction r = expr();
            skip_ws();
            if (peek() != ')') throw input_error("missing ')' in expression");
            ++pos_;
            return r;
        }
        if (std::isdigit(c)) return RationalFunction::constant(BigRational(number(), 10), cur_var());
        if (std::isalpha(c)) {
            if (var_ && var_ != c)
                throw input_error(std::string("two different variables in one expression: '") +
                                  var_ + "' and '" + c + "'");
            var_ = c;
            ++pos_;
            return RationalFunction::variable(var_);
        }
        throw input_error(std::string("unexpected character in expression: '") + c + "'");
    }
    std::string number() {
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return s_.substr(start, pos_ - start);
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    std::string s_;
    size_t pos_;
    char var_;
    char fallback_;
};

inline RationalFunction parse_ratfunc(const std::string& text, char fallback_var = 't') {
    // Pin the variable up front so constants parsed before the first variable
    // occurrence already carry the right tag.
    for (char c : text)
        if (std::isalpha(static_cast<unsigned char>(c))) {
            fallback_var = c;
            break;
        }
    return RatFuncParser(text, fallback_var).parse();
}

}  // namespace fgrow

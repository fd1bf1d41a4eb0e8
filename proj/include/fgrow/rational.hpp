#pragma once

// Exact rational arithmetic. Thin layer over GMP's C++ bindings plus the
// handful of helpers the rest of the library keeps reaching for (string
// round-trips, exact square roots, power maps, double conversion).

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace fgrow {

using BigInt = mpz_class;
using BigRational = mpq_class;

// Thrown for malformed user input (files, CLI text, out-of-range letters).
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an enumeration/computation would exceed the configured budget.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Internal invariant violations. Reaching this is a bug, not a user error.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

inline BigRational make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw input_error("rational with zero denominator");
    BigRational q(num, den);
    q.canonicalize();
    return q;
}

inline BigRational make_rat(long num, long den) {
    return make_rat(BigInt(num), BigInt(den));
}

// Accepts "p", "-p", "p/q" with optional leading '-' on either part.
inline BigRational rat_from_string(const std::string& text) {
    if (text.empty()) throw input_error("empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            BigInt n(text, 10);
            return BigRational(n);
        }
        BigInt n(text.substr(0, slash), 10);
        BigInt d(text.substr(slash + 1), 10);
        return make_rat(n, d);
    } catch (const std::invalid_argument&) {
        throw input_error("malformed rational literal: '" + text + "'");
    }
}

inline std::string rat_to_string(const BigRational& q) {
    return q.get_str();
}

inline BigRational rat_abs(const BigRational& q) {
    return q < 0 ? BigRational(-q) : q;
}

inline BigRational rat_pow(const BigRational& q, unsigned long e) {
    BigRational r;
    mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
    return r;  // q canonical => q^e canonical
}

inline BigInt int_pow(const BigInt& b, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline double rat_to_double(const BigRational& q) {
    return mpq_get_d(q.get_mpq_t());
}

// Exact square root when q is a square of a rational, otherwise nullopt.
inline std::optional<BigRational> rat_sqrt_exact(const BigRational& q) {
    if (q < 0) return std::nullopt;
    BigInt num = q.get_num(), den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
    BigInt sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    return make_rat(sn, sd);
}

// Largest integer n with n^2 <= q (q >= 0).
inline BigInt rat_floor_sqrt(const BigRational& q) {
    if (q < 0) throw internal_error("floor_sqrt of negative rational");
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), fl.get_mpz_t());
    return r;
}

}  // namespace fgrow

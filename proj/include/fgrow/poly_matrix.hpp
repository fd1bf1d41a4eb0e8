#pragma once

// Exact linear algebra used by the measure computations:
//   - fraction-free (Bareiss) elimination over polynomial matrices, backing
//     the rational-function matrix inverse,
//   - Faddeev-LeVerrier resolvent sums over integer matrices, backing the
//     transfer-matrix measure of a regular language.

#include <string>
#include <vector>

#include "fgrow/ratfunc.hpp"

namespace fgrow {

using PolyMatrix = std::vector<std::vector<Polynomial>>;
using IntMatrix = std::vector<std::vector<BigInt>>;

struct PolyMatInverseResult {
    RationalFunction det;
    std::vector<std::vector<RationalFunction>> inv;
};

// Inverse of a square polynomial matrix: fraction-free forward elimination
// (exact divisions guaranteed by Sylvester's identity), then back
// substitution in rational-function arithmetic. Row pivoting only.
inline PolyMatInverseResult poly_mat_inverse(PolyMatrix A, char var) {
    const size_t n = A.size();
    for (const auto& row : A)
        if (row.size() != n) throw internal_error("poly_mat_inverse: matrix not square");
    if (n == 0) return {RationalFunction::constant(1, var), {}};

    // augment with the identity
    for (size_t i = 0; i < n; ++i) {
        A[i].resize(2 * n);
        A[i][n + i] = Polynomial(BigRational(1));
    }
    int sign = 1;
    Polynomial prev(BigRational(1));
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        while (piv < n && A[piv][k].is_zero()) ++piv;
        if (piv == n)
            throw input_error("singular matrix: every pivot candidate vanishes in column " +
                              std::to_string(k + 1) + " (vanishing " + std::to_string(k + 1) +
                              "x" + std::to_string(k + 1) + " pivot minor)");
        if (piv != k) {
            std::swap(A[piv], A[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < 2 * n; ++j)
                A[i][j] = Polynomial::divexact(A[k][k] * A[i][j] - A[i][k] * A[k][j], prev);
            A[i][k] = Polynomial();
        }
        prev = A[k][k];
    }
    Polynomial detp = (sign < 0) ? -prev : prev;

    auto rf = [var](const Polynomial& p) { return RationalFunction::from_poly(p, var); };
    std::vector<std::vector<RationalFunction>> X(
        n, std::vector<RationalFunction>(n, RationalFunction::constant(0, var)));
    for (size_t col = 0; col < n; ++col) {
        for (size_t i = n; i-- > 0;) {
            RationalFunction acc = rf(A[i][n + col]);
            for (size_t j = i + 1; j < n; ++j) acc = acc - rf(A[i][j]) * X[j][col];
            X[i][col] = acc / rf(A[i][i]);
        }
    }
    return {rf(detp), X};
}

// Square matrix over rational functions (one shared variable).
class RatMatrix {
  public:
    RatMatrix(size_t n, char var)
        : n_(n), var_(var), a_(n, std::vector<RationalFunction>(n, RationalFunction::constant(0, var))) {}

    static RatMatrix identity(size_t n, char var) {
        RatMatrix m(n, var);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = RationalFunction::constant(1, var);
        return m;
    }

    size_t size() const { return n_; }
    char var() const { return var_; }
    RationalFunction& at(size_t i, size_t j) { return a_[i][j]; }
    const RationalFunction& at(size_t i, size_t j) const { return a_[i][j]; }

    friend RatMatrix operator*(const RatMatrix& x, const RatMatrix& y) {
        if (x.n_ != y.n_) throw internal_error("RatMatrix: size mismatch");
        RatMatrix r(x.n_, x.var_);
        for (size_t i = 0; i < x.n_; ++i)
            for (size_t k = 0; k < x.n_; ++k) {
                if (x.a_[i][k].is_zero()) continue;
                for (size_t j = 0; j < x.n_; ++j) {
                    if (y.a_[k][j].is_zero()) continue;
                    r.a_[i][j] = r.a_[i][j] + x.a_[i][k] * y.a_[k][j];
                }
            }
        return r;
    }
    friend RatMatrix operator-(const RatMatrix& x, const RatMatrix& y) {
        if (x.n_ != y.n_) throw internal_error("RatMatrix: size mismatch");
        RatMatrix r(x.n_, x.var_);
        for (size_t i = 0; i < x.n_; ++i)
            for (size_t j = 0; j < x.n_; ++j) r.a_[i][j] = x.a_[i][j] - y.a_[i][j];
        return r;
    }

    bool operator==(const RatMatrix& o) const { return a_ == o.a_; }

    // Clears denominators to a polynomial matrix, then runs the fraction-free
    // kernel: M = P/L entrywise with L = lcm of all entry denominators.
    PolyMatInverseResult inverse_with_det() const {
        Polynomial L(BigRational(1));
        for (const auto& row : a_)
            for (const auto& e : row) L = poly_lcm(L, e.den());
        PolyMatrix P(n_, std::vector<Polynomial>(n_));
        for (size_t i = 0; i < n_; ++i)
            for (size_t j = 0; j < n_; ++j)
                P[i][j] = a_[i][j].num() * Polynomial::divexact(L, a_[i][j].den());
        auto res = poly_mat_inverse(std::move(P), var_);
        RationalFunction Lrf = RationalFunction::from_poly(L, var_);
        for (auto& row : res.inv)
            for (auto& e : row) e = Lrf * e;
        RationalFunction Ln = Lrf.pow(static_cast<unsigned>(n_));
        res.det = res.det / Ln;
        return res;
    }
    RatMatrix inverse() const {
        auto res = inverse_with_det();
        RatMatrix r(n_, var_);
        r.a_ = std::move(res.inv);
        return r;
    }
    RationalFunction det() const { return inverse_with_det().det; }

  private:
    size_t n_;
    char var_;
    std::vector<std::vector<RationalFunction>> a_;
};

// Sum of resolvent entries sum_{i in from, j in to} ((I - t A)^{-1})_{ij} as
// one canonical rational function, via Faddeev-LeVerrier on the integer
// matrix A (all divisions exact):
//   (I - tA)^{-1} = (sum_k B_k t^k) / (sum_k c_k t^k),
//   B_0 = I, c_0 = 1, c_k = -tr(A B_{k-1})/k, B_k = A B_{k-1} + c_k I.
inline RationalFunction resolvent_entry_sum(const IntMatrix& A, const std::vector<int>& from,
                                            const std::vector<int>& to, char var) {
    const size_t n = A.size();
    if (n == 0 || from.empty() || to.empty()) return RationalFunction::constant(0, var);
    for (const auto& row : A)
        if (row.size() != n) throw internal_error("resolvent_entry_sum: matrix not square");

    auto matmul = [n](const IntMatrix& X, const IntMatrix& Y) {
        IntMatrix R(n, std::vector<BigInt>(n, 0));
        for (size_t i = 0; i < n; ++i)
            for (size_t k = 0; k < n; ++k) {
                if (X[i][k] == 0) continue;
                for (size_t j = 0; j < n; ++j) {
                    if (Y[k][j] == 0) continue;
                    R[i][j] += X[i][k] * Y[k][j];
                }
            }
        return R;
    };
    auto pick_sum = [&](const IntMatrix& B) {
        BigInt s = 0;
        for (int i : from)
            for (int j : to) s += B[static_cast<size_t>(i)][static_cast<size_t>(j)];
        return s;
    };

    IntMatrix B(n, std::vector<BigInt>(n, 0));
    for (size_t i = 0; i < n; ++i) B[i][i] = 1;
    std::vector<BigRational> numc, denc;
    numc.emplace_back(pick_sum(B));
    denc.emplace_back(1);
    BigInt ck;
    for (size_t k = 1; k <= n; ++k) {
        IntMatrix M = matmul(A, B);
        BigInt tr = 0;
        for (size_t i = 0; i < n; ++i) tr += M[i][i];
        // c_k = -tr/k, exact by the Faddeev-LeVerrier identities
        BigInt kk(static_cast<unsigned long>(k));
        if (!mpz_divisible_p(tr.get_mpz_t(), kk.get_mpz_t()))
            throw internal_error("Faddeev-LeVerrier trace not divisible by step index");
        mpz_divexact(ck.get_mpz_t(), tr.get_mpz_t(), kk.get_mpz_t());
        ck = -ck;
        denc.emplace_back(ck);
        if (k < n) {
            for (size_t i = 0; i < n; ++i) M[i][i] += ck;
            B = std::move(M);
            numc.emplace_back(pick_sum(B));
        } else {
            // B_n = A B_{n-1} + c_n I must vanish (Cayley-Hamilton)
            for (size_t i = 0; i < n; ++i) M[i][i] += ck;
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j)
                    if (M[i][j] != 0) throw internal_error("Faddeev-LeVerrier did not terminate at zero");
        }
    }
    return RationalFunction(Polynomial(std::move(numc)), Polynomial(std::move(denc)), var);
}

// det(xI - A) for an integer matrix, by the same Faddeev-LeVerrier recurrence:
// det(I - tA) = sum_k c_k t^k, so char(x) = sum_k c_k x^{n-k}.
inline Polynomial char_poly(const IntMatrix& A) {
    const size_t n = A.size();
    if (n == 0) return Polynomial(BigRational(1));
    for (const auto& row : A)
        if (row.size() != n) throw internal_error("char_poly: matrix not square");
    IntMatrix B(n, std::vector<BigInt>(n, 0));
    for (size_t i = 0; i < n; ++i) B[i][i] = 1;
    std::vector<BigRational> coeffs(n + 1, BigRational(0));
    coeffs[n] = 1;
    BigInt ck;
    for (size_t k = 1; k <= n; ++k) {
        IntMatrix M(n, std::vector<BigInt>(n, 0));
        for (size_t i = 0; i < n; ++i)
            for (size_t l = 0; l < n; ++l) {
                if (A[i][l] == 0) continue;
                for (size_t j = 0; j < n; ++j) M[i][j] += A[i][l] * B[l][j];
            }
        BigInt tr = 0;
        for (size_t i = 0; i < n; ++i) tr += M[i][i];
        BigInt kk(static_cast<unsigned long>(k));
        if (!mpz_divisible_p(tr.get_mpz_t(), kk.get_mpz_t()))
            throw internal_error("Faddeev-LeVerrier trace not divisible by step index");
        mpz_divexact(ck.get_mpz_t(), tr.get_mpz_t(), kk.get_mpz_t());
        ck = -ck;
        coeffs[n - k] = BigRational(ck);
        for (size_t i = 0; i < n; ++i) M[i][i] += ck;
        B = std::move(M);
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (B[i][j] != 0) throw internal_error("Faddeev-LeVerrier did not terminate at zero");
    return Polynomial(std::move(coeffs));
}

}  // namespace fgrow

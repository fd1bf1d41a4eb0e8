#pragma once

// Freely reduced words over the alphabet {x1^±1, ..., xm^±1}. Letters are
// nonzero ints: +i for x_i, -i for its inverse. The Word invariant is "no
// adjacent cancelling pair"; constructors reduce.

#include <cstdlib>
#include <string>
#include <vector>

#include "fgrow/rational.hpp"

namespace fgrow {

using Letter = int;

struct Alphabet {
    int rank;  // m >= 1
    explicit Alphabet(int m) : rank(m) {
        if (m < 1) throw input_error("free group rank must be at least 1");
    }
    int letters() const { return 2 * rank; }
    bool valid(Letter x) const { return x != 0 && std::abs(x) <= rank; }
};

class Word {
  public:
    Word() = default;
    // reduces the sequence
    explicit Word(const std::vector<Letter>& raw) {
        for (Letter x : raw) push(x);
    }

    static Word letter(Letter x) {
        Word w;
        w.push(x);
        return w;
    }

    // push with free cancellation at the seam
    void push(Letter x) {
        if (x == 0) throw internal_error("zero letter");
        if (!ls_.empty() && ls_.back() == -x)
            ls_.pop_back();
        else
            ls_.push_back(x);
    }

    size_t length() const { return ls_.size(); }
    bool is_identity() const { return ls_.empty(); }
    const std::vector<Letter>& letters() const { return ls_; }
    Letter operator[](size_t i) const { return ls_[i]; }

    Word inverse() const {
        Word w;
        w.ls_.reserve(ls_.size());
        for (size_t i = ls_.size(); i-- > 0;) w.ls_.push_back(-ls_[i]);
        return w;
    }

    friend Word operator*(const Word& a, const Word& b) {
        Word w = a;
        for (Letter x : b.ls_) w.push(x);
        return w;
    }

    Word pow(int e) const {
        Word base = e < 0 ? inverse() : *this;
        int n = std::abs(e);
        Word acc;
        for (int i = 0; i < n; ++i) acc = acc * base;
        return acc;
    }

    bool operator==(const Word& o) const { return ls_ == o.ls_; }
    bool operator!=(const Word& o) const { return !(*this == o); }
    bool operator<(const Word& o) const {
        if (ls_.size() != o.ls_.size()) return ls_.size() < o.ls_.size();
        return ls_ < o.ls_;
    }

  private:
    std::vector<Letter> ls_;
};

// Text form. Rank <= 26: 'a'..'z' are x1..x26, uppercase for inverses, and
// "" or "1" is the identity. Rank > 26: tokens x<i> / X<i> only (the letter
// forms would be ambiguous against the digits).
inline Word parse_word(const std::string& text, const Alphabet& ab) {
    Word w;
    if (text.empty() || text == "1") return w;
    size_t i = 0;
    if (ab.rank <= 26) {
        for (; i < text.size(); ++i) {
            char c = text[i];
            Letter x;
            if (c >= 'a' && c <= 'z')
                x = c - 'a' + 1;
            else if (c >= 'A' && c <= 'Z')
                x = -(c - 'A' + 1);
            else
                throw input_error(std::string("bad character '") + c + "' in word '" + text + "'");
            if (!ab.valid(x))
                throw input_error(std::string("letter '") + c + "' outside rank " +
                                  std::to_string(ab.rank) + " in word '" + text + "'");
            w.push(x);
        }
        return w;
    }
    while (i < text.size()) {
        char c = text[i];
        int sgn;
        if (c == 'x')
            sgn = 1;
        else if (c == 'X')
            sgn = -1;
        else
            throw input_error("expected x<i>/X<i> token in word '" + text + "' (rank > 26)");
        ++i;
        size_t start = i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
        if (start == i) throw input_error("missing generator index in word '" + text + "'");
        int idx = std::stoi(text.substr(start, i - start));
        if (idx < 1 || idx > ab.rank)
            throw input_error("generator index " + std::to_string(idx) + " outside rank " +
                              std::to_string(ab.rank));
        w.push(sgn * idx);
    }
    return w;
}

inline std::string format_word(const Word& w, const Alphabet& ab) {
    if (w.is_identity()) return "1";
    std::string out;
    for (Letter x : w.letters()) {
        if (ab.rank <= 26) {
            out += static_cast<char>((x > 0 ? 'a' : 'A') + std::abs(x) - 1);
        } else {
            out += (x > 0 ? "x" : "X") + std::to_string(std::abs(x));
        }
    }
    return out;
}

// |S_k| = 2m(2m-1)^{k-1} for k >= 1, |S_0| = 1.
inline BigInt sphere_size(int rank, int k) {
    if (k == 0) return 1;
    return BigInt(2 * rank) * int_pow(BigInt(2 * rank - 1), static_cast<unsigned long>(k - 1));
}

inline BigInt ball_size(int rank, int k) {
    BigInt total = 0;
    for (int i = 0; i <= k; ++i) total += sphere_size(rank, i);
    return total;
}

}  // namespace fgrow

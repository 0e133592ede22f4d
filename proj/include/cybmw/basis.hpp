#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace cybmw {

/// One letter of a word in Y^±, X_i^±, e_i.
struct Token {
    enum Kind { Y, X, E };
    Kind kind = Y;
    int index = 0;  // 1-based for X and e, 0 for Y
    bool inverse = false;

    static Token y(bool inv = false) { return {Y, 0, inv}; }
    static Token x(int i, bool inv = false) { return {X, i, inv}; }
    static Token e(int i) { return {E, i, false}; }
    std::string str() const;
    friend bool operator==(const Token& a, const Token& b) {
        return a.kind == b.kind && a.index == b.index && a.inverse == b.inverse;
    }
};

using Word = std::vector<Token>;

struct GenWord {
    int n = 1;
    Word tokens;
};

/// whitespace separated `Y`, `Y^-1`, `Xi`, `Xi^-1`, `ei`
GenWord parse_word(const std::string& s, int n);
std::string word_str(const Word& w);
Word reversed(const Word& w);

/// Y'_i^p as X_{i-1}..X_1 Y X_1..X_{i-1} repeated |p| times (inverses for p < 0)
Word y_prime_word(int i, int p);

/// α_{ijl}^p = Y'_i^p X_i..X_{j-1} e_j..e_l
struct AlphaChain {
    int i = 1, j = 1, l = 1, p = 0;
    Word word() const;
    friend bool operator==(const AlphaChain& a, const AlphaChain& b) {
        return a.i == b.i && a.j == b.j && a.l == b.l && a.p == b.p;
    }
};

/// {⌊k/2⌋−(k−1), …, ⌊k/2⌋}
std::vector<int> P_range(int k);

struct BmwBasisIndex {
    int n = 1, k = 1, m = 0;
    std::vector<AlphaChain> left;   // l = n−1, n−3, …
    std::vector<int> c;             // Y'-exponents of the AK part
    std::vector<int> w;             // one-line permutation of 1..n−2m
    std::vector<AlphaChain> right;  // starred, l = n−2, n−4, …
    std::string descriptor() const;
    friend bool operator==(const BmwBasisIndex& a, const BmwBasisIndex& b) {
        return a.n == b.n && a.k == b.k && a.m == b.m && a.left == b.left && a.c == b.c && a.w == b.w &&
               a.right == b.right;
    }
};

/// k^n (2n−1)!!
std::size_t rank_formula(int n, int k);
std::size_t count_basis(int n, int k);
std::vector<BmwBasisIndex> enumerate_basis(int n, int k, std::size_t guard = 1000000);

/// left chains, AK part Y'_1^{c_1}..Y'_l^{c_l}X_w, starred right chains
Word word_of(const BmwBasisIndex& b);

/// s_{a_1}..s_{a_r} = w, lexicographically least reduced word
std::vector<int> reduced_word(const std::vector<int>& w);
int perm_length(const std::vector<int>& w);
/// (uv)(i) = u(v(i))
std::vector<int> perm_compose(const std::vector<int>& u, const std::vector<int>& v);
std::vector<int> perm_inverse(const std::vector<int>& w);

}  // namespace cybmw

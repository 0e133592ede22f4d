#include "cybmw/basis.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cybmw {

std::string Token::str() const {
    switch (kind) {
        case Y: return inverse ? "Y^-1" : "Y";
        case X: return "X" + std::to_string(index) + (inverse ? "^-1" : "");
        case E: return "e" + std::to_string(index);
    }
    return "?";
}

GenWord parse_word(const std::string& s, int n) {
    GenWord g;
    g.n = n;
    std::istringstream in(s);
    std::string t;
    while (in >> t) {
        bool inv = false;
        std::string body = t;
        auto caret = t.find('^');
        if (caret != std::string::npos) {
            if (t.substr(caret) != "^-1") throw std::invalid_argument("bad token: " + t);
            inv = true;
            body = t.substr(0, caret);
        }
        if (body == "Y") {
            g.tokens.push_back(Token::y(inv));
            continue;
        }
        if (body.size() < 2 || (body[0] != 'X' && body[0] != 'e'))
            throw std::invalid_argument("bad token: " + t);
        std::size_t used = 0;
        int i = 0;
        try {
            i = std::stoi(body.substr(1), &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad token: " + t);
        }
        if (used != body.size() - 1 || i < 1 || i > n - 1) throw std::invalid_argument("index out of range: " + t);
        if (body[0] == 'e') {
            if (inv) throw std::invalid_argument("e has no inverse: " + t);
            g.tokens.push_back(Token::e(i));
        } else {
            g.tokens.push_back(Token::x(i, inv));
        }
    }
    return g;
}

std::string word_str(const Word& w) {
    std::string s;
    for (const auto& t : w) {
        if (!s.empty()) s += ' ';
        s += t.str();
    }
    return s;
}

Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

Word y_prime_word(int i, int p) {
    Word one;
    bool inv = p < 0;
    for (int a = i - 1; a >= 1; --a) one.push_back(Token::x(a, inv));
    one.push_back(Token::y(inv));
    for (int a = 1; a <= i - 1; ++a) one.push_back(Token::x(a, inv));
    Word out;
    for (int r = 0; r < std::abs(p); ++r) out.insert(out.end(), one.begin(), one.end());
    return out;
}

Word AlphaChain::word() const {
    Word w = y_prime_word(i, p);
    for (int a = i; a <= j - 1; ++a) w.push_back(Token::x(a));
    for (int a = j; a <= l; ++a) w.push_back(Token::e(a));
    return w;
}

std::vector<int> P_range(int k) {
    std::vector<int> r;
    for (int p = k / 2 - (k - 1); p <= k / 2; ++p) r.push_back(p);
    return r;
}

namespace {

std::string chain_str(const AlphaChain& a) {
    return "(" + std::to_string(a.i) + "," + std::to_string(a.j) + "," + std::to_string(a.l) + ";" +
           std::to_string(a.p) + ")";
}

std::string list_str(const std::vector<int>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

// all chain lists for one side: chain f has l = top − 2(f−1), i..j with i ≤ j ≤ jmax(f), first indices decreasing
void chain_lists(int n, int k, int m, bool left, std::vector<std::vector<AlphaChain>>& out) {
    auto P = P_range(k);
    std::vector<AlphaChain> cur;
    auto rec = [&](auto&& self, int f) -> void {
        if (f > m) {
            out.push_back(cur);
            return;
        }
        int l = left ? n - 2 * f + 1 : n - 2 * f;
        int jmax = n - 2 * f + 1;
        int imax = f == 1 ? jmax : cur.back().i - 1;
        for (int i = 1; i <= std::min(imax, jmax); ++i)
            for (int j = i; j <= jmax; ++j)
                for (int p : P) {
                    cur.push_back(AlphaChain{i, j, l, p});
                    self(self, f + 1);
                    cur.pop_back();
                }
    };
    rec(rec, 1);
}

}  // namespace

std::string BmwBasisIndex::descriptor() const {
    std::string s;
    for (const auto& a : left) s += "L" + chain_str(a);
    s += "|c=" + list_str(c) + ",w=" + list_str(w) + "|";
    for (const auto& a : right) s += "R" + chain_str(a);
    return s;
}

std::size_t rank_formula(int n, int k) {
    std::size_t r = 1;
    for (int i = 0; i < n; ++i) r *= static_cast<std::size_t>(k);
    for (int i = 2 * n - 1; i > 1; i -= 2) r *= static_cast<std::size_t>(i);
    return r;
}

std::size_t count_basis(int n, int k) {
    std::size_t total = 0;
    for (int m = 0; 2 * m <= n; ++m) {
        std::vector<std::vector<AlphaChain>> L, R;
        chain_lists(n, k, m, true, L);
        chain_lists(n, k, m, false, R);
        std::size_t ak = 1;
        for (int i = 1; i <= n - 2 * m; ++i) ak *= static_cast<std::size_t>(k) * static_cast<std::size_t>(i);
        total += L.size() * R.size() * ak;
    }
    return total;
}

std::vector<BmwBasisIndex> enumerate_basis(int n, int k, std::size_t guard) {
    if (n < 0 || k < 1) throw std::invalid_argument("need n ≥ 0 and k ≥ 1");
    if (count_basis(n, k) > guard) throw std::length_error("basis exceeds size guard");
    std::vector<BmwBasisIndex> out;
    for (int m = 0; 2 * m <= n; ++m) {
        std::vector<std::vector<AlphaChain>> L, R;
        chain_lists(n, k, m, true, L);
        chain_lists(n, k, m, false, R);
        const int l = n - 2 * m;
        std::vector<std::vector<int>> cs{{}};
        for (int t = 0; t < l; ++t) {
            std::vector<std::vector<int>> next;
            for (const auto& c : cs)
                for (int e = 0; e < k; ++e) {
                    next.push_back(c);
                    next.back().push_back(e);
                }
            cs = std::move(next);
        }
        std::vector<std::vector<int>> ws;
        std::vector<int> w(static_cast<std::size_t>(l));
        std::iota(w.begin(), w.end(), 1);
        do ws.push_back(w);
        while (std::next_permutation(w.begin(), w.end()));
        for (const auto& left : L)
            for (const auto& right : R)
                for (const auto& c : cs)
                    for (const auto& perm : ws) out.push_back(BmwBasisIndex{n, k, m, left, c, perm, right});
    }
    return out;
}

std::vector<int> reduced_word(const std::vector<int>& w0) {
    std::vector<int> w = w0, word;
    const int n = static_cast<int>(w.size());
    std::vector<int> pos(static_cast<std::size_t>(n) + 1);
    for (;;) {
        for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(w[static_cast<std::size_t>(i)])] = i;
        int a = 1;
        while (a < n && pos[static_cast<std::size_t>(a)] < pos[static_cast<std::size_t>(a) + 1]) ++a;
        if (a >= n) break;
        word.push_back(a);
        std::swap(w[static_cast<std::size_t>(pos[static_cast<std::size_t>(a)])],
                  w[static_cast<std::size_t>(pos[static_cast<std::size_t>(a) + 1])]);
    }
    return word;
}

int perm_length(const std::vector<int>& w) {
    int inv = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j) inv += w[i] > w[j];
    return inv;
}

std::vector<int> perm_compose(const std::vector<int>& u, const std::vector<int>& v) {
    std::vector<int> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = u[static_cast<std::size_t>(v[i] - 1)];
    return r;
}

std::vector<int> perm_inverse(const std::vector<int>& w) {
    std::vector<int> r(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r[static_cast<std::size_t>(w[i] - 1)] = static_cast<int>(i) + 1;
    return r;
}

Word word_of(const BmwBasisIndex& b) {
    Word out;
    for (const auto& a : b.left) {
        Word w = a.word();
        out.insert(out.end(), w.begin(), w.end());
    }
    for (std::size_t t = 0; t < b.c.size(); ++t) {
        Word w = y_prime_word(static_cast<int>(t) + 1, b.c[t]);
        out.insert(out.end(), w.begin(), w.end());
    }
    for (int a : reduced_word(b.w)) out.push_back(Token::x(a));
    for (auto it = b.right.rbegin(); it != b.right.rend(); ++it) {
        Word w = reversed(it->word());
        out.insert(out.end(), w.begin(), w.end());
    }
    return out;
}

}  // namespace cybmw

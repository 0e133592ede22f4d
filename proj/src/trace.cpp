#include "cybmw/trace.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <thread>

namespace cybmw {

namespace {

// Gaussian elimination over an exact field; throws unless the system has a unique solution
template <class F>
Vec<F> solve_exact(Mat<F> A, Vec<F> r) {
    const Eigen::Index N = A.rows();
    if (A.cols() != N) throw std::logic_error("closure system is not square");
    for (Eigen::Index c = 0; c < N; ++c) {
        Eigen::Index p = c;
        while (p < N && is_zero(A(p, c))) ++p;
        if (p == N) throw std::runtime_error("closure values are not determined by the rules");
        if (p != c) {
            A.row(p).swap(A.row(c));
            std::swap(r[p], r[c]);
        }
        F inv = F(1) / A(c, c);
        for (Eigen::Index i = 0; i < N; ++i) {
            if (i == c || is_zero(A(i, c))) continue;
            F f = A(i, c) * inv;
            for (Eigen::Index j = c; j < N; ++j)
                if (!is_zero(A(c, j))) A(i, j) -= f * A(c, j);
            r[i] -= f * r[c];
        }
    }
    Vec<F> x(N);
    for (Eigen::Index i = 0; i < N; ++i) x[i] = r[i] / A(i, i);
    return x;
}

}  // namespace

template <class F>
MarkovTraceT<F>::MarkovTraceT(std::vector<std::shared_ptr<const BmwAlgebraT<F>>> tower, CondExpectRules rules)
    : tower_(std::move(tower)), rules_(rules) {
    for (std::size_t m = 0; m < tower_.size(); ++m)
        if (tower_[m]->n() != static_cast<int>(m) + 1) throw std::invalid_argument("tower must list B_1..B_n");
    eps_.resize(tower_.size() + 1);
    tau_.resize(tower_.size() + 1);
    slots_.resize(tower_.size() + 1);
    tau_[0] = Vector::Constant(1, F(1));
    for (int m = 1; m <= n(); ++m) {
        solve_slots(m);
        const auto& B = algebra(m);
        auto& col = eps_[static_cast<std::size_t>(m)];
        Vector t(static_cast<Eigen::Index>(B.dim()));
        for (std::size_t b = 0; b < B.dim(); ++b) {
            col.push_back(evaluate(m, decompose(m, B.basis()[b], B.word(b))));
            t[static_cast<Eigen::Index>(b)] = tau_[static_cast<std::size_t>(m) - 1].dot(col.back());
        }
        tau_[static_cast<std::size_t>(m)] = std::move(t);
    }
}

template <class F>
typename MarkovTraceT<F>::Vector MarkovTraceT<F>::lower_one(int m) const {
    return m == 1 ? Vector::Constant(1, F(1)) : algebra(m - 1).one();
}

template <class F>
typename MarkovTraceT<F>::Vector MarkovTraceT<F>::sandwich(int m, const Word& a, const Vector& v, const Word& b) const {
    if (m == 1) {
        if (!a.empty() || !b.empty()) throw std::logic_error("nonempty word in B_0");
        return v;
    }
    const auto& L = algebra(m - 1);
    // v·b = (b*·v*)*
    Vector x = b.empty() ? v : L.star(L.apply(reversed(b), L.star(v)));
    return a.empty() ? x : L.apply(a, x);
}

template <class F>
typename MarkovTraceT<F>::Affine MarkovTraceT<F>::decompose(int m, const BmwBasisIndex& b, const Word& w) const {
    Affine out;
    if (b.m >= 1) {
        // a·e_{m−1}·b ↦ ab
        std::size_t at = w.size();
        for (std::size_t t = 0; t < w.size(); ++t)
            if (w[t].kind == Token::E && w[t].index == m - 1) {
                if (at != w.size()) throw std::logic_error("e_{n-1} occurs twice in a basis word");
                at = t;
            }
        if (at == w.size()) throw std::logic_error("no e_{n-1} in a basis word with arcs");
        Word u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(at));
        u.insert(u.end(), w.begin() + static_cast<std::ptrdiff_t>(at) + 1, w.end());
        out.constant = sandwich(m, u, lower_one(m), {});
        return out;
    }
    out.constant = Vector::Zero(static_cast<Eigen::Index>(dim(m - 1)));
    const int l = m;
    Word head;
    for (int t = 1; t < l; ++t) {
        Word y = y_prime_word(t, b.c[static_cast<std::size_t>(t - 1)]);
        head.insert(head.end(), y.begin(), y.end());
    }
    const int cn = b.c[static_cast<std::size_t>(l - 1)];
    if (b.w[static_cast<std::size_t>(l - 1)] == l) {
        // a·Y'_n^j·b ↦ a·U_j·b
        std::vector<int> u(b.w.begin(), b.w.end() - 1);
        for (int a : reduced_word(u)) head.push_back(Token::x(a));
        out.terms.push_back({F(1), head, false, cn, {}});
        return out;
    }
    // X_w = X_u X_{n−1} … X_j with j = w^{-1}(n); a·Y'_n^j X_{n−1}·b ↦ a·Z_j·b
    const int j = perm_inverse(b.w)[static_cast<std::size_t>(l - 1)];
    std::vector<int> c(static_cast<std::size_t>(l));
    for (int i = 1; i <= l; ++i) c[static_cast<std::size_t>(i - 1)] = i;
    for (int a = l - 1; a >= j; --a) std::swap(c[static_cast<std::size_t>(a - 1)], c[static_cast<std::size_t>(a)]);
    // c is now s_{l−1}…s_j in one-line form
    std::vector<int> u = perm_compose(b.w, perm_inverse(c));
    if (u[static_cast<std::size_t>(l - 1)] != l || perm_length(u) + (l - j) != perm_length(b.w))
        throw std::logic_error("bad coset decomposition");
    u.pop_back();
    for (int a : reduced_word(u)) head.push_back(Token::x(a));
    Word tail;
    for (int a = l - 2; a >= j; --a) tail.push_back(Token::x(a));
    out.terms.push_back({F(1), head, true, cn, tail});
    return out;
}

template <class F>
typename MarkovTraceT<F>::Vector MarkovTraceT<F>::evaluate(int m, const Affine& f) const {
    Vector out = f.constant;
    const auto& s = slots_[static_cast<std::size_t>(m)];
    for (const auto& t : f.terms) {
        const auto& v = (t.z ? s.Z : s.U).at(t.j);
        out += t.coef * sandwich(m, t.a, v, t.b);
    }
    return out;
}

// U_j = ε_n(Y'_n^j) and Z_j = ε_n(Y'_n^j X_{n−1}) in B_{n−1}, from
//   U_0 = A_0, Z_0 = λ^{-1},
//   ε_n(X_{n−1} Y'_{n−1}^j X_{n−1}^{-1}) = ε_{n−1}(Y'_{n−1}^j),
//   Z_j − δU_j + δY'_{n−1}^{−j} = Z_{j−1} Y'_{n−1}
template <class F>
void MarkovTraceT<F>::solve_slots(int m) {
    const auto& P = algebra(m).params();
    auto& s = slots_[static_cast<std::size_t>(m)];
    // only AK monomials reach a slot, with exponents 0..k−1
    std::vector<int> range;
    for (int j = 0; j < P.k(); ++j) range.push_back(j);
    const Vector one = lower_one(m);
    if (m == 1) {
        for (int j : range) s.U[j] = P.A(j) * one;
        return;
    }
    s.U[0] = P.A(0) * one;
    s.Z[0] = (rules_.corrupt_crossing ? P.lambda() : P.lambda_inv()) * one;
    std::vector<int> js;
    for (int j : range)
        if (j != 0) js.push_back(j);
    if (js.empty()) return;
    const auto& B = algebra(m);
    const auto& L = algebra(m - 1);
    const auto d = static_cast<Eigen::Index>(L.dim());
    const auto nj = static_cast<Eigen::Index>(js.size());
    auto unknown = [&](bool z, int j) -> Eigen::Index {
        auto it = std::find(js.begin(), js.end(), j);
        if (it == js.end()) return -1;
        return ((z ? nj : 0) + (it - js.begin())) * d;
    };
    const Eigen::Index N = 2 * nj * d;
    Mat<F> A = Mat<F>::Zero(N, N);
    Vector r = Vector::Zero(N);
    // adds coef·op(slot) to the block of rows starting at row
    auto add = [&](Eigen::Index row, bool z, int j, const F& coef, const std::function<Vector(const Vector&)>& op) {
        Eigen::Index col = unknown(z, j);
        if (col < 0) {
            r.segment(row, d) -= coef * op((z ? s.Z : s.U).at(j));
            return;
        }
        for (Eigen::Index i = 0; i < d; ++i) A.block(row, col + i, d, 1) += coef * op(L.unit(static_cast<std::size_t>(i)));
    };
    const int top = m - 1;
    Eigen::Index row = 0;
    for (int j : js) {
        Word q{Token::x(top)};
        Word y = y_prime_word(top, j);
        q.insert(q.end(), y.begin(), y.end());
        q.push_back(Token::x(top, true));
        Vector x = B.normalize(q);
        Vector target = embed(top, cond_expect(top, L.normalize(y)));
        r.segment(row, d) += target;
        for (std::size_t bb = 0; bb < B.dim(); ++bb) {
            const F& c = x[static_cast<Eigen::Index>(bb)];
            if (is_zero(c)) continue;
            Affine f = decompose(m, B.basis()[bb], B.word(bb));
            r.segment(row, d) -= c * f.constant;
            for (const auto& t : f.terms)
                add(row, t.z, t.j, c * t.coef, [&](const Vector& v) { return sandwich(m, t.a, v, t.b); });
        }
        row += d;
    }
    auto id = [](const Vector& v) { return v; };
    const Word yp = y_prime_word(top, 1);
    for (int j = range.front() + 1; j <= range.back(); ++j) {
        add(row, true, j, F(1), id);
        add(row, false, j, -P.delta(), id);
        r.segment(row, d) -= P.delta() * L.normalize(y_prime_word(top, -j));
        add(row, true, j - 1, F(-1), [&](const Vector& v) { return sandwich(m, {}, v, yp); });
        row += d;
    }
    Vector sol = solve_exact<F>(std::move(A), std::move(r));
    for (int j : js) {
        s.U[j] = sol.segment(unknown(false, j), d);
        s.Z[j] = sol.segment(unknown(true, j), d);
    }
}

template <class F>
const typename MarkovTraceT<F>::Vector& MarkovTraceT<F>::cond_expect_basis(int m, std::size_t b) const {
    return eps_[static_cast<std::size_t>(m)][b];
}

template <class F>
typename MarkovTraceT<F>::Vector MarkovTraceT<F>::cond_expect(int m, const Vector& x) const {
    Vector out = Vector::Zero(static_cast<Eigen::Index>(dim(m - 1)));
    for (std::size_t b = 0; b < dim(m); ++b) {
        const F& c = x[static_cast<Eigen::Index>(b)];
        if (!is_zero(c)) out += c * cond_expect_basis(m, b);
    }
    return out;
}

template <class F>
typename MarkovTraceT<F>::Vector MarkovTraceT<F>::embed(int m, const Vector& x) const {
    const auto& B = algebra(m);
    if (m == 1) return x[0] * B.one();
    const auto& Bl = algebra(m - 1);
    Vector out = Vector::Zero(static_cast<Eigen::Index>(B.dim()));
    for (std::size_t b = 0; b < Bl.dim(); ++b) {
        const F& c = x[static_cast<Eigen::Index>(b)];
        if (!is_zero(c)) out += c * B.normalize(Bl.word(b));
    }
    return out;
}

template <class F>
Mat<F> MarkovTraceT<F>::gram(int m, int threads) const {
    const auto& B = algebra(m);
    const auto N = static_cast<Eigen::Index>(B.dim());
    Mat<F> G(N, N);
    // row a is τ^T L(a), built by transposed products along the word of a
    auto row = [&](Eigen::Index a) {
        Vector r = tau(m);
        for (const auto& t : B.word(static_cast<std::size_t>(a))) r = B.gen_matrix(t).transpose() * r;
        G.row(a) = r.transpose();
    };
    threads = std::max(1, threads);
    if (threads == 1) {
        for (Eigen::Index a = 0; a < N; ++a) row(a);
        return G;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (Eigen::Index a = t; a < N; a += threads) row(a);
        });
    for (auto& th : pool) th.join();
    return G;
}

template class MarkovTraceT<Rational>;
template class MarkovTraceT<RationalFunction>;

}  // namespace cybmw

#include <random>

#include "cybmw/bmw.hpp"
#include "doctest.h"

using namespace cybmw;

namespace {

RingSpec point(int k, std::uint64_t seed = 1) {
    RingSpec s;
    s.mode = RingMode::RationalPoint;
    s.k = k;
    s.seed = seed;
    return s;
}

using F = Rational;
using Tower = std::vector<std::shared_ptr<const BmwAlgebraT<F>>>;

Tower tower(int top, const ParameterSet& p) {
    auto fp = std::make_shared<FieldParams<F>>(p);
    Tower t;
    for (int m = 1; m <= top; ++m) t.push_back(std::make_shared<BmwAlgebraT<F>>(m, fp));
    return t;
}

// ε_n(b) e_n against e_n b e_n computed in B_{n+1}
int oracle_failures(int n, int k, bool corrupt) {
    auto tw = tower(n + 1, make_parameters(point(k, 3)));
    MarkovTraceT<F> T(tw, CondExpectRules{corrupt});
    const auto& B = *tw[static_cast<std::size_t>(n - 1)];
    const auto& U = *tw[static_cast<std::size_t>(n)];
    int bad = 0;
    for (std::size_t b = 0; b < B.dim(); ++b) {
        Word w{Token::e(n)};
        for (auto t : B.word(b)) w.push_back(t);
        w.push_back(Token::e(n));
        auto ex = T.cond_expect(n, B.unit(b));
        Vec<F> rhs = Vec<F>::Zero(static_cast<Eigen::Index>(U.dim()));
        for (Eigen::Index i = 0; i < ex.size(); ++i) {
            if (is_zero(ex[i])) continue;
            Word u = n == 1 ? Word{} : tw[static_cast<std::size_t>(n - 2)]->word(static_cast<std::size_t>(i));
            u.push_back(Token::e(n));
            rhs += ex[i] * U.normalize(u);
        }
        bad += U.normalize(w) != rhs;
    }
    return bad;
}

}  // namespace

TEST_CASE("first values of the conditional expectation") {
    auto B2 = get_bmw(2, point(3));
    const auto& p = B2->params();
    CHECK(B2->markov_trace(B2->normalize(parse_word("e1", 2).tokens)) == p.A()[0]);
    CHECK(B2->cond_expect(B2->normalize(parse_word("e1", 2).tokens)) ==
          BmwElement{1, 3, {{0, RingValue(1)}}});
    auto x = B2->cond_expect(B2->normalize(parse_word("X1", 2).tokens));
    CHECK(x == BmwElement{1, 3, {{0, p.lambda_inv()}}});
    auto B1 = get_bmw(1, point(3));
    for (int j = 0; j < 3; ++j) {
        Word w(static_cast<std::size_t>(j), Token::y());
        CHECK(B1->markov_trace(B1->normalize(w)) == p.A()[static_cast<std::size_t>(j)]);
    }
}

TEST_CASE("conditional expectation satisfies e x e = eps(x) e") {
    for (auto [n, k] : std::vector<std::pair<int, int>>{{1, 3}, {2, 1}, {2, 2}, {2, 3}, {3, 1}}) {
        CAPTURE(n);
        CAPTURE(k);
        CHECK(oracle_failures(n, k, false) == 0);
    }
}

TEST_CASE("the corrupted crossing rule breaks the oracle") {
    CHECK(oracle_failures(2, 2, true) > 0);
}

TEST_CASE("conditional expectation is a bimodule map over the lower algebra") {
    auto tw = tower(3, make_parameters(point(2, 2)));
    MarkovTraceT<F> T(tw);
    const auto& B = *tw[2];
    const auto& L = *tw[1];
    std::mt19937_64 rng(11);
    for (int s = 0; s < 80; ++s) {
        auto x = B.unit(rng() % B.dim());
        auto a = L.unit(rng() % L.dim());
        auto c = L.unit(rng() % L.dim());
        auto lhs = T.cond_expect(3, B.multiply(B.multiply(T.embed(3, a), x), T.embed(3, c)));
        auto rhs = L.multiply(L.multiply(a, T.cond_expect(3, x)), c);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("trace is a Markov trace") {
    auto tw = tower(3, make_parameters(point(2)));
    MarkovTraceT<F> T(tw);
    const auto& L = *tw[1];
    const auto A0 = FieldParams<F>(make_parameters(point(2))).A(0);
    for (std::size_t b = 0; b < L.dim(); ++b) {
        CHECK(T.trace(3, T.embed(3, L.unit(b))) == A0 * T.trace(2, L.unit(b)));
        Vec<F> xe = tw[2]->multiply(T.embed(3, L.unit(b)), tw[2]->normalize({Token::e(2)}));
        CHECK(T.trace(3, xe) == T.trace(2, L.unit(b)));
    }
}

TEST_CASE("trace is symmetric and star invariant") {
    auto B = get_bmw(3, point(2, 2));
    std::mt19937_64 rng(5);
    for (int s = 0; s < 150; ++s) {
        auto x = B->unit(rng() % B->dim()), y = B->unit(rng() % B->dim());
        CHECK(B->markov_trace(B->multiply(x, y)) == B->markov_trace(B->multiply(y, x)));
        CHECK(B->markov_trace(B->star(x)) == B->markov_trace(x));
    }
}

TEST_CASE("corrupted rules give an asymmetric trace") {
    auto B = get_bmw(3, point(1));
    int bad = 0;
    for (std::size_t a = 0; a < B->dim(); ++a)
        for (std::size_t b = 0; b < B->dim(); ++b) {
            auto x = B->unit(a), y = B->unit(b);
            bad += B->markov_trace(B->multiply(x, y), {true}) != B->markov_trace(B->multiply(y, x), {true});
        }
    CHECK(bad > 0);
    auto B2 = get_bmw(2, point(2));
    CHECK(B2->trace_vector({true}) != B2->trace_vector());
}

TEST_CASE("trace commutes with specialisation") {
    for (int s : {1, -1}) {
        CHECK(check_commuting_square_brauer(2, 3, s));
        CHECK(check_commuting_square_point(2, 2, s, 2, 40));
    }
}

TEST_CASE("lambda = -1 is a degenerate point") {
    auto p = rational_point(1, 1, {{"q", Rational(3)}, {"lambda", Rational(-1)}});
    CHECK(p.A()[0] == RingValue(1));
    CHECK(make_bmw(2, p)->gram_det().is_zero());
    CHECK_FALSE(make_bmw(2, make_parameters(point(1)))->gram_det().is_zero());
}

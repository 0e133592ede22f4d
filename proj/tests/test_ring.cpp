#include <random>

#include "cybmw/json_io.hpp"
#include "cybmw/ratfun.hpp"
#include "doctest.h"

using namespace cybmw;

namespace {

Rational rand_rat(std::mt19937_64& g) {
    long n = static_cast<long>(g() % 41) - 20;
    long d = static_cast<long>(g() % 9) + 1;
    return Rational(Integer(n), Integer(d));
}

LaurentPoly rand_poly(std::mt19937_64& g, const VarSetPtr& vs) {
    LaurentPoly p(vs, 0);
    int terms = static_cast<int>(g() % 4);
    for (int t = 0; t < terms; ++t) {
        Exps e(vs->size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            int lo = vs->invertible(i) ? -2 : 0;
            e[i] = lo + static_cast<int>(g() % 4);
        }
        p.add_term(e, Integer(static_cast<long>(g() % 11) - 5));
    }
    return p;
}

}  // namespace

TEST_CASE("rational field axioms on random samples") {
    std::mt19937_64 g(11);
    for (int i = 0; i < 1000; ++i) {
        Rational a = rand_rat(g), b = rand_rat(g), c = rand_rat(g);
        CHECK(a + b == b + a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Rational(0));
        if (!b.is_zero()) CHECK((a / b) * b == a);
        CHECK(Rational::parse(a.str()) == a);
    }
}

TEST_CASE("Laurent polynomial ring axioms on random samples") {
    std::mt19937_64 g(12);
    auto vs = generic_varset(3);
    for (int i = 0; i < 1000; ++i) {
        auto a = rand_poly(g, vs), b = rand_poly(g, vs), c = rand_poly(g, vs);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - b) + b == a);
    }
}

TEST_CASE("ring values divide exactly and round trip through JSON") {
    std::mt19937_64 g(13);
    auto vs = generic_varset(2);
    for (int i = 0; i < 1000; ++i) {
        RingValue a(rand_poly(g, vs)), b(rand_poly(g, vs));
        CHECK(ring_value_from_json(to_json(a)) == a);
        if (!b.is_zero()) CHECK(divide_exact(a * b, b) == a);
        RingValue r(rand_rat(g));
        CHECK(ring_value_from_json(to_json(r)) == r);
        if (!r.is_zero()) CHECK(r * r.inverse() == RingValue(1));
    }
}

TEST_CASE("delta is invertible in the generic ring") {
    RingSpec s;
    s.mode = RingMode::GenericPlus;
    s.k = 2;
    RingValue d = delta(s);
    CHECK(d * d.inverse() == RingValue(1));
    RingValue q(LaurentPoly::variable(generic_varset(2), 0));
    CHECK(d == q - q.inverse());
}

TEST_CASE("non-units are rejected") {
    auto bv = brauer_varset(2);
    RingValue a1(LaurentPoly::variable(bv, 1));
    CHECK_THROWS(a1.inverse());
    CHECK_THROWS(divide_exact(RingValue(1), a1 + RingValue(1)));
    RingValue a0(LaurentPoly::variable(bv, 0));
    CHECK(a0 * a0.inverse() == RingValue(1));
}

TEST_CASE("rational functions form a field and map back to the ring") {
    std::mt19937_64 g(14);
    auto vs = generic_varset(2);
    for (int i = 0; i < 300; ++i) {
        RationalFunction a(rand_poly(g, vs)), b(rand_poly(g, vs)), c(rand_poly(g, vs));
        CHECK((a + b) * c == a * c + b * c);
        if (!b.is_zero()) CHECK((a / b) * b == a);
        CHECK(RationalFunction::from_ring_value(a.to_ring_value(vs)) == a);
    }
}

TEST_CASE("homomorphisms substitute variables") {
    auto vs = generic_varset(1);
    RingValue q(LaurentPoly::variable(vs, 0)), l(LaurentPoly::variable(vs, 1));
    Assignment a{{"q", RingValue(Rational(2))}, {"lambda", RingValue(Rational(3))}};
    CHECK(apply_hom(q * l + q.inverse(), a) == RingValue(Rational(13, 2)));
}

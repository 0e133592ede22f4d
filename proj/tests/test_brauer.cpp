#include "cybmw/brauer.hpp"
#include "cybmw/params.hpp"
#include "doctest.h"

using namespace cybmw;

namespace {

RingValue A(int k, std::size_t i) { return RingValue(LaurentPoly::variable(brauer_varset(k), i)); }

}  // namespace

TEST_CASE("diagram counts are k^n (2n-1)!!") {
    CHECK(enumerate_diagrams(1, 3).size() == 3);
    CHECK(enumerate_diagrams(2, 2).size() == 12);
    CHECK(enumerate_diagrams(3, 1).size() == 15);
    CHECK(enumerate_diagrams(3, 2).size() == 120);
}

TEST_CASE("generators satisfy the classical relations") {
    const int n = 3, k = 3;
    auto e1 = BrauerElement(CycloBrauerDiagram::cupcap(n, k, 1));
    auto e2 = BrauerElement(CycloBrauerDiagram::cupcap(n, k, 2));
    auto s1 = BrauerElement(CycloBrauerDiagram::crossing(n, k, 1));
    auto s2 = BrauerElement(CycloBrauerDiagram::crossing(n, k, 2));
    auto y = BrauerElement(CycloBrauerDiagram::y_power(n, k, 1));
    auto one = BrauerElement(CycloBrauerDiagram::identity(n, k));
    CHECK(e1 * e1 == e1.scaled(A(k, 0)));
    CHECK(e1 * e2 * e1 == e1);
    CHECK(s1 * s1 == one);
    CHECK(s1 * s2 * s1 == s2 * s1 * s2);
    CHECK(s1 * e1 == e1);
    CHECK(y * y * y == one);
    CHECK(e1 * y * e1 == e1.scaled(A(k, 1)));
    CHECK(e1 * y * y * e1 == e1.scaled(A(k, 1)));
}

TEST_CASE("multiplication is associative on all triples for n = 2, k = 2") {
    auto ds = enumerate_diagrams(2, 2);
    for (const auto& a : ds)
        for (const auto& b : ds)
            for (const auto& c : ds) CHECK(((BrauerElement(a) * b) * c) == (BrauerElement(a) * (BrauerElement(b) * c)));
}

TEST_CASE("diagram trace is symmetric") {
    auto ds = enumerate_diagrams(2, 3);
    for (const auto& a : ds)
        for (const auto& b : ds) CHECK(trace_c(BrauerElement(a) * b) == trace_c(BrauerElement(b) * a));
}

TEST_CASE("Gram determinants") {
    CHECK(gram_det(1, 1) == A(1, 0));
    CHECK(gram_det(1, 2) == A(2, 0) * A(2, 0) - A(2, 1) * A(2, 1));
    CHECK(!gram_det(2, 2).is_zero());
    CHECK_THROWS(gram_det(3, 2, 100));
}

TEST_CASE("diagram JSON round trip") {
    auto d = CycloBrauerDiagram::y_power(2, 3, 2);
    CHECK(CycloBrauerDiagram::from_json(d.to_json(), 3) == d);
}

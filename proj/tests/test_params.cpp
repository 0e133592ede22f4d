#include "cybmw/params.hpp"
#include "doctest.h"

using namespace cybmw;

TEST_CASE("beta factorises and the divisibility identity holds over the universal ring") {
    for (int k = 1; k <= 6; ++k) {
        CAPTURE(k);
        auto b = beta_values(universal_parameters(k));
        CHECK(b.beta == b.beta_plus * b.beta_minus);
        CHECK(verify_divisibility_identity(k));
    }
}

TEST_CASE("generic rings are admissible for both signs") {
    for (int k = 1; k <= 6; ++k)
        for (int s : {1, -1}) {
            CAPTURE(k);
            CAPTURE(s);
            auto r = check_admissible(generic_ring(k, s));
            CHECK(r.admissible);
            CHECK(r.weakly_admissible);
            auto p = generic_ring(k, s);
            CHECK(p.lambda() - p.lambda_inv() == p.delta() * (RingValue(1) - p.A()[0]));
        }
}

TEST_CASE("k = 1 generic values") {
    auto p = generic_ring(1, 1);
    CHECK(p.qi(0) == p.lambda_inv());
    CHECK(generic_ring(1, -1).qi(0) == -p.lambda_inv());
    auto pt = rational_point(1, 1, {{"q", Rational(2)}, {"lambda", Rational(3)}});
    CHECK(pt.qi(0) == RingValue(Rational(1, 3)));
    CHECK(pt.A()[0] == RingValue(Rational(-7, 9)));
}

TEST_CASE("Brauer specialization is admissible and folds labels") {
    for (int k = 1; k <= 6; ++k)
        for (int s : {1, -1}) {
            auto b = brauer_specialization(k, s);
            CHECK(check_admissible(b).admissible);
            CHECK(b.q() == RingValue(1));
            CHECK(b.lambda() == RingValue(s));
            for (int j = -2 * k; j <= 2 * k; ++j) CHECK(b.extend_A(j) == b.extend_A(fold_label(j, k)));
        }
    CHECK(fold_label(-1, 5) == 1);
    CHECK(fold_label(3, 5) == 2);
}

TEST_CASE("varsigma sends the generic structure parameters to the Brauer ones") {
    for (int k = 1; k <= 5; ++k)
        for (int s : {1, -1}) {
            auto g = generic_ring(k, s);
            auto b = brauer_specialization(k, s);
            auto a = brauer_assignment(k, s);
            CHECK(apply_hom(g.q(), a) == b.q());
            CHECK(apply_hom(g.lambda(), a) == b.lambda());
            for (int i = 0; i < k; ++i) CHECK(apply_hom(g.qi(i), a) == b.qi(i));
            auto r = check_admissible(g);
            CHECK(apply_hom(r.beta, a).is_zero());
        }
}

TEST_CASE("random points are deterministic and admissible") {
    for (int k = 1; k <= 4; ++k)
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            auto p = random_rational_point(k, 1, seed);
            auto p2 = random_rational_point(k, 1, seed);
            CHECK(p.spec().point == p2.spec().point);
            CHECK(check_admissible(p).admissible);
            CHECK(p.lambda() != RingValue(1));
            CHECK(p.lambda() != RingValue(-1));
        }
}

TEST_CASE("A_j extends through the cyclotomic recurrence") {
    auto p = random_rational_point(3, 1, 4);
    for (int j = -4; j <= 4; ++j) {
        RingValue s;
        for (int i = 0; i <= 3; ++i) s += p.qi(i) * p.extend_A(i + j);
        CHECK(s.is_zero());
    }
}

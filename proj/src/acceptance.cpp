#include "cybmw/acceptance.hpp"

#include <chrono>
#include <functional>
#include <random>

#include "cybmw/bmw.hpp"

namespace cybmw {

namespace {

RingSpec point_spec(int k, std::uint64_t seed, int sigma = +1) {
    RingSpec s;
    s.mode = RingMode::RationalPoint;
    s.k = k;
    s.sigma = sigma;
    s.seed = seed;
    return s;
}

std::size_t factorial(int n) {
    std::size_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::size_t>(i);
    return f;
}

std::size_t ipow(std::size_t b, int e) {
    std::size_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

BmwElement random_element(const BmwAlgebra& B, std::mt19937_64& rng) {
    BmwElement x{B.n(), B.k(), {}};
    int terms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < terms; ++t)
        x.add(static_cast<std::size_t>(rng() % B.dim()), RingValue(static_cast<long>(rng() % 7) - 3));
    return x;
}

bool eq_try(const std::function<RingValue()>& a, const RingValue& b, bool& defined) {
    try {
        defined = true;
        return a() == b;
    } catch (const std::exception&) {
        defined = false;
        return true;
    }
}

using Check = std::function<bool(Json&, const AcceptanceOptions&)>;

bool c1(Json& d, const AcceptanceOptions& o) {
    bool ok = true;
    for (auto [n, k] : std::vector<std::pair<int, int>>{{1, 1}, {1, 3}, {2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {4, 1}, {4, 2}}) {
        if (n > o.max_n) continue;
        auto got = enumerate_basis(n, k).size();
        auto want = rank_formula(n, k);
        d.push_back({{"n", n}, {"k", k}, {"basis", got}, {"formula", want}});
        ok = ok && got == want;
    }
    return ok;
}

bool c2(Json& d, const AcceptanceOptions& o) {
    bool ok = true;
    for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        if (n > o.max_n) continue;
        for (auto seed : o.seeds) {
            auto B = get_bmw(n, point_spec(k, seed));
            int fails = 0, total = 0;
            Json failed = Json::array();
            for (const auto& r : B->verify_relations()) {
                ++total;
                if (!r.pass) {
                    ++fails;
                    failed.push_back(r.name);
                }
            }
            d.push_back({{"n", n}, {"k", k}, {"seed", seed}, {"checks", total}, {"failed", failed}});
            ok = ok && fails == 0 && total > 0;
        }
    }
    return ok;
}

bool c3(Json& d, const AcceptanceOptions& o) {
    bool ok = true;
    for (int k = 1; k <= o.max_k; ++k) {
        auto bv = beta_values(universal_parameters(k));
        bool beta = bv.beta == bv.beta_plus * bv.beta_minus;
        bool hp = verify_divisibility_identity(k);
        d.push_back({{"k", k}, {"beta", beta}, {"hiprime", hp}});
        ok = ok && beta && hp;
    }
    return ok;
}

bool c4(Json& d, const AcceptanceOptions& o) {
    bool ok = true;
    for (int k = 1; k <= o.max_k; ++k)
        for (int sigma : {+1, -1}) {
            auto g = generic_ring(k, sigma);
            auto rep = check_admissible(g);
            auto b = brauer_specialization(k, sigma);
            auto a = brauer_assignment(k, sigma);
            bool same = true, def = true;
            int compared = 0;
            same = same && eq_try([&] { return apply_hom(g.q(), a); }, b.q(), def);
            compared += def;
            same = same && eq_try([&] { return apply_hom(g.lambda(), a); }, b.lambda(), def);
            compared += def;
            for (int i = 0; i < k; ++i) {
                same = same && eq_try([&] { return apply_hom(g.qi(i), a); }, b.qi(i), def);
                compared += def;
            }
            for (int j = 0; j < k; ++j) {
                same = same && eq_try([&] { return apply_hom(g.A()[static_cast<std::size_t>(j)], a); },
                                      b.A()[static_cast<std::size_t>(j)], def);
                compared += def;
            }
            d.push_back({{"k", k}, {"sigma", sigma}, {"admissible", rep.admissible}, {"image_matches", same},
                         {"compared", compared}});
            ok = ok && rep.admissible && same && compared >= k + 2;
        }
    return ok;
}

bool c5(Json& d, const AcceptanceOptions& o) {
    bool ok = true;
    for (auto [n, k] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}}) {
        if (n > o.max_n) continue;
        auto det = gram_det(n, k);
        Json row{{"n", n}, {"k", k}, {"det", det.str()}};
        bool good = !det.is_zero();
        auto bv = brauer_varset(k);
        auto A = [&](std::size_t i) { return RingValue(LaurentPoly::variable(bv, i)); };
        if (n == 1 && k == 1) good = good && det == A(0);
        if (n == 1 && k == 2) good = good && det == A(0) * A(0) - A(1) * A(1);
        row["pass"] = good;
        d.push_back(row);
        ok = ok && good;
    }
    return ok;
}

bool c6(Json& d, const AcceptanceOptions& o) {
    bool ok = true;
    for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 1}}) {
        if (n > o.max_n) continue;
        for (auto seed : o.seeds) {
            auto det = gram_det_bmw(n, point_spec(k, seed), 200, o.threads);
            d.push_back({{"n", n}, {"k", k}, {"seed", seed}, {"det", det.str()}});
            ok = ok && !det.is_zero();
        }
    }
    return ok;
}

bool c7(Json& d, const AcceptanceOptions& o) {
    bool ok = true;
    for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}}) {
        if (n > o.max_n) continue;
        for (int sigma : {+1, -1}) {
            bool good = check_commuting_square_brauer(n, k, sigma);
            d.push_back({{"square", "brauer"}, {"n", n}, {"k", k}, {"sigma", sigma}, {"pass", good}});
            ok = ok && good;
        }
    }
    for (int sigma : {+1, -1}) {
        bool good = check_commuting_square_point(2, 2, sigma, o.seeds.front(), 100);
        d.push_back({{"square", "generic-to-point"}, {"n", 2}, {"k", 2}, {"sigma", sigma}, {"samples", 100},
                     {"pass", good}});
        ok = ok && good;
    }
    return ok;
}

bool c8(Json& d, const AcceptanceOptions& o) {
    bool ok = true;
    CondExpectRules rules{o.corrupt_rules};
    for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 1}, {3, 2}}) {
        if (n > o.max_n) continue;
        auto B = get_bmw(n, point_spec(k, o.seeds.front()));
        std::mt19937_64 rng(1000 + 10 * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(k));
        int bad = 0;
        const int pairs = 200;
        for (int s = 0; s < pairs; ++s) {
            auto x = B->unit(rng() % B->dim());
            auto y = B->unit(rng() % B->dim());
            if (B->markov_trace(B->multiply(x, y), rules) != B->markov_trace(B->multiply(y, x), rules)) ++bad;
        }
        d.push_back({{"n", n}, {"k", k}, {"pairs", pairs}, {"asymmetric", bad}});
        ok = ok && bad == 0;
    }
    return ok;
}

bool c9(Json& d, const AcceptanceOptions& o) {
    bool ok = true;
    for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}}) {
        if (n > o.max_n) continue;
        auto B = get_bmw(n, point_spec(k, o.seeds.front()));
        std::size_t ak = 0;
        for (const auto& b : B->basis()) ak += b.m == 0;
        bool quot = true;
        for (const auto& r : B->verify_ak_quotient()) quot = quot && r.pass;
        auto want = ipow(static_cast<std::size_t>(k), n) * factorial(n);
        d.push_back({{"n", n}, {"k", k}, {"ak_dim", ak}, {"expected", want}, {"quotient_checks", quot}});
        ok = ok && ak == want && quot;
    }
    const std::size_t bmw[] = {0, 1, 3, 15, 105};
    for (int n = 2; n <= std::min(4, o.max_n); ++n) {
        auto B = get_bmw(n, point_spec(1, o.seeds.front()));
        d.push_back({{"n", n}, {"k", 1}, {"dim", B->dim()}, {"expected", bmw[n]}});
        ok = ok && B->dim() == bmw[n];
    }
    return ok;
}

bool c10(Json& d, const AcceptanceOptions& o) {
    int n = std::min(3, o.max_n);
    auto B = get_bmw(n, point_spec(2, o.seeds.front()));
    std::mt19937_64 rng(4242);
    int assoc_bad = 0, star_bad = 0;
    for (int s = 0; s < 200; ++s) {
        auto x = random_element(*B, rng), y = random_element(*B, rng), z = random_element(*B, rng);
        if (B->multiply(B->multiply(x, y), z) != B->multiply(x, B->multiply(y, z))) ++assoc_bad;
    }
    for (int s = 0; s < 200; ++s) {
        auto x = random_element(*B, rng), y = random_element(*B, rng);
        if (B->star(B->star(x)) != x) ++star_bad;
        if (B->star(B->multiply(x, y)) != B->multiply(B->star(y), B->star(x))) ++star_bad;
    }
    d = {{"n", n}, {"k", 2}, {"triples", 200}, {"nonassociative", assoc_bad}, {"pairs", 200}, {"star_failures", star_bad}};
    return assoc_bad == 0 && star_bad == 0;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
    const std::vector<std::pair<std::string, Check>> all{
        {"rank formula", c1},
        {"relation certification", c2},
        {"admissibility identities", c3},
        {"generic ring", c4},
        {"Brauer nondegeneracy", c5},
        {"BMW Gram nondegeneracy", c6},
        {"specialization squares", c7},
        {"trace symmetry", c8},
        {"quotient ranks", c9},
        {"associativity and anti-involution", c10},
    };
    std::vector<CriterionResult> out;
    for (std::size_t i = 0; i < all.size(); ++i) {
        CriterionResult r;
        r.id = static_cast<int>(i) + 1;
        r.name = all[i].first;
        if (opt.only && opt.only != r.id) continue;
        r.detail = Json::array();
        auto t0 = std::chrono::steady_clock::now();
        try {
            r.pass = all[i].second(r.detail, opt);
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = {{"error", e.what()}};
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(r));
    }
    return out;
}

Json acceptance_json(const std::vector<CriterionResult>& rs) {
    Json j = Json::array();
    for (const auto& r : rs)
        j.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"seconds", r.seconds}, {"detail", r.detail}});
    return j;
}

}  // namespace cybmw

#include "cybmw/params.hpp"

#include <random>

namespace cybmw {

ParameterSet::ParameterSet(RingSpec spec, VarSetPtr vars, RingValue q, RingValue lambda, std::vector<RingValue> qs,
                           std::vector<RingValue> A)
    : spec_(std::move(spec)), vars_(std::move(vars)), q_(std::move(q)), lambda_(std::move(lambda)),
      qs_(std::move(qs)), A_(std::move(A)) {
    if (static_cast<int>(qs_.size()) != spec_.k || static_cast<int>(A_.size()) != spec_.k)
        throw RingError("parameter list length differs from k");
    lambda_inv_ = lambda_.inverse();
    q0_inv_ = qs_[0].inverse();
}

ParameterSet::ParameterSet(const ParameterSet& o)
    : spec_(o.spec_), vars_(o.vars_), q_(o.q_), lambda_(o.lambda_), lambda_inv_(o.lambda_inv_),
      q0_inv_(o.q0_inv_), qs_(o.qs_), A_(o.A_) {}

ParameterSet& ParameterSet::operator=(const ParameterSet& o) {
    if (this == &o) return *this;
    spec_ = o.spec_;
    vars_ = o.vars_;
    q_ = o.q_;
    lambda_ = o.lambda_;
    lambda_inv_ = o.lambda_inv_;
    q0_inv_ = o.q0_inv_;
    qs_ = o.qs_;
    A_ = o.A_;
    std::lock_guard<std::mutex> lock(mu_);
    derived_.clear();
    return *this;
}

RingValue ParameterSet::zero() const { return vars_ ? RingValue(LaurentPoly(vars_, 0)) : RingValue(0); }
RingValue ParameterSet::one() const { return vars_ ? RingValue(LaurentPoly(vars_, 1)) : RingValue(1); }

RingValue ParameterSet::delta() const { return q_ - q_.inverse(); }

RingValue ParameterSet::qi(int i) const {
    if (i == k()) return RingValue(-1);
    if (i < 0 || i > k()) return RingValue(0);
    return qs_[static_cast<std::size_t>(i)];
}

RingValue ParameterSet::extend_A(int j) const {
    if (j >= 0 && j < k()) return A_[static_cast<std::size_t>(j)];
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = derived_.find(j);
        if (it != derived_.end()) return it->second;
    }
    RingValue r(0);
    if (j >= k()) {
        for (int i = 0; i < k(); ++i) r += qi(i) * extend_A(i + j - k());
    } else {
        for (int i = 1; i <= k(); ++i) r += qi(i) * extend_A(i + j);
        r = -(q0_inv_ * r);
    }
    std::lock_guard<std::mutex> lock(mu_);
    derived_.emplace(j, r);
    return r;
}

BetaValues beta_values(const ParameterSet& p) {
    const RingValue& q0 = p.qs()[0];
    RingValue d = p.delta();
    BetaValues b;
    b.beta = q0 * p.lambda() - p.q0_inv() * p.lambda_inv() + RingValue(1 - p.eps()) * d;
    if (p.k() % 2 == 1) {
        b.beta_plus = q0 * p.lambda() - RingValue(1);
        b.beta_minus = p.q0_inv() * p.lambda_inv() + RingValue(1);
    } else {
        b.beta_plus = q0 * p.lambda() - p.q().inverse();
        b.beta_minus = p.q() * p.q0_inv() * p.lambda_inv() + RingValue(1);
    }
    return b;
}

RingValue B_value(const ParameterSet& p, int l) {
    const int k = p.k(), z = p.z();
    RingValue b(0);
    for (int r = 1; r <= k - l; ++r) b += p.qi(r + l) * p.extend_A(r);
    for (int i = std::max(l + 1, z); i <= (l + k) / 2; ++i) b -= p.qi(2 * i - l);
    for (int i = (l + 1) / 2; i <= std::min(l, z - 1); ++i) b += p.qi(2 * i - l);
    return b;
}

std::pair<std::vector<RingValue>, std::vector<RingValue>> h_values(const ParameterSet& p) {
    const int k = p.k();
    RingValue d = p.delta();
    std::vector<RingValue> h, B;
    h.push_back(p.lambda() - p.lambda_inv() + d * (p.extend_A(0) - RingValue(1)));
    for (int l = 1; l < k; ++l) {
        RingValue bl = B_value(p, l);
        B.push_back(bl);
        h.push_back(p.lambda_inv() * (p.qi(l) + p.q0_inv() * p.qi(k - l)) + d * bl);
    }
    return {h, B};
}

std::vector<RingValue> h_prime_values(const ParameterSet& p) {
    const int k = p.k(), z = p.z();
    std::vector<RingValue> out;
    for (int l = 1; l <= z - p.eps(); ++l) {
        RingValue h(0);
        for (int r = 1; r <= l; ++r) h += p.q0_inv() * p.qi(r + k - l) * p.extend_A(r);
        for (int r = 0; r <= k - l; ++r) h -= p.qi(r + l) * p.extend_A(r);
        for (int i = (l + 1) / 2; i <= l - 1; ++i) h -= p.q0_inv() * p.qi(k - 2 * i + l) + p.qi(2 * i - l);
        for (int i = z; i <= (l + k) / 2; ++i) h += p.q0_inv() * p.qi(k - 2 * i + l) + p.qi(2 * i - l);
        out.push_back(h);
    }
    return out;
}

bool verify_divisibility_identity(int k) {
    ParameterSet p = universal_parameters(k);
    BetaValues b = beta_values(p);
    if (b.beta != b.beta_plus * b.beta_minus) return false;
    auto [h, B] = h_values(p);
    auto hp = h_prime_values(p);
    RingValue d = p.delta();
    for (int l = 1; l <= p.z() - p.eps(); ++l) {
        RingValue lhs = p.q0_inv() * h[static_cast<std::size_t>(k - l)] - h[static_cast<std::size_t>(l)] +
                        b.beta * p.q0_inv() * p.qi(l) - h[0] * p.qi(l);
        if (lhs != d * hp[static_cast<std::size_t>(l - 1)]) return false;
    }
    return true;
}

AdmissibilityReport check_admissible(const ParameterSet& p, int weak_horizon) {
    AdmissibilityReport r;
    BetaValues b = beta_values(p);
    r.beta = b.beta;
    r.beta_plus = b.beta_plus;
    r.beta_minus = b.beta_minus;
    std::tie(r.h, r.B) = h_values(p);
    r.h_prime = h_prime_values(p);
    bool ok = r.beta.is_zero();
    for (int l = 0; l <= p.z() - p.eps(); ++l) ok = ok && r.h[static_cast<std::size_t>(l)].is_zero();
    for (const auto& x : r.h_prime) ok = ok && x.is_zero();
    r.admissible = ok;

    r.weak_horizon = weak_horizon > 0 ? weak_horizon : 2 * p.k();
    bool weak = r.h[0].is_zero();
    RingValue d = p.delta();
    for (int pp = 1; weak && pp <= r.weak_horizon; ++pp) {
        RingValue s(0);
        for (int t = 1; t <= pp; ++t) s += p.extend_A(pp - 2 * t) - p.extend_A(-t) * p.extend_A(pp - t);
        RingValue lhs = p.lambda() * p.extend_A(pp);
        RingValue rhs = p.lambda() * p.extend_A(-pp) - d * s;
        weak = lhs == rhs;
    }
    r.weakly_admissible = weak;
    return r;
}

namespace {

RingValue var(const VarSetPtr& vs, const std::string& name, int power = 1) {
    int i = vs->index_of(name);
    return RingValue(LaurentPoly::variable(vs, static_cast<std::size_t>(i), power));
}

// A_1..A_{k-1} from B_1..B_{k-1} by the triangular solve, A_0 given
std::vector<RingValue> solve_A(int k, const std::vector<RingValue>& qs, const RingValue& A0,
                               const std::vector<RingValue>& B) {
    std::vector<RingValue> A(static_cast<std::size_t>(k), RingValue(0));
    A[0] = A0;
    int z = (k + 1) / 2;
    auto qi = [&](int i) -> RingValue {
        if (i == k) return RingValue(-1);
        if (i < 0 || i > k) return RingValue(0);
        return qs[static_cast<std::size_t>(i)];
    };
    for (int l = k - 1; l >= 1; --l) {
        RingValue c(0);
        for (int i = std::max(l + 1, z); i <= (l + k) / 2; ++i) c -= qi(2 * i - l);
        for (int i = (l + 1) / 2; i <= std::min(l, z - 1); ++i) c += qi(2 * i - l);
        RingValue s(0);
        for (int r = 1; r <= k - l - 1; ++r) s += qi(r + l) * A[static_cast<std::size_t>(r)];
        A[static_cast<std::size_t>(k - l)] = s + c - B[static_cast<std::size_t>(l - 1)];
    }
    return A;
}

}  // namespace

ParameterSet generic_ring(int k, int sigma) {
    if (k < 1) throw RingError("k must be positive");
    VarSetPtr vs = generic_varset(k);
    RingSpec spec;
    spec.mode = sigma > 0 ? RingMode::GenericPlus : RingMode::GenericMinus;
    spec.k = k;
    spec.sigma = sigma > 0 ? 1 : -1;
    RingValue q = var(vs, "q"), lam = var(vs, "lambda");
    RingValue qinv = var(vs, "q", -1), laminv = var(vs, "lambda", -1);
    RingValue q0;
    if (k % 2 == 1)
        q0 = sigma > 0 ? laminv : -laminv;
    else
        q0 = sigma > 0 ? qinv * laminv : -(q * laminv);
    std::vector<RingValue> qs{q0};
    for (int i = 1; i < k; ++i) qs.push_back(var(vs, "q_" + std::to_string(i)));
    RingValue dinv(LaurentPoly(vs, 1), 1);
    RingValue A0 = dinv * laminv - dinv * lam + RingValue(1);
    RingValue q0inv = q0.inverse();
    std::vector<RingValue> B;
    for (int l = 1; l < k; ++l) {
        RingValue ql = qs[static_cast<std::size_t>(l)];
        RingValue qkl = k - l == k ? RingValue(-1) : qs[static_cast<std::size_t>(k - l)];
        B.push_back(-(dinv * laminv * (ql + q0inv * qkl)));
    }
    auto A = solve_A(k, qs, A0, B);
    return ParameterSet(spec, vs, q, lam, qs, A);
}

int fold_label(int label, int k) {
    int m = ((label % k) + k) % k;
    return std::min(m, k - m);
}

ParameterSet brauer_specialization(int k, int sigma) {
    VarSetPtr vs = brauer_varset(k);
    RingSpec spec;
    spec.mode = RingMode::BrauerClassical;
    spec.k = k;
    spec.sigma = sigma > 0 ? 1 : -1;
    RingValue one(LaurentPoly(vs, 1));
    RingValue zero(LaurentPoly(vs, 0));
    std::vector<RingValue> qs{one};
    for (int i = 1; i < k; ++i) qs.push_back(zero);
    std::vector<RingValue> A;
    for (int j = 0; j < k; ++j) A.push_back(var(vs, "A_" + std::to_string(fold_label(j, k))));
    return ParameterSet(spec, vs, one, sigma > 0 ? one : -one, qs, A);
}

ParameterSet universal_parameters(int k) {
    VarSetPtr vs = universal_varset(k);
    RingSpec spec;
    spec.mode = RingMode::Universal;
    spec.k = k;
    std::vector<RingValue> qs, A;
    for (int i = 0; i < k; ++i) qs.push_back(var(vs, "q_" + std::to_string(i)));
    for (int i = 0; i < k; ++i) A.push_back(var(vs, "A_" + std::to_string(i)));
    return ParameterSet(spec, vs, var(vs, "q"), var(vs, "lambda"), qs, A);
}

ParameterSet apply_hom(const ParameterSet& p, const Assignment& a, RingSpec target, VarSetPtr target_vars) {
    std::vector<RingValue> qs, A;
    for (const auto& x : p.qs()) qs.push_back(apply_hom(x, a));
    for (const auto& x : p.A()) A.push_back(apply_hom(x, a));
    return ParameterSet(std::move(target), std::move(target_vars), apply_hom(p.q(), a), apply_hom(p.lambda(), a), qs,
                        A);
}

ParameterSet rational_point(int k, int sigma, const std::map<std::string, Rational>& point) {
    ParameterSet g = generic_ring(k, sigma);
    Assignment a;
    for (const auto& [name, v] : point) a[name] = RingValue(v);
    RingSpec spec;
    spec.mode = RingMode::RationalPoint;
    spec.k = k;
    spec.sigma = sigma > 0 ? 1 : -1;
    spec.point = point;
    return apply_hom(g, a, spec, nullptr);
}

ParameterSet random_rational_point(int k, int sigma, std::uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 12345);
    auto draw = [&]() {
        for (;;) {
            long num = static_cast<long>(rng() % 19) - 9;
            long den = static_cast<long>(rng() % 5) + 1;
            if (num != 0) return Rational(Integer(num), Integer(den));
        }
    };
    std::vector<std::string> names{"q", "lambda"};
    for (int i = 1; i < k; ++i) names.push_back("q_" + std::to_string(i));
    for (;;) {
        std::map<std::string, Rational> point;
        std::vector<Rational> used;
        bool ok = true;
        for (const auto& n : names) {
            Rational v = draw();
            for (const auto& u : used) ok = ok && u != v;
            used.push_back(v);
            point[n] = v;
        }
        const Rational& q = point["q"];
        const Rational& l = point["lambda"];
        if (!ok || q == Rational(1) || q == Rational(-1) || l == Rational(1) || l == Rational(-1)) continue;
        ParameterSet p = rational_point(k, sigma, point);
        p = ParameterSet(
            [&] {
                RingSpec s = p.spec();
                s.seed = seed;
                return s;
            }(),
            nullptr, p.q(), p.lambda(), p.qs(), p.A());
        return p;
    }
}

Assignment brauer_assignment(int k, int sigma) {
    VarSetPtr bv = brauer_varset(k);
    Assignment a;
    a["q"] = RingValue(LaurentPoly(bv, 1));
    a["lambda"] = RingValue(LaurentPoly(bv, sigma > 0 ? 1 : -1));
    for (int i = 1; i < k; ++i) a["q_" + std::to_string(i)] = RingValue(LaurentPoly(bv, 0));
    return a;
}

ParameterSet make_parameters(const RingSpec& spec) {
    switch (spec.mode) {
        case RingMode::GenericPlus:
            return generic_ring(spec.k, +1);
        case RingMode::GenericMinus:
            return generic_ring(spec.k, -1);
        case RingMode::BrauerClassical:
            return brauer_specialization(spec.k, spec.sigma);
        case RingMode::Universal:
            return universal_parameters(spec.k);
        case RingMode::RationalPoint:
            if (!spec.point.empty()) return rational_point(spec.k, spec.sigma, spec.point);
            return random_rational_point(spec.k, spec.sigma, spec.seed.value_or(1));
    }
    throw RingError("unknown ring mode");
}

}  // namespace cybmw

#include "cybmw/bmw.hpp"

#include <mutex>
#include <random>
#include <stdexcept>

namespace cybmw {

void BmwElement::add(std::size_t b, const RingValue& c) {
    if (c.is_zero()) return;
    auto it = coeffs.find(b);
    if (it == coeffs.end()) {
        coeffs.emplace(b, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) coeffs.erase(it);
}

BmwElement BmwAlgebra::project_ak(const BmwElement& x) const {
    BmwElement out{x.n, x.k, {}};
    for (const auto& [b, c] : x.coeffs)
        if (basis()[b].m == 0) out.add(b, c);
    return out;
}

Json BmwAlgebra::to_json(const BmwElement& x) const {
    Json j = Json::object();
    const auto ls = x.n == n() ? basis() : enumerate_basis(x.n, x.k);
    for (const auto& [b, c] : x.coeffs) j[ls[b].descriptor()] = cybmw::to_json(c);
    return j;
}

namespace {

template <class F>
class BmwImpl final : public BmwAlgebra {
public:
    using Alg = BmwAlgebraT<F>;
    using Vector = Vec<F>;

    BmwImpl(int n, const ParameterSet& p)
        : p_(p), fp_(std::make_shared<FieldParams<F>>(p)), alg_(std::make_shared<Alg>(n, fp_)) {}

    int n() const override { return alg_->n(); }
    int k() const override { return alg_->k(); }
    std::size_t dim() const override { return alg_->dim(); }
    const std::vector<BmwBasisIndex>& basis() const override { return alg_->basis(); }
    const ParameterSet& params() const override { return p_; }
    std::size_t enumerated() const override { return alg_->enumerated(); }

    RingValue ring(const F& x) const { return FieldTraits<F>::to_ring(x, p_.vars()); }
    F field(const RingValue& x) const { return FieldTraits<F>::from_ring(x); }

    BmwElement element(const Vector& v, int n) const {
        BmwElement e{n, k(), {}};
        for (Eigen::Index i = 0; i < v.size(); ++i)
            if (!cybmw::is_zero(v[i])) e.add(static_cast<std::size_t>(i), ring(v[i]));
        return e;
    }
    Vector vec(const BmwElement& x) const {
        if (x.n != n() || x.k != k()) throw std::invalid_argument("element belongs to another algebra");
        Vector v = Vector::Zero(static_cast<Eigen::Index>(dim()));
        for (const auto& [b, c] : x.coeffs) v[static_cast<Eigen::Index>(b)] = field(c);
        return v;
    }

    BmwElement unit(std::size_t b) const override {
        BmwElement e{n(), k(), {}};
        e.add(b, RingValue(1));
        return e;
    }
    BmwElement normalize(const Word& w) const override { return element(alg_->normalize(w), n()); }
    BmwElement left_mul_gen(const Token& t, std::size_t b) const override {
        return element(alg_->left_mul_gen(t, b), n());
    }
    BmwElement multiply(const BmwElement& x, const BmwElement& y) const override {
        return element(alg_->multiply(vec(x), vec(y)), n());
    }
    BmwElement star(const BmwElement& x) const override { return element(alg_->star(vec(x)), n()); }

    std::vector<std::vector<RingValue>> regrep(const Token& t) const override {
        Mat<F> m = Mat<F>(alg_->gen_matrix(t));
        std::vector<std::vector<RingValue>> out(dim(), std::vector<RingValue>(dim()));
        for (std::size_t r = 0; r < dim(); ++r)
            for (std::size_t c = 0; c < dim(); ++c)
                out[r][c] = ring(m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
        return out;
    }
    std::vector<RelationCheck> verify_relations() const override { return alg_->verify_relations(); }
    std::vector<RelationCheck> verify_ak_quotient() const override { return alg_->verify_ak_quotient(); }

    const MarkovTraceT<F>& tracer(CondExpectRules rules) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto& slot = traces_[rules.corrupt_crossing];
        if (!slot) {
            std::vector<std::shared_ptr<const Alg>> tower;
            for (int m = 1; m < n(); ++m) tower.push_back(std::make_shared<Alg>(m, fp_));
            if (n() >= 1) tower.push_back(alg_);
            slot = std::make_shared<MarkovTraceT<F>>(tower, rules);
        }
        return *slot;
    }
    BmwElement cond_expect(const BmwElement& x, CondExpectRules rules) const override {
        return element(tracer(rules).cond_expect(n(), vec(x)), n() - 1);
    }
    RingValue markov_trace(const BmwElement& x, CondExpectRules rules) const override {
        return ring(tracer(rules).trace(vec(x)));
    }
    std::vector<RingValue> trace_vector(CondExpectRules rules) const override {
        const auto& t = tracer(rules).tau(n());
        std::vector<RingValue> out;
        for (Eigen::Index i = 0; i < t.size(); ++i) out.push_back(ring(t[i]));
        return out;
    }
    Mat<F> gram_field(int threads) const { return tracer({}).gram(n(), threads); }
    std::vector<std::vector<RingValue>> gram(int threads) const override {
        Mat<F> g = gram_field(threads);
        std::vector<std::vector<RingValue>> out(dim(), std::vector<RingValue>(dim()));
        for (std::size_t r = 0; r < dim(); ++r)
            for (std::size_t c = 0; c < dim(); ++c)
                out[r][c] = ring(g(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
        return out;
    }
    RingValue gram_det(int threads) const override { return ring(bareiss_determinant(gram_field(threads))); }

private:
    ParameterSet p_;
    std::shared_ptr<const FieldParams<F>> fp_;
    std::shared_ptr<const Alg> alg_;
    mutable std::mutex mu_;
    mutable std::map<bool, std::shared_ptr<MarkovTraceT<F>>> traces_;
};

}  // namespace

std::shared_ptr<const BmwAlgebra> make_bmw(int n, const ParameterSet& p) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (!p.vars()) return std::make_shared<BmwImpl<Rational>>(n, p);
    return std::make_shared<BmwImpl<RationalFunction>>(n, p);
}

std::string ring_name(const RingSpec& spec) {
    std::string s;
    switch (spec.mode) {
        case RingMode::GenericPlus: s = "generic-plus"; break;
        case RingMode::GenericMinus: s = "generic-minus"; break;
        case RingMode::BrauerClassical: s = std::string("brauer") + (spec.sigma > 0 ? "+" : "-"); break;
        case RingMode::Universal: s = "universal"; break;
        case RingMode::RationalPoint: {
            s = std::string("point") + (spec.sigma > 0 ? "+" : "-");
            if (!spec.point.empty())
                for (const auto& [name, v] : spec.point) s += ";" + name + "=" + v.str();
            else
                s += ";seed=" + std::to_string(spec.seed.value_or(1));
            break;
        }
    }
    return s + ";k=" + std::to_string(spec.k);
}

std::shared_ptr<const BmwAlgebra> get_bmw(int n, const RingSpec& spec) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const BmwAlgebra>> cache;
    const std::string key = std::to_string(n) + "|" + ring_name(spec);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto alg = make_bmw(n, make_parameters(spec));
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, alg).first->second;
}

BrauerElement xi_word(const Word& w, int n, const ParameterSet& p) {
    if (p.spec().mode != RingMode::BrauerClassical) throw std::invalid_argument("ξ needs the Brauer specialization");
    const int k = p.k();
    BrauerElement acc(CycloBrauerDiagram::identity(n, k), RingValue(1));
    for (const auto& t : w) {
        CycloBrauerDiagram d;
        RingValue c(1);
        switch (t.kind) {
            case Token::Y: d = CycloBrauerDiagram::y_power(n, k, t.inverse ? -1 : 1); break;
            case Token::X:
                d = CycloBrauerDiagram::crossing(n, k, t.index);
                c = t.inverse ? p.lambda_inv() : p.lambda();
                break;
            case Token::E: d = CycloBrauerDiagram::cupcap(n, k, t.index); break;
        }
        acc = acc * BrauerElement(d, c);
    }
    return acc;
}

BrauerElement specialize_brauer(const BmwAlgebra& B, const BmwElement& x) {
    BrauerElement out;
    for (const auto& [b, c] : x.coeffs) out += xi_word(B.word(b), B.n(), B.params()).scaled(c);
    return out;
}

bool check_commuting_square_brauer(int n, int k, int sigma) {
    RingSpec spec;
    spec.mode = RingMode::BrauerClassical;
    spec.k = k;
    spec.sigma = sigma;
    auto B = get_bmw(n, spec);
    auto tau = B->trace_vector();
    for (std::size_t b = 0; b < B->dim(); ++b)
        if (trace_c(xi_word(B->word(b), n, B->params())) != tau[b]) return false;
    return true;
}

bool check_commuting_square_point(int n, int k, int sigma, std::uint64_t seed, int samples) {
    RingSpec gs;
    gs.mode = sigma > 0 ? RingMode::GenericPlus : RingMode::GenericMinus;
    gs.k = k;
    auto G = get_bmw(n, gs);
    ParameterSet pt = random_rational_point(k, sigma, seed);
    auto P = get_bmw(n, pt.spec());
    Assignment nu;
    for (const auto& [name, v] : pt.spec().point) nu[name] = RingValue(v);
    std::mt19937_64 rng(seed);
    for (int s = 0; s < samples; ++s) {
        BmwElement xg{n, k, {}}, xp{n, k, {}};
        int terms = 1 + static_cast<int>(rng() % 3);
        for (int t = 0; t < terms; ++t) {
            auto b = static_cast<std::size_t>(rng() % G->dim());
            long c = static_cast<long>(rng() % 11) - 5;
            xg.add(b, RingValue(c));
            xp.add(b, RingValue(c));
        }
        if (apply_hom(G->markov_trace(xg), nu) != P->markov_trace(xp)) return false;
    }
    return true;
}

RingValue gram_det_bmw(int n, const RingSpec& spec, std::size_t guard, int threads) {
    if (rank_formula(n, spec.k) > guard) throw std::length_error("Gram matrix exceeds size guard");
    return get_bmw(n, spec)->gram_det(threads);
}

}  // namespace cybmw

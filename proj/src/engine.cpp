#include "cybmw/engine.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace cybmw {

Rational FieldTraits<Rational>::from_ring(const RingValue& v) {
    if (v.is_rational()) return v.rational();
    const auto& l = v.localized();
    if (l.delta_power == 0 && l.poly.is_constant()) return Rational(l.poly.constant_term());
    throw RingError("value is not a rational number: " + v.str());
}

// ---------------------------------------------------------------- FieldParams

template <class F>
FieldParams<F>::FieldParams(const ParameterSet& p)
    : src_(std::make_shared<ParameterSet>(p)),
      k_(p.k()),
      q_(FieldTraits<F>::from_ring(p.q())),
      delta_(FieldTraits<F>::from_ring(p.delta())),
      lambda_(FieldTraits<F>::from_ring(p.lambda())),
      lambda_inv_(FieldTraits<F>::from_ring(p.lambda_inv())),
      q0_inv_(FieldTraits<F>::from_ring(p.q0_inv())) {
    for (int i = 0; i <= k_; ++i) qs_.push_back(FieldTraits<F>::from_ring(p.qi(i)));
}

template <class F>
F FieldParams<F>::A(int j) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = A_.find(j);
    if (it != A_.end()) return it->second;
    F v = FieldTraits<F>::from_ring(src_->extend_A(j));
    A_.emplace(j, v);
    return v;
}

// ---------------------------------------------------------------- relators

template <class F>
std::vector<Relator<F>> defining_relators(int n, const FieldParams<F>& p) {
    using T = Token;
    std::vector<Relator<F>> rels;
    const F one(1), mone(-1);
    auto add = [&](std::string name, std::vector<std::pair<F, Word>> terms) {
        rels.push_back(Relator<F>{std::move(name), std::move(terms)});
    };
    auto comm = [&](std::string name, Word a, Word b) {
        Word ab = a, ba = b;
        ab.insert(ab.end(), b.begin(), b.end());
        ba.insert(ba.end(), a.begin(), a.end());
        add(std::move(name), {{one, ab}, {mone, ba}});
    };
    const int k = p.k();
    for (int i = 1; i < n; ++i) {
        add("ix", {{one, {T::x(i), T::x(i, true)}}, {mone, {}}});
        add("ix", {{one, {T::x(i, true), T::x(i)}}, {mone, {}}});
    }
    add("yinv", {{one, {T::y(), T::y(true)}}, {mone, {}}});
    add("yinv", {{one, {T::y(true), T::y()}}, {mone, {}}});
    for (int i = 1; i < n; ++i)
        for (int j = i + 2; j < n; ++j) {
            comm("braid2", {T::x(i)}, {T::x(j)});
            comm("xecomm", {T::x(i)}, {T::e(j)});
            comm("xecomm", {T::x(j)}, {T::e(i)});
            comm("eecomm", {T::e(i)}, {T::e(j)});
        }
    for (int i = 1; i + 1 < n; ++i)
        add("braid1", {{one, {T::x(i), T::x(i + 1), T::x(i)}}, {mone, {T::x(i + 1), T::x(i), T::x(i + 1)}}});
    for (int i = 1; i < n; ++i) {
        add("untwist", {{one, {T::x(i), T::e(i)}}, {-p.lambda(), {T::e(i)}}});
        add("untwist", {{one, {T::e(i), T::x(i)}}, {-p.lambda(), {T::e(i)}}});
        for (int j : {i - 1, i + 1}) {
            if (j < 1 || j >= n) continue;
            add("xxe", {{one, {T::x(i), T::x(j), T::e(i)}}, {mone, {T::e(j), T::e(i)}}});
            add("xxe", {{one, {T::e(j), T::x(i), T::x(j)}}, {mone, {T::e(j), T::e(i)}}});
            add("eee", {{one, {T::e(i), T::e(j), T::e(i)}}, {mone, {T::e(i)}}});
        }
        add("esq", {{one, {T::e(i), T::e(i)}}, {-p.A(0), {T::e(i)}}});
    }
    {
        std::vector<std::pair<F, Word>> t{{one, Word(static_cast<std::size_t>(k), T::y())}};
        for (int i = 0; i < k; ++i)
            if (!is_zero(p.qi(i))) t.push_back({-p.qi(i), Word(static_cast<std::size_t>(i), T::y())});
        add("ycyclo", std::move(t));
    }
    if (n >= 2) {
        add("braidb", {{one, {T::x(1), T::y(), T::x(1), T::y()}}, {mone, {T::y(), T::x(1), T::y(), T::x(1)}}});
        add("eyxy", {{one, {T::y(), T::x(1), T::y(), T::e(1)}}, {-p.lambda_inv(), {T::e(1)}}});
        add("eyxy", {{one, {T::e(1), T::y(), T::x(1), T::y()}}, {-p.lambda_inv(), {T::e(1)}}});
        for (int m = 0; m < k; ++m) {
            Word w{T::e(1)};
            for (int r = 0; r < m; ++r) w.push_back(T::y());
            w.push_back(T::e(1));
            add("eye", {{one, w}, {-p.A(m), {T::e(1)}}});
        }
    }
    for (int i = 2; i < n; ++i) {
        comm("ycommx", {T::y()}, {T::x(i)});
        comm("ycomme", {T::y()}, {T::e(i)});
    }
    return rels;
}

// ---------------------------------------------------------------- sparse helpers

namespace {

template <class F>
using SVec = std::vector<std::pair<int, F>>;

// a + c·b, both sorted by id
template <class F>
SVec<F> axpy(const SVec<F>& a, const F& c, const SVec<F>& b) {
    SVec<F> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            F v = c * b[j].second;
            if (!is_zero(v)) out.emplace_back(b[j].first, std::move(v));
            ++j;
        } else {
            F v = a[i].second + c * b[j].second;
            if (!is_zero(v)) out.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

template <class F>
SVec<F> scaled(SVec<F> a, const F& c) {
    if (is_zero(c)) return {};
    for (auto& t : a) t.second = t.second * c;
    return a;
}

}  // namespace

// ---------------------------------------------------------------- VectorEnumerator

template <class F>
VectorEnumerator<F>::VectorEnumerator(int n, const FieldParams<F>& p, std::vector<Relator<F>> rels, std::size_t limit)
    : n_(n), p_(p), rels_(std::move(rels)), limit_(limit) {
    dead_.push_back(0);
    repl_.emplace_back();
    img_.emplace_back(static_cast<std::size_t>(ngens()));
    live_count_ = 1;
}

template <class F>
int VectorEnumerator<F>::gen_of(const Token& t) const {
    switch (t.kind) {
        case Token::Y: return 0;
        case Token::X: return t.index;
        case Token::E: return n_ - 1 + t.index;
    }
    return -1;
}

template <class F>
int VectorEnumerator<F>::define(int v, int g) {
    if (frozen_) throw std::logic_error("enumeration table is incomplete");
    if (dead_.size() >= limit_) throw std::length_error("vector enumeration exceeded its limit");
    int u = static_cast<int>(dead_.size());
    dead_.push_back(0);
    repl_.emplace_back();
    img_.emplace_back(static_cast<std::size_t>(ngens()));
    img_[static_cast<std::size_t>(v)][static_cast<std::size_t>(g)] = SV{{u, F(1)}};
    ++live_count_;
    return u;
}

template <class F>
const typename VectorEnumerator<F>::SV& VectorEnumerator<F>::repl_of(int id) {
    auto& r = repl_[static_cast<std::size_t>(id)];
    bool stale = false;
    for (const auto& t : r) stale = stale || dead_[static_cast<std::size_t>(t.first)];
    if (stale) {
        SV fresh = resolve(r);
        repl_[static_cast<std::size_t>(id)] = std::move(fresh);
    }
    return repl_[static_cast<std::size_t>(id)];
}

template <class F>
typename VectorEnumerator<F>::SV VectorEnumerator<F>::resolve(const SV& x) {
    bool stale = false;
    for (const auto& t : x) stale = stale || dead_[static_cast<std::size_t>(t.first)];
    if (!stale) return x;
    SV live, out;
    for (const auto& t : x)
        if (!dead_[static_cast<std::size_t>(t.first)]) live.push_back(t);
    out = std::move(live);
    for (const auto& t : x)
        if (dead_[static_cast<std::size_t>(t.first)]) {
            SV r = repl_of(t.first);
            out = axpy(out, t.second, r);
        }
    return out;
}

template <class F>
typename VectorEnumerator<F>::SV VectorEnumerator<F>::image(int v, int g) {
    auto vi = static_cast<std::size_t>(v), gi = static_cast<std::size_t>(g);
    if (dead_[vi]) throw std::logic_error("image of a dead vector");
    if (!img_[vi][gi]) define(v, g);
    SV s = resolve(*img_[vi][gi]);
    *img_[vi][gi] = s;
    return s;
}

template <class F>
typename VectorEnumerator<F>::SV VectorEnumerator<F>::apply_gen(int g, const SV& x0) {
    SV x = resolve(x0), out;
    for (const auto& [v, c] : x) out = axpy(out, c, image(v, g));
    return out;
}

template <class F>
typename VectorEnumerator<F>::SV VectorEnumerator<F>::apply_token(const Token& t, const SV& x) {
    if (!t.inverse) return apply_gen(gen_of(t), x);
    if (t.kind == Token::X) {
        SV out = apply_gen(t.index, x);
        if (!is_zero(p_.delta())) {
            out = axpy(out, -p_.delta(), resolve(x));
            out = axpy(out, p_.delta(), apply_gen(n_ - 1 + t.index, x));
        }
        return out;
    }
    // Y^{-1} = −q_0^{-1} Σ_{i<k} q_{i+1} Y^i
    SV out, pw = resolve(x);
    for (int i = 0; i < p_.k(); ++i) {
        if (i > 0) pw = apply_gen(0, pw);
        if (!is_zero(p_.qi(i + 1))) out = axpy(out, p_.qi(i + 1), pw);
    }
    return scaled(out, F(-p_.q0_inv()));
}

template <class F>
typename VectorEnumerator<F>::SV VectorEnumerator<F>::apply_word(const Word& w, SV x) {
    for (auto it = w.rbegin(); it != w.rend(); ++it) x = apply_token(*it, x);
    return resolve(x);
}

template <class F>
typename VectorEnumerator<F>::SV VectorEnumerator<F>::eval(const Relator<F>& r, int v) {
    SV acc;
    for (const auto& [c, w] : r.terms) acc = axpy(acc, c, apply_word(w, SV{{v, F(1)}}));
    return resolve(acc);
}

template <class F>
void VectorEnumerator<F>::coincide(SV z0) {
    struct Deduction {
        int g;
        SV rep, old;
    };
    std::deque<SV> rels{std::move(z0)};
    std::deque<Deduction> deds;
    while (!rels.empty() || !deds.empty()) {
        if (!deds.empty()) {
            Deduction d = std::move(deds.front());
            deds.pop_front();
            SV rep = resolve(d.rep), old = resolve(d.old);
            std::vector<std::size_t> open;
            for (std::size_t t = 0; t < rep.size(); ++t)
                if (!img_[static_cast<std::size_t>(rep[t].first)][static_cast<std::size_t>(d.g)]) open.push_back(t);
            if (!open.empty()) {
                // solve for one undefined image instead of creating a vector for it
                std::size_t star = open.back();
                SV rest;
                for (std::size_t t = 0; t < rep.size(); ++t)
                    if (t != star) rest = axpy(rest, rep[t].second, image(rep[t].first, d.g));
                SV val = scaled(axpy(old, F(-1), rest), F(F(1) / rep[star].second));
                auto vi = static_cast<std::size_t>(rep[star].first);
                if (dead_[vi]) {
                    rels.push_back(axpy(apply_gen(d.g, rep), F(-1), old));
                } else {
                    img_[vi][static_cast<std::size_t>(d.g)] = std::move(val);
                }
            } else {
                rels.push_back(axpy(apply_gen(d.g, rep), F(-1), old));
            }
            continue;
        }
        SV z = resolve(rels.front());
        rels.pop_front();
        if (z.empty()) continue;
        auto [pid, pc] = z.back();
        if (pid == 0) throw std::runtime_error("presentation collapses: the identity vanishes");
        SV r;
        F inv = F(-1) / pc;
        for (std::size_t t = 0; t + 1 < z.size(); ++t) r.emplace_back(z[t].first, z[t].second * inv);
        auto pi = static_cast<std::size_t>(pid);
        dead_[pi] = 1;
        --live_count_;
        for (int g = 0; g < ngens(); ++g) {
            auto& slot = img_[pi][static_cast<std::size_t>(g)];
            if (slot) deds.push_back(Deduction{g, r, std::move(*slot)});
            slot.reset();
        }
        repl_[pi] = std::move(r);
    }
}

template <class F>
bool VectorEnumerator<F>::pass() {
    bool changed = false;
    for (int v = 0; v < static_cast<int>(dead_.size()); ++v) {
        auto vi = static_cast<std::size_t>(v);
        if (dead_[vi]) continue;
        for (const auto& r : rels_) {
            if (dead_[vi]) break;
            std::size_t before = dead_.size();
            SV z = eval(r, v);
            if (dead_.size() != before) changed = true;
            if (!z.empty()) {
                changed = true;
                coincide(std::move(z));
            }
        }
        if (dead_[vi]) continue;
        for (int g = 0; g < ngens(); ++g)
            if (!img_[vi][static_cast<std::size_t>(g)]) {
                image(v, g);
                changed = true;
            }
    }
    return changed;
}

template <class F>
std::size_t VectorEnumerator<F>::run() {
    while (pass()) {
    }
    alive_.clear();
    for (std::size_t v = 0; v < dead_.size(); ++v)
        if (!dead_[v]) alive_.push_back(static_cast<int>(v));
    frozen_ = true;
    return alive_.size();
}

template <class F>
typename VectorEnumerator<F>::SV VectorEnumerator<F>::column(int g, int alive_pos) {
    SV s = image(alive_[static_cast<std::size_t>(alive_pos)], g);
    for (auto& t : s) t.first = static_cast<int>(std::lower_bound(alive_.begin(), alive_.end(), t.first) - alive_.begin());
    return s;
}

template <class F>
typename VectorEnumerator<F>::SV VectorEnumerator<F>::word_vector(const Word& w) {
    SV s = apply_word(w, SV{{0, F(1)}});
    for (auto& t : s) t.first = static_cast<int>(std::lower_bound(alive_.begin(), alive_.end(), t.first) - alive_.begin());
    return s;
}

// ---------------------------------------------------------------- BmwAlgebraT

template <class F>
BmwAlgebraT<F>::BmwAlgebraT(int n, std::shared_ptr<const FieldParams<F>> p) : n_(n), p_(std::move(p)) {
    const int k = p_->k();
    basis_ = enumerate_basis(n, k);
    const std::size_t N = basis_.size();
    for (std::size_t b = 0; b < N; ++b) {
        words_.push_back(word_of(basis_[b]));
        lookup_.emplace(basis_[b].descriptor(), b);
        if (words_.back().empty()) identity_ = b;
    }
    const int G = 2 * n - 1;
    gens_.assign(static_cast<std::size_t>(G), Matrix(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N)));
    if (n == 0) return;

    VectorEnumerator<F> en(n, *p_, defining_relators(n, *p_));
    std::size_t d = en.run();
    enumerated_ = en.defined();
    if (d != N)
        throw std::runtime_error("enumerated module has dimension " + std::to_string(d) + ", spanning set has " +
                                 std::to_string(N));

    using SV = typename VectorEnumerator<F>::SV;
    // echelon form of the basis words, pivot = largest coordinate
    struct Row {
        SV vec, comb;
    };
    std::vector<std::optional<Row>> piv(N);
    std::vector<SV> wcols(N);
    for (std::size_t b = 0; b < N; ++b) {
        wcols[b] = en.word_vector(words_[b]);
        SV v = wcols[b], comb{{static_cast<int>(b), F(1)}};
        while (!v.empty()) {
            auto p = static_cast<std::size_t>(v.back().first);
            if (!piv[p]) break;
            F f = v.back().second / piv[p]->vec.back().second;
            v = axpy(v, F(-f), piv[p]->vec);
            comb = axpy(comb, F(-f), piv[p]->comb);
        }
        if (v.empty()) throw std::runtime_error("spanning set is linearly dependent at this specialization");
        piv[static_cast<std::size_t>(v.back().first)] = Row{v, comb};
    }
    auto coords = [&](SV y) {
        SV out;
        while (!y.empty()) {
            auto p = static_cast<std::size_t>(y.back().first);
            F f = y.back().second / piv[p]->vec.back().second;
            y = axpy(y, F(-f), piv[p]->vec);
            out = axpy(out, f, piv[p]->comb);
        }
        return out;
    };
    // coordinates of each module basis vector
    std::vector<SV> cinv(N);
    for (std::size_t a = 0; a < N; ++a) cinv[a] = coords(SV{{static_cast<int>(a), F(1)}});
    for (int g = 0; g < G; ++g) {
        std::vector<SV> mcol(N);
        for (std::size_t a = 0; a < N; ++a) mcol[a] = en.column(g, static_cast<int>(a));
        std::vector<Eigen::Triplet<F>> trip;
        for (std::size_t b = 0; b < N; ++b) {
            SV img;
            for (const auto& [a, c] : wcols[b]) img = axpy(img, c, mcol[static_cast<std::size_t>(a)]);
            SV out;
            for (const auto& [a, c] : img) out = axpy(out, c, cinv[static_cast<std::size_t>(a)]);
            for (const auto& [r, c] : out)
                trip.emplace_back(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(b), c);
        }
        gens_[static_cast<std::size_t>(g)].setFromTriplets(trip.begin(), trip.end());
    }
    Matrix I = identity_matrix();
    for (int i = 1; i < n; ++i) {
        Matrix xi = gens_[static_cast<std::size_t>(i)];
        if (!is_zero(p_->delta()))
            xi = Matrix(xi - p_->delta() * I + p_->delta() * gens_[static_cast<std::size_t>(n - 1 + i)]);
        x_inv_.push_back(xi);
    }
    Matrix acc(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N)), pw = I;
    for (int i = 0; i < k; ++i) {
        if (i > 0) pw = Matrix(gens_[0] * pw);
        if (!is_zero(p_->qi(i + 1))) acc = Matrix(acc + p_->qi(i + 1) * pw);
    }
    y_inv_ = Matrix(F(-p_->q0_inv()) * acc);
}

template <class F>
std::optional<std::size_t> BmwAlgebraT<F>::find(const BmwBasisIndex& b) const {
    auto it = lookup_.find(b.descriptor());
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

template <class F>
typename BmwAlgebraT<F>::Vector BmwAlgebraT<F>::unit(std::size_t b) const {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim()));
    v[static_cast<Eigen::Index>(b)] = F(1);
    return v;
}

template <class F>
typename BmwAlgebraT<F>::Matrix BmwAlgebraT<F>::identity_matrix() const {
    Matrix I(static_cast<Eigen::Index>(dim()), static_cast<Eigen::Index>(dim()));
    I.setIdentity();
    return I;
}

template <class F>
const typename BmwAlgebraT<F>::Matrix& BmwAlgebraT<F>::gen_matrix(const Token& t) const {
    if (t.kind != Token::Y && (t.index < 1 || t.index >= n_)) throw std::out_of_range("generator index");
    switch (t.kind) {
        case Token::Y: return t.inverse ? y_inv_ : gens_[0];
        case Token::X:
            return t.inverse ? x_inv_[static_cast<std::size_t>(t.index - 1)] : gens_[static_cast<std::size_t>(t.index)];
        case Token::E: return gens_[static_cast<std::size_t>(n_ - 1 + t.index)];
    }
    throw std::logic_error("token kind");
}

template <class F>
typename BmwAlgebraT<F>::Vector BmwAlgebraT<F>::apply(const Token& t, const Vector& x) const {
    return gen_matrix(t) * x;
}

template <class F>
typename BmwAlgebraT<F>::Vector BmwAlgebraT<F>::apply(const Word& w, Vector x) const {
    for (auto it = w.rbegin(); it != w.rend(); ++it) x = apply(*it, x);
    return x;
}

template <class F>
typename BmwAlgebraT<F>::Vector BmwAlgebraT<F>::multiply(const Vector& x, const Vector& y) const {
    Vector out = Vector::Zero(static_cast<Eigen::Index>(dim()));
    for (std::size_t b = 0; b < dim(); ++b) {
        const F& c = x[static_cast<Eigen::Index>(b)];
        if (is_zero(c)) continue;
        out += c * apply(words_[b], y);
    }
    return out;
}

template <class F>
typename BmwAlgebraT<F>::Vector BmwAlgebraT<F>::star(const Vector& x) const {
    Vector out = Vector::Zero(static_cast<Eigen::Index>(dim()));
    for (std::size_t b = 0; b < dim(); ++b) {
        const F& c = x[static_cast<Eigen::Index>(b)];
        if (is_zero(c)) continue;
        out += c * normalize(reversed(words_[b]));
    }
    return out;
}

template <class F>
typename BmwAlgebraT<F>::Matrix BmwAlgebraT<F>::word_matrix(const Word& w) const {
    Matrix m = identity_matrix();
    for (const auto& t : w) m = Matrix(m * gen_matrix(t));
    return m;
}

template <class F>
typename BmwAlgebraT<F>::Matrix BmwAlgebraT<F>::y_prime(int i, int p) const {
    Matrix one = word_matrix(y_prime_word(i, p < 0 ? -1 : 1));
    Matrix m = identity_matrix();
    for (int r = 0; r < std::abs(p); ++r) m = Matrix(m * one);
    return m;
}

template <class F>
std::vector<std::size_t> BmwAlgebraT<F>::ak_indices() const {
    std::vector<std::size_t> s;
    for (std::size_t b = 0; b < dim(); ++b)
        if (basis_[b].m == 0) s.push_back(b);
    return s;
}

// ---------------------------------------------------------------- relation checks

namespace {

template <class F>
class Checker {
public:
    using M = SpMat<F>;
    explicit Checker(std::vector<RelationCheck>& out) : out_(out) {}

    void check(const std::string& family, const std::string& instance, const M& diff) {
        auto it = std::find_if(out_.begin(), out_.end(), [&](const RelationCheck& c) { return c.name == family; });
        if (it == out_.end()) {
            out_.push_back(RelationCheck{family, true, ""});
            it = out_.end() - 1;
        }
        if (!is_zero_matrix(diff)) {
            it->pass = false;
            it->note += (it->note.empty() ? "" : "; ") + instance;
        }
    }
    void note(const std::string& family, const std::string& text) {
        auto it = std::find_if(out_.begin(), out_.end(), [&](const RelationCheck& c) { return c.name == family; });
        if (it != out_.end() && it->pass) it->note = text;
    }

private:
    std::vector<RelationCheck>& out_;
};

std::string idx(std::initializer_list<int> v) {
    std::string s;
    for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
    return "(" + s + ")";
}

}  // namespace

template <class F>
std::vector<RelationCheck> BmwAlgebraT<F>::verify_relations() const {
    using M = Matrix;
    std::vector<RelationCheck> out;
    Checker<F> ck(out);
    const int n = n_, k = p_->k();
    const F& d = p_->delta();
    const F& lam = p_->lambda();
    const F& lami = p_->lambda_inv();
    const M I = identity_matrix();
    auto X = [&](int i) -> const M& { return gen_matrix(Token::x(i)); };
    auto Xi = [&](int i) -> const M& { return gen_matrix(Token::x(i, true)); };
    auto E = [&](int i) -> const M& { return gen_matrix(Token::e(i)); };
    const M& Y = gen_matrix(Token::y());
    const M& Yi = gen_matrix(Token::y(true));
    auto mul = [](std::initializer_list<const M*> fs) {
        auto it = fs.begin();
        M r = **it;
        for (++it; it != fs.end(); ++it) r = M(r * **it);
        return r;
    };
    // Y'_i^p, cached
    std::map<std::pair<int, int>, M> ypc;
    std::map<std::pair<int, int>, M> ybase;
    std::function<const M&(int, int)> Yp = [&](int i, int p) -> const M& {
        auto it = ypc.find({i, p});
        if (it != ypc.end()) return it->second;
        if (p == 0) return ypc.emplace(std::make_pair(i, p), I).first->second;
        int s = p > 0 ? 1 : -1;
        auto bt = ybase.find({i, s});
        if (bt == ybase.end()) bt = ybase.emplace(std::make_pair(i, s), word_matrix(y_prime_word(i, s))).first;
        M m = M(Yp(i, p - s) * bt->second);
        return ypc.emplace(std::make_pair(i, p), std::move(m)).first->second;
    };

    // defining relations
    for (int i = 1; i < n; ++i) ck.check("ix", idx({i}), M(X(i) - Xi(i) - d * (I - E(i))));
    ck.check("yinv", "", M(Y * Yi - I));
    for (int i = 1; i < n; ++i)
        for (int j = i + 2; j < n; ++j) {
            ck.check("braid2", idx({i, j}), M(X(i) * X(j) - X(j) * X(i)));
            ck.check("xecomm", idx({i, j}), M(X(i) * E(j) - E(j) * X(i)));
            ck.check("xecomm", idx({j, i}), M(X(j) * E(i) - E(i) * X(j)));
            ck.check("eecomm", idx({i, j}), M(E(i) * E(j) - E(j) * E(i)));
        }
    for (int i = 1; i + 1 < n; ++i)
        ck.check("braid1", idx({i}), M(mul({&X(i), &X(i + 1), &X(i)}) - mul({&X(i + 1), &X(i), &X(i + 1)})));
    for (int i = 1; i < n; ++i) {
        ck.check("untwist", idx({i}), M(X(i) * E(i) - lam * E(i)));
        ck.check("untwist", idx({i}), M(E(i) * X(i) - lam * E(i)));
        for (int j : {i - 1, i + 1}) {
            if (j < 1 || j >= n) continue;
            ck.check("xxe", idx({i, j}), M(mul({&X(i), &X(j), &E(i)}) - E(j) * E(i)));
            ck.check("xxe", idx({i, j}), M(mul({&E(j), &X(i), &X(j)}) - E(j) * E(i)));
            ck.check("eee", idx({i, j}), M(mul({&E(i), &E(j), &E(i)}) - E(i)));
        }
        ck.check("esq", idx({i}), M(E(i) * E(i) - p_->A(0) * E(i)));
    }
    {
        M lhs = Yp(1, k), rhs(I.rows(), I.cols());
        for (int i = 0; i < k; ++i) rhs = M(rhs + p_->qi(i) * Yp(1, i));
        ck.check("ycyclo", "", M(lhs - rhs));
    }
    if (n >= 2) {
        ck.check("braidb", "", M(mul({&X(1), &Y, &X(1), &Y}) - mul({&Y, &X(1), &Y, &X(1)})));
        ck.check("eyxy", "", M(mul({&Y, &X(1), &Y, &E(1)}) - lami * E(1)));
        ck.check("eyxy", "", M(mul({&E(1), &Y, &X(1), &Y}) - lami * E(1)));
        for (int m = 0; m < k; ++m) ck.check("eye", idx({m}), M(mul({&E(1), &Yp(1, m), &E(1)}) - p_->A(m) * E(1)));
        for (int m = -k; m <= 2 * k; ++m)
            ck.check("negeye", idx({m}), M(mul({&E(1), &Yp(1, m), &E(1)}) - p_->A(m) * E(1)));
    }
    for (int i = 2; i < n; ++i) {
        ck.check("ycommx", idx({i}), M(Y * X(i) - X(i) * Y));
        ck.check("ycomme", idx({i}), M(Y * E(i) - E(i) * Y));
    }

    // derived identities
    for (int i = 1; i < n; ++i) {
        ck.check("xi2", idx({i}), M(X(i) * X(i) - I - d * X(i) + (d * lam) * E(i)));
        for (int j : {i - 1, i + 1}) {
            if (j < 1 || j >= n) continue;
            ck.check("exe", idx({i, j}), M(mul({&E(i), &X(j), &E(i)}) - lami * E(i)));
        }
        for (int j = 1; j <= n; ++j) {
            if (i == j || i == j - 1) continue;
            ck.check("prop1b", idx({i, j}), M(X(i) * Yp(j, 1) - Yp(j, 1) * X(i)));
            ck.check("prop1b", idx({i, j}), M(E(i) * Yp(j, 1) - Yp(j, 1) * E(i)));
        }
        ck.check("prop1d", idx({i}), M(mul({&Yp(i, 1), &X(i), &Yp(i, 1), &E(i)}) - lami * E(i)));
        ck.check("prop1d", idx({i}), M(mul({&E(i), &Yp(i, 1), &X(i), &Yp(i, 1)}) - lami * E(i)));
        for (int p = -k; p <= k; ++p) {
            ck.check("m9", idx({i, p}), M(E(i) * Yp(i + 1, p) - E(i) * Yp(i, -p)));
            ck.check("m9", idx({i, p}), M(Yp(i + 1, p) * E(i) - Yp(i, -p) * E(i)));
        }
    }
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int a : {1, -1})
                ck.check("prop1c", idx({i, j, a}), M(Yp(i, a) * Yp(j, 1) - Yp(j, 1) * Yp(i, a)));
    for (int i = 1; i + 2 < n; ++i) {
        M eee = mul({&E(i), &E(i + 1), &E(i + 2)});
        ck.check("ep2", "X" + idx({i}), M(eee * X(i) - X(i + 2) * eee));
        ck.check("ep2", "e" + idx({i}), M(eee * E(i) - E(i + 2) * eee));
        ck.check("ep2", "Y'" + idx({i}), M(eee * Yp(i, 1) - Yp(i + 2, 1) * eee));
    }
    for (int i = 1; i + 1 < n; ++i) {
        M xx = X(i) * X(i + 1);
        ck.check("XXp1", "X" + idx({i}), M(xx * X(i) - X(i + 1) * xx));
        ck.check("XXp1", "e" + idx({i}), M(xx * E(i) - E(i + 1) * xx));
    }
    // lemma identities, 0 ≤ p ≤ k
    for (int i = 1; i < n; ++i) {
        const int j = i + 1;
        for (int p = 0; p <= k; ++p) {
            const std::string tag = idx({i, p});
            M s1(I.rows(), I.cols()), s2 = s1;
            // magic
            for (int s = 1; s <= p; ++s) {
                s1 = M(s1 + Yp(j, s) * Yp(i, p - s));
                s2 = M(s2 + mul({&Yp(j, s), &E(i), &Yp(i, p - s)}));
            }
            ck.check("magic", tag, M(X(i) * Yp(i, p) - Yp(j, p) * X(i) + d * s1 - d * s2));
            // m2
            s1 = M(I.rows(), I.cols());
            s2 = s1;
            for (int s = 1; s <= p; ++s) {
                s1 = M(s1 + Yp(j, s - p) * Yp(i, -s));
                s2 = M(s2 + mul({&Yp(j, s - p), &E(i), &Yp(i, -s)}));
            }
            ck.check("m2", tag, M(X(i) * Yp(i, -p) - Yp(j, -p) * X(i) - d * s1 + d * s2));
            // m5
            s1 = M(I.rows(), I.cols());
            s2 = s1;
            for (int s = 1; s <= p; ++s) {
                s1 = M(s1 + Yp(i, p - s) * Yp(j, s));
                s2 = M(s2 + mul({&Yp(i, p - s), &E(i), &Yp(j, s)}));
            }
            ck.check("m5", tag, M(X(i) * Yp(j, p) - Yp(i, p) * X(i) - d * s1 + d * s2));
            // m6
            s1 = M(I.rows(), I.cols());
            s2 = s1;
            for (int s = 1; s <= p; ++s) {
                s1 = M(s1 + Yp(i, -s) * Yp(j, s - p));
                s2 = M(s2 + mul({&Yp(i, -s), &E(i), &Yp(j, s - p)}));
            }
            ck.check("m6", tag, M(X(i) * Yp(j, -p) - Yp(i, -p) * X(i) + d * s1 - d * s2));
            // m10, m11: for p = 0 the empty sums leave X_i^2 = 1, which contradicts xi2
            if (p >= 1) {
                s1 = M(I.rows(), I.cols());
                s2 = s1;
                for (int s = 1; s <= p - 1; ++s) {
                    s1 = M(s1 + mul({&Yp(j, s), &Yp(i, p - s), &X(i)}));
                    s2 = M(s2 + mul({&Yp(j, s), &E(i), &Yp(i, p - s), &X(i)}));
                }
                ck.check("m10", tag, M(mul({&X(i), &Yp(i, p), &X(i)}) - Yp(j, p) + d * s1 - d * s2));
                s1 = M(I.rows(), I.cols());
                s2 = s1;
                for (int s = 1; s <= p - 1; ++s) {
                    s1 = M(s1 + mul({&X(i), &Yp(i, s), &Yp(j, p - s)}));
                    s2 = M(s2 + mul({&X(i), &Yp(i, s), &E(i), &Yp(j, p - s)}));
                }
                ck.check("m11", tag, M(mul({&X(i), &Yp(i, p), &X(i)}) - Yp(j, p) + d * s1 - d * s2));
            }
            // m12, m13
            s1 = M(I.rows(), I.cols());
            s2 = s1;
            for (int s = 0; s <= p; ++s) {
                s1 = M(s1 + mul({&Yp(j, s - p), &Yp(i, -s), &X(i)}));
                s2 = M(s2 + mul({&Yp(j, s - p), &E(i), &Yp(i, -s), &X(i)}));
            }
            ck.check("m12", tag, M(mul({&X(i), &Yp(i, -p), &X(i)}) - Yp(j, -p) - d * s1 + d * s2));
            s1 = M(I.rows(), I.cols());
            s2 = s1;
            for (int s = 0; s <= p; ++s) {
                s1 = M(s1 + mul({&X(i), &Yp(i, -s), &Yp(j, s - p)}));
                s2 = M(s2 + mul({&X(i), &Yp(i, -s), &E(i), &Yp(j, s - p)}));
            }
            ck.check("m13", tag, M(mul({&X(i), &Yp(i, -p), &X(i)}) - Yp(j, -p) - d * s1 + d * s2));
        }
    }
    if (n >= 2) {
        ck.note("m10", "checked for 1 <= p <= k");
        ck.note("m11", "checked for 1 <= p <= k");
    }
    return out;
}

template <class F>
std::vector<RelationCheck> BmwAlgebraT<F>::verify_ak_quotient() const {
    std::vector<RelationCheck> out;
    const auto S = ak_indices();
    std::vector<int> pos(dim(), -1);
    for (std::size_t a = 0; a < S.size(); ++a) pos[S[a]] = static_cast<int>(a);
    // ideal: images of m ≥ 1 elements have no m = 0 component, on both sides
    bool left = true, right = true;
    for (int g = 0; g < 2 * n_ - 1; ++g) {
        const Matrix& G = gens_[static_cast<std::size_t>(g)];
        for (int c = 0; c < G.outerSize(); ++c) {
            if (pos[static_cast<std::size_t>(c)] >= 0) continue;
            for (typename Matrix::InnerIterator it(G, c); it; ++it)
                if (pos[static_cast<std::size_t>(it.row())] >= 0 && !is_zero(it.value())) left = false;
        }
    }
    for (std::size_t b = 0; b < dim(); ++b) {
        if (basis_[b].m == 0) continue;
        Vector s = star(unit(b));
        for (std::size_t a : S)
            if (!is_zero(s[static_cast<Eigen::Index>(a)])) right = false;
    }
    out.push_back({"ideal", left && right, left ? (right ? "" : "not closed under star") : "not a left ideal"});
    const auto m = static_cast<Eigen::Index>(S.size());
    auto block = [&](const Matrix& G) {
        std::vector<Eigen::Triplet<F>> trip;
        for (std::size_t c = 0; c < S.size(); ++c)
            for (typename Matrix::InnerIterator it(G, static_cast<Eigen::Index>(S[c])); it; ++it) {
                int r = pos[static_cast<std::size_t>(it.row())];
                if (r >= 0) trip.emplace_back(r, static_cast<Eigen::Index>(c), it.value());
            }
        Matrix B(m, m);
        B.setFromTriplets(trip.begin(), trip.end());
        return B;
    };
    Matrix I(m, m);
    I.setIdentity();
    Matrix T0 = block(gens_[0]);
    std::vector<Matrix> T(static_cast<std::size_t>(n_));
    for (int i = 1; i < n_; ++i) T[static_cast<std::size_t>(i)] = Matrix(p_->q() * block(gens_[static_cast<std::size_t>(i)]));
    Checker<F> ck(out);
    const F qq = p_->q() * p_->q();
    if (n_ >= 2) ck.check("T0T1T0T1", "", Matrix(T0 * T[1] * T0 * T[1] - T[1] * T0 * T[1] * T0));
    for (int i = 1; i + 1 < n_; ++i) {
        const Matrix &a = T[static_cast<std::size_t>(i)], &b = T[static_cast<std::size_t>(i) + 1];
        ck.check("braid", idx({i}), Matrix(a * b * a - b * a * b));
    }
    for (int i = 1; i < n_; ++i)
        for (int j = i + 2; j < n_; ++j) {
            const Matrix &a = T[static_cast<std::size_t>(i)], &b = T[static_cast<std::size_t>(j)];
            ck.check("commute", idx({i, j}), Matrix(a * b - b * a));
        }
    {
        Matrix pw = I, rhs(m, m);
        for (int i = 0; i < p_->k(); ++i) {
            rhs = Matrix(rhs + p_->qi(i) * pw);
            pw = Matrix(pw * T0);
        }
        ck.check("cyclotomic", "", Matrix(pw - rhs));
    }
    for (int i = 1; i < n_; ++i) {
        const Matrix& a = T[static_cast<std::size_t>(i)];
        ck.check("quadratic", idx({i}), Matrix(a * a - (qq - F(1)) * a - qq * I));
    }
    return out;
}

template class FieldParams<Rational>;
template class FieldParams<RationalFunction>;
template class VectorEnumerator<Rational>;
template class VectorEnumerator<RationalFunction>;
template class BmwAlgebraT<Rational>;
template class BmwAlgebraT<RationalFunction>;
template std::vector<Relator<Rational>> defining_relators(int, const FieldParams<Rational>&);
template std::vector<Relator<RationalFunction>> defining_relators(int, const FieldParams<RationalFunction>&);

}  // namespace cybmw

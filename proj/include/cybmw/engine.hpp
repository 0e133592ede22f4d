#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cybmw/basis.hpp"
#include "cybmw/eigen_support.hpp"
#include "cybmw/params.hpp"
#include "cybmw/ratfun.hpp"

namespace cybmw {

// ---------------------------------------------------------------- scalars

template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
    static Rational from_ring(const RingValue& v);
    static RingValue to_ring(const Rational& x, const VarSetPtr&) { return RingValue(x); }
};

template <>
struct FieldTraits<RationalFunction> {
    static RationalFunction from_ring(const RingValue& v) { return RationalFunction::from_ring_value(v); }
    static RingValue to_ring(const RationalFunction& x, const VarSetPtr& vars) { return x.to_ring_value(vars); }
};

/// The parameters of a ParameterSet mapped into a field F.
template <class F>
class FieldParams {
public:
    explicit FieldParams(const ParameterSet& p);

    int k() const { return k_; }
    const F& q() const { return q_; }
    const F& delta() const { return delta_; }
    const F& lambda() const { return lambda_; }
    const F& lambda_inv() const { return lambda_inv_; }
    const F& q0_inv() const { return q0_inv_; }
    /// q_0..q_k with q_k = −1
    const F& qi(int i) const { return qs_[static_cast<std::size_t>(i)]; }
    F A(int j) const;
    const ParameterSet& source() const { return *src_; }

private:
    std::shared_ptr<const ParameterSet> src_;
    int k_;
    F q_, delta_, lambda_, lambda_inv_, q0_inv_;
    std::vector<F> qs_;
    mutable std::mutex mu_;
    mutable std::map<int, F> A_;
};

// ---------------------------------------------------------------- enumeration

/// Linear combination of words that must act as zero.
template <class F>
struct Relator {
    std::string name;
    std::vector<std::pair<F, Word>> terms;
};

template <class F>
std::vector<Relator<F>> defining_relators(int n, const FieldParams<F>& p);

/// Builds the left regular module of the algebra presented by generators
/// Y, X_i, e_i and the given relators, by enumerating vectors from the identity.
template <class F>
class VectorEnumerator {
public:
    using SV = std::vector<std::pair<int, F>>;

    VectorEnumerator(int n, const FieldParams<F>& p, std::vector<Relator<F>> rels, std::size_t limit = 200000);

    /// returns the dimension of the module
    std::size_t run();
    std::size_t defined() const { return dead_.size(); }
    const std::vector<int>& alive() const { return alive_; }
    /// column of generator g on the alive basis
    SV column(int g, int alive_pos);
    /// w·1 in alive coordinates
    SV word_vector(const Word& w);

    int gen_of(const Token& t) const;
    int ngens() const { return 2 * n_ - 1; }

private:
    int define(int v, int g);
    SV resolve(const SV& x);
    const SV& repl_of(int id);
    SV image(int v, int g);
    SV apply_gen(int g, const SV& x);
    SV apply_token(const Token& t, const SV& x);
    SV apply_word(const Word& w, SV x);
    SV eval(const Relator<F>& r, int v);
    void coincide(SV z);
    bool pass();

    int n_;
    const FieldParams<F>& p_;
    std::vector<Relator<F>> rels_;
    std::size_t limit_;
    std::vector<char> dead_;
    std::vector<SV> repl_;
    std::vector<std::vector<std::optional<SV>>> img_;
    std::vector<int> alive_;
    std::size_t live_count_ = 0;
    bool frozen_ = false;
};

// ---------------------------------------------------------------- the algebra

struct RelationCheck {
    std::string name;
    bool pass = false;
    std::string note;
};

/// B_n^k over a field F with structure constants in the theorem basis.
template <class F>
class BmwAlgebraT {
public:
    using Vector = Vec<F>;
    using Matrix = SpMat<F>;

    BmwAlgebraT(int n, std::shared_ptr<const FieldParams<F>> p);

    int n() const { return n_; }
    int k() const { return p_->k(); }
    std::size_t dim() const { return basis_.size(); }
    const FieldParams<F>& params() const { return *p_; }
    const std::vector<BmwBasisIndex>& basis() const { return basis_; }
    const Word& word(std::size_t b) const { return words_[b]; }
    std::size_t identity_index() const { return identity_; }
    /// vectors created by the enumeration before collapse
    std::size_t enumerated() const { return enumerated_; }
    std::optional<std::size_t> find(const BmwBasisIndex& b) const;

    Vector unit(std::size_t b) const;
    Vector one() const { return unit(identity_); }
    /// columns are images of basis elements
    const Matrix& gen_matrix(const Token& t) const;
    Matrix identity_matrix() const;
    Vector apply(const Token& t, const Vector& x) const;
    /// w·x, rightmost token first
    Vector apply(const Word& w, Vector x) const;
    Vector normalize(const Word& w) const { return apply(w, one()); }
    Vector left_mul_gen(const Token& t, std::size_t b) const { return apply(t, unit(b)); }
    Vector multiply(const Vector& x, const Vector& y) const;
    Vector star(const Vector& x) const;
    /// matrix of left multiplication by a word
    Matrix word_matrix(const Word& w) const;
    /// Y'_i^p as a matrix
    Matrix y_prime(int i, int p) const;

    std::vector<RelationCheck> verify_relations() const;
    /// m = 0 block; checks that the span of m ≥ 1 indices is a two-sided ideal
    std::vector<std::size_t> ak_indices() const;
    std::vector<RelationCheck> verify_ak_quotient() const;

private:
    int n_;
    std::shared_ptr<const FieldParams<F>> p_;
    std::vector<BmwBasisIndex> basis_;
    std::vector<Word> words_;
    std::map<std::string, std::size_t> lookup_;
    std::size_t identity_ = 0;
    std::size_t enumerated_ = 0;
    std::vector<Matrix> gens_;  // Y, X_1..X_{n-1}, e_1..e_{n-1}
    Matrix y_inv_;
    std::vector<Matrix> x_inv_;
};

/// the zero test shared by sparse checks
template <class F>
bool is_zero_matrix(const SpMat<F>& m) {
    for (int c = 0; c < m.outerSize(); ++c)
        for (typename SpMat<F>::InnerIterator it(m, c); it; ++it)
            if (!is_zero(it.value())) return false;
    return true;
}

template <class F>
bool is_zero_vector(const Vec<F>& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!is_zero(v[i])) return false;
    return true;
}

extern template class FieldParams<Rational>;
extern template class FieldParams<RationalFunction>;
extern template class VectorEnumerator<Rational>;
extern template class VectorEnumerator<RationalFunction>;
extern template class BmwAlgebraT<Rational>;
extern template class BmwAlgebraT<RationalFunction>;

}  // namespace cybmw

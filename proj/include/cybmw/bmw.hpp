#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cybmw/brauer.hpp"
#include "cybmw/engine.hpp"
#include "cybmw/json_io.hpp"
#include "cybmw/trace.hpp"

namespace cybmw {

/// Coordinates relative to the theorem basis of B_n^k.
struct BmwElement {
    int n = 0, k = 1;
    std::map<std::size_t, RingValue> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    void add(std::size_t b, const RingValue& c);
    friend bool operator==(const BmwElement& a, const BmwElement& b) {
        return a.n == b.n && a.k == b.k && a.coeffs == b.coeffs;
    }
};

/// B_n^k over the ring of a ParameterSet. Symbolic rings are handled in
/// their fraction field and mapped back, which fails loudly on non-units.
class BmwAlgebra {
public:
    virtual ~BmwAlgebra() = default;

    virtual int n() const = 0;
    virtual int k() const = 0;
    virtual std::size_t dim() const = 0;
    virtual const std::vector<BmwBasisIndex>& basis() const = 0;
    virtual const ParameterSet& params() const = 0;
    virtual std::size_t enumerated() const = 0;

    virtual BmwElement unit(std::size_t b) const = 0;
    virtual BmwElement normalize(const Word& w) const = 0;
    virtual BmwElement left_mul_gen(const Token& t, std::size_t b) const = 0;
    virtual BmwElement multiply(const BmwElement& x, const BmwElement& y) const = 0;
    virtual BmwElement star(const BmwElement& x) const = 0;
    /// dense matrix of a generator, columns are images of basis elements
    virtual std::vector<std::vector<RingValue>> regrep(const Token& t) const = 0;
    virtual std::vector<RelationCheck> verify_relations() const = 0;
    virtual std::vector<RelationCheck> verify_ak_quotient() const = 0;

    /// ε_n, landing in B_{n−1}
    virtual BmwElement cond_expect(const BmwElement& x, CondExpectRules rules = {}) const = 0;
    virtual RingValue markov_trace(const BmwElement& x, CondExpectRules rules = {}) const = 0;
    /// ε_B on every basis element
    virtual std::vector<RingValue> trace_vector(CondExpectRules rules = {}) const = 0;
    virtual std::vector<std::vector<RingValue>> gram(int threads = 1) const = 0;
    virtual RingValue gram_det(int threads = 1) const = 0;

    /// m ≥ 1 coordinates dropped
    BmwElement project_ak(const BmwElement& x) const;
    Word word(std::size_t b) const { return word_of(basis()[b]); }
    Json to_json(const BmwElement& x) const;
};

std::shared_ptr<const BmwAlgebra> make_bmw(int n, const ParameterSet& p);
/// cached per (n, ring spec)
std::shared_ptr<const BmwAlgebra> get_bmw(int n, const RingSpec& spec);

/// ξ: B_n^k(R_c) → CB_n^k with Y ↦ labelled strand, X_i ↦ λ·s_i, e_i ↦ cup-cap
BrauerElement xi_word(const Word& w, int n, const ParameterSet& p);
BrauerElement specialize_brauer(const BmwAlgebra& B, const BmwElement& x);

/// ε_c∘ξ = ε_B on the whole basis over R_c
bool check_commuting_square_brauer(int n, int k, int sigma);
/// ν(ε_B(x)) = ε_B(η(x)) for random integer combinations x, generic → rational point
bool check_commuting_square_point(int n, int k, int sigma, std::uint64_t seed, int samples = 100);

/// det(ε_B(b·b')) over the ring of the spec; guard on the basis size
RingValue gram_det_bmw(int n, const RingSpec& spec, std::size_t guard = 200, int threads = 1);

std::string ring_name(const RingSpec& spec);

}  // namespace cybmw

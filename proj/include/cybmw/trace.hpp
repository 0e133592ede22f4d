#pragma once

#include <map>
#include <memory>
#include <vector>

#include "cybmw/engine.hpp"

namespace cybmw {

/// The five closure rules; a corrupted table closes a crossing to λ instead of λ^{-1}.
struct CondExpectRules {
    bool corrupt_crossing = false;
};

/// Conditional expectations ε_m : B_m → B_{m−1} and ε_B = ε_1∘…∘ε_n over a tower B_1 ⊂ … ⊂ B_n.
template <class F>
class MarkovTraceT {
public:
    using Vector = Vec<F>;

    /// tower[m−1] is B_m
    MarkovTraceT(std::vector<std::shared_ptr<const BmwAlgebraT<F>>> tower, CondExpectRules rules = {});

    int n() const { return static_cast<int>(tower_.size()); }
    const BmwAlgebraT<F>& algebra(int m) const { return *tower_[static_cast<std::size_t>(m - 1)]; }
    std::size_t dim(int m) const { return m == 0 ? 1 : algebra(m).dim(); }

    /// ε_m(b) for a basis element of B_m, in B_{m−1} coordinates
    const Vector& cond_expect_basis(int m, std::size_t b) const;
    Vector cond_expect(int m, const Vector& x) const;
    /// ε_B on the basis of B_m
    const Vector& tau(int m) const { return tau_[static_cast<std::size_t>(m)]; }
    F trace(int m, const Vector& x) const { return tau(m).dot(x); }
    F trace(const Vector& x) const { return trace(n(), x); }
    /// inclusion B_{m−1} → B_m
    Vector embed(int m, const Vector& x) const;
    /// (ε_B(b·b'))_{b,b'} over the basis of B_m
    Mat<F> gram(int m, int threads = 1) const;

private:
    // a·slot·b with the slot U_j (z = false) or Z_j (z = true)
    struct Sandwich {
        F coef;
        Word a;
        bool z;
        int j;
        Word b;
    };
    struct Affine {
        Vector constant;
        std::vector<Sandwich> terms;
    };
    struct Slots {
        std::map<int, Vector> U, Z;
    };
    Vector lower_one(int m) const;
    Vector sandwich(int m, const Word& a, const Vector& v, const Word& b) const;
    Affine decompose(int m, const BmwBasisIndex& b, const Word& w) const;
    Vector evaluate(int m, const Affine& f) const;
    void solve_slots(int m);

    std::vector<std::shared_ptr<const BmwAlgebraT<F>>> tower_;
    CondExpectRules rules_;
    std::vector<std::vector<Vector>> eps_;  // eps_[m][b]
    std::vector<Vector> tau_;
    std::vector<Slots> slots_;
};

extern template class MarkovTraceT<Rational>;
extern template class MarkovTraceT<RationalFunction>;

}  // namespace cybmw

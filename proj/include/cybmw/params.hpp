#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "cybmw/ring.hpp"

namespace cybmw {

/// (k, q, λ, q_0..q_{k-1}, A_0..A_{k-1}) together with the derived A_j, j ∈ Z.
class ParameterSet {
public:
    ParameterSet(RingSpec spec, VarSetPtr vars, RingValue q, RingValue lambda, std::vector<RingValue> qs,
                 std::vector<RingValue> A);
    ParameterSet(const ParameterSet& o);
    ParameterSet& operator=(const ParameterSet& o);

    int k() const { return spec_.k; }
    int z() const { return (k() + 1) / 2; }
    int eps() const { return 2 * z() - k(); }
    const RingSpec& spec() const { return spec_; }
    /// ring variables; null at a rational point
    const VarSetPtr& vars() const { return vars_; }

    const RingValue& q() const { return q_; }
    const RingValue& lambda() const { return lambda_; }
    const RingValue& lambda_inv() const { return lambda_inv_; }
    const RingValue& q0_inv() const { return q0_inv_; }
    RingValue delta() const;
    /// q_i for 0 ≤ i ≤ k with q_k = −1; zero outside that range
    RingValue qi(int i) const;
    const std::vector<RingValue>& qs() const { return qs_; }
    const std::vector<RingValue>& A() const { return A_; }
    /// A_j for any integer j via Σ_{i=0}^{k} q_i A_{i+j} = 0
    RingValue extend_A(int j) const;

    RingValue zero() const;
    RingValue one() const;

private:
    RingSpec spec_;
    VarSetPtr vars_;
    RingValue q_, lambda_, lambda_inv_, q0_inv_;
    std::vector<RingValue> qs_, A_;
    mutable std::mutex mu_;
    mutable std::map<int, RingValue> derived_;
};

struct AdmissibilityReport {
    RingValue beta, beta_plus, beta_minus;
    std::vector<RingValue> h;        // h_0..h_{k-1}
    std::vector<RingValue> h_prime;  // h'_1..h'_{z-eps}
    std::vector<RingValue> B;        // B_1..B_{k-1}
    bool admissible = false;
    bool weakly_admissible = false;
    int weak_horizon = 0;
};

struct BetaValues {
    RingValue beta, beta_plus, beta_minus;
};

BetaValues beta_values(const ParameterSet& p);
/// h_0..h_{k-1} and B_1..B_{k-1}
std::pair<std::vector<RingValue>, std::vector<RingValue>> h_values(const ParameterSet& p);
std::vector<RingValue> h_prime_values(const ParameterSet& p);
/// B_l as given by the A's and q's
RingValue B_value(const ParameterSet& p, int l);

/// q_0^{-1}h_{k-l} − h_l + βq_0^{-1}q_l − h_0 q_l = δ h'_l over Ω for 1 ≤ l ≤ z−ε
bool verify_divisibility_identity(int k);

AdmissibilityReport check_admissible(const ParameterSet& p, int weak_horizon = 0);

/// Parameters over Z[q^±, λ^±, q_1..q_{k-1}][δ⁻¹] solving β_σ = 0 and h_l = 0.
ParameterSet generic_ring(int k, int sigma);
/// Parameters over R_c: q = 1, λ = σ1, q_0 = 1, q_i = 0, A_j folded indeterminates.
ParameterSet brauer_specialization(int k, int sigma);
/// Fully symbolic parameters over Ω.
ParameterSet universal_parameters(int k);
/// Generic parameters evaluated at a rational point (q, λ, q_1..q_{k-1}).
ParameterSet rational_point(int k, int sigma, const std::map<std::string, Rational>& point);
ParameterSet random_rational_point(int k, int sigma, std::uint64_t seed);

/// Maps every parameter through a ring homomorphism.
ParameterSet apply_hom(const ParameterSet& p, const Assignment& a, RingSpec target, VarSetPtr target_vars);

/// ς: q ↦ 1, λ ↦ σ, q_0 ↦ 1, q_i ↦ 0 as an assignment on the generic variables
Assignment brauer_assignment(int k, int sigma);

/// Builds the parameter set selected by a ring spec (seed used for rational points).
ParameterSet make_parameters(const RingSpec& spec);

int fold_label(int label, int k);

}  // namespace cybmw

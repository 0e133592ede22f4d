#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace cybmw {

using Integer = mpz_class;

class RingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact rational number in lowest terms.
class Rational {
public:
    Rational() = default;
    Rational(long v) : v_(v) {}
    Rational(int v) : v_(v) {}
    Rational(const Integer& v) : v_(v) {}
    Rational(const Integer& num, const Integer& den);
    explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }
    static Rational parse(const std::string& s);

    const mpq_class& get() const { return v_; }
    Integer num() const { return v_.get_num(); }
    Integer den() const { return v_.get_den(); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    std::string str() const;

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }
    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend std::ostream& operator<<(std::ostream& os, const Rational& a) { return os << a.str(); }

private:
    mpq_class v_;
};

Rational pow(const Rational& a, long e);

/// Ordered set of indeterminates; some are declared invertible.
class VarSet {
public:
    VarSet(std::vector<std::string> names, std::vector<bool> invertible);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    bool invertible(std::size_t i) const { return invertible_[i]; }
    int index_of(const std::string& name) const;
    /// index of q when δ = q − q⁻¹ can be inverted, else -1
    int delta_var() const { return delta_var_; }

private:
    std::vector<std::string> names_;
    std::vector<bool> invertible_;
    int delta_var_ = -1;
};

using VarSetPtr = std::shared_ptr<const VarSet>;

VarSetPtr make_varset(std::vector<std::string> names, std::vector<bool> invertible);

using Exps = std::vector<int>;

/// Sparse multivariate Laurent polynomial over the integers.
/// A null variable set is allowed for constants only.
class LaurentPoly {
public:
    using Terms = std::map<Exps, Integer>;

    LaurentPoly() = default;
    LaurentPoly(long c);
    LaurentPoly(const Integer& c);
    LaurentPoly(VarSetPtr vars, const Integer& c = 0);
    static LaurentPoly variable(VarSetPtr vars, std::size_t i, int power = 1);
    static LaurentPoly monomial(VarSetPtr vars, Exps e, const Integer& c);

    const VarSetPtr& vars() const { return vars_; }
    const Terms& terms() const { return terms_; }
    std::size_t nvars() const { return vars_ ? vars_->size() : 0; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Integer constant_term() const;
    /// leading term in lex order on exponent vectors
    const std::pair<const Exps, Integer>& lead() const { return *terms_.rbegin(); }
    int max_exp(std::size_t var) const;
    int min_exp(std::size_t var) const;
    /// coefficient-wise minimum of exponents over all terms
    Exps min_exps() const;
    Integer content() const;
    bool is_monomial() const { return terms_.size() == 1; }

    void add_term(const Exps& e, const Integer& c);
    LaurentPoly shifted(const Exps& shift) const;
    LaurentPoly with_vars(const VarSetPtr& vars) const;

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator-(const LaurentPoly& a);
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    LaurentPoly scaled(const Integer& c) const;
    LaurentPoly divided_by_integer(const Integer& c) const;
    LaurentPoly pow(unsigned e) const;
    std::string str() const;

private:
    friend class PolyAccess;
    void adopt(const LaurentPoly& o);
    void check_exps(const Exps& e) const;

    VarSetPtr vars_;
    Terms terms_;
};

/// Exact division a / b in the Laurent ring, or nullopt when b does not divide a.
std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b);

/// δ = q − q⁻¹ as a Laurent polynomial; requires vars->delta_var() >= 0.
LaurentPoly delta_poly(const VarSetPtr& vars);

/// Element of R[δ⁻¹]: poly / δ^deltaPower, normalized.
struct Localized {
    LaurentPoly poly;
    int delta_power = 0;
};

/// Tagged union of an exact rational and a localized Laurent polynomial.
class RingValue {
public:
    RingValue() : v_(Rational(0)) {}
    RingValue(int c) : v_(Rational(c)) {}
    RingValue(long c) : v_(Rational(c)) {}
    RingValue(const Rational& r) : v_(r) {}
    RingValue(const LaurentPoly& p, int delta_power = 0);

    bool is_rational() const { return std::holds_alternative<Rational>(v_); }
    bool is_localized() const { return !is_rational(); }
    const Rational& rational() const { return std::get<Rational>(v_); }
    const Localized& localized() const { return std::get<Localized>(v_); }
    /// variable set of a localized value (null for rationals and bare constants)
    VarSetPtr vars() const;

    bool is_zero() const;
    bool is_one() const;
    std::string str() const;

    RingValue& operator+=(const RingValue& o);
    RingValue& operator-=(const RingValue& o);
    RingValue& operator*=(const RingValue& o);
    friend RingValue operator+(RingValue a, const RingValue& b) { return a += b; }
    friend RingValue operator-(RingValue a, const RingValue& b) { return a -= b; }
    friend RingValue operator*(RingValue a, const RingValue& b) { return a *= b; }
    friend RingValue operator-(const RingValue& a);
    friend bool operator==(const RingValue& a, const RingValue& b);
    friend bool operator!=(const RingValue& a, const RingValue& b) { return !(a == b); }
    friend std::ostream& operator<<(std::ostream& os, const RingValue& a) { return os << a.str(); }

    /// exact quotient; throws when it does not exist in the ring
    friend RingValue divide_exact(const RingValue& a, const RingValue& b);
    /// multiplicative inverse of a unit
    RingValue inverse() const;

private:
    static Localized normalize(Localized v);
    static void promote(RingValue& a, RingValue& b);
    std::variant<Rational, Localized> v_;
};

RingValue pow(const RingValue& a, long e);

enum class RingMode { GenericPlus, GenericMinus, BrauerClassical, RationalPoint, Universal };

/// Selects one of the coefficient rings used by the library.
struct RingSpec {
    RingMode mode = RingMode::RationalPoint;
    int k = 1;
    int sigma = +1;
    std::optional<std::uint64_t> seed;
    std::map<std::string, Rational> point;
};

/// Variables of Z[q^±, λ^±, q_1..q_{k-1}][δ⁻¹]
VarSetPtr generic_varset(int k);
/// Variables of R_c = Z[A_0^±, A_1..A_{⌊k/2⌋}]
VarSetPtr brauer_varset(int k);
/// Variables of Ω = Z[q^±, λ^±, q_0^±, q_1..q_{k-1}, A_0..A_{k-1}]
VarSetPtr universal_varset(int k);

/// δ for the ring: q − q⁻¹ symbolically, 0 over R_c, a rational at a point.
RingValue delta(const RingSpec& spec);

/// Substitutes each variable by a ring value.
using Assignment = std::map<std::string, RingValue>;
RingValue apply_hom(const RingValue& value, const Assignment& assignment);

}  // namespace cybmw

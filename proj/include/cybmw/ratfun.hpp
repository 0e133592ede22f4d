#pragma once

#include "cybmw/ring.hpp"

namespace cybmw {

/// Greatest common divisor in Z[x^±] up to units, normalized to have
/// nonnegative exponents with no monomial factor and positive leading coefficient.
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);

/// Same names as vars, every variable invertible.
VarSetPtr field_varset(const VarSetPtr& vars);

/// Element of the fraction field of a Laurent polynomial ring over Z.
class RationalFunction {
public:
    RationalFunction() : num_(0), den_(1) {}
    RationalFunction(int c) : num_(c), den_(1) {}
    RationalFunction(long c) : num_(c), den_(1) {}
    RationalFunction(const Rational& r);
    RationalFunction(const LaurentPoly& p);
    RationalFunction(const LaurentPoly& num, const LaurentPoly& den);
    static RationalFunction from_ring_value(const RingValue& v);

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    /// converts back to R[δ⁻¹] (or R_c); throws if the denominator is not a unit there
    RingValue to_ring_value(const VarSetPtr& ring_vars) const;
    std::string str() const;

    RationalFunction& operator+=(const RationalFunction& o);
    RationalFunction& operator-=(const RationalFunction& o);
    RationalFunction& operator*=(const RationalFunction& o);
    RationalFunction& operator/=(const RationalFunction& o);
    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
    friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
    friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
    friend RationalFunction operator-(const RationalFunction& a);
    friend bool operator==(const RationalFunction& a, const RationalFunction& b);
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }
    friend std::ostream& operator<<(std::ostream& os, const RationalFunction& a) { return os << a.str(); }

private:
    void normalize();
    LaurentPoly num_, den_;
};

}  // namespace cybmw

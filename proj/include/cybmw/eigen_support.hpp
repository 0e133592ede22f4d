#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "cybmw/ratfun.hpp"
#include "cybmw/ring.hpp"

namespace Eigen {

template <>
struct NumTraits<cybmw::Rational> : GenericNumTraits<cybmw::Rational> {
    typedef cybmw::Rational Real;
    typedef cybmw::Rational NonInteger;
    typedef cybmw::Rational Nested;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 10,
        AddCost = 50,
        MulCost = 100
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};

template <>
struct NumTraits<cybmw::RationalFunction> : GenericNumTraits<cybmw::RationalFunction> {
    typedef cybmw::RationalFunction Real;
    typedef cybmw::RationalFunction NonInteger;
    typedef cybmw::RationalFunction Nested;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 10,
        AddCost = 500,
        MulCost = 1000
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};

template <>
struct NumTraits<cybmw::RingValue> : GenericNumTraits<cybmw::RingValue> {
    typedef cybmw::RingValue Real;
    typedef cybmw::RingValue NonInteger;
    typedef cybmw::RingValue Nested;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 10,
        AddCost = 500,
        MulCost = 1000
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace cybmw {

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using SpMat = Eigen::SparseMatrix<Scalar>;

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(const RationalFunction& x) { return x.is_zero(); }
inline bool is_zero(const RingValue& x) { return x.is_zero(); }

inline Rational exact_quotient(const Rational& a, const Rational& b) { return a / b; }
inline RationalFunction exact_quotient(const RationalFunction& a, const RationalFunction& b) { return a / b; }
inline RingValue exact_quotient(const RingValue& a, const RingValue& b) { return divide_exact(a, b); }

/// Fraction-free determinant; every division is exact.
template <class Derived>
typename Derived::Scalar bareiss_determinant(const Eigen::MatrixBase<Derived>& input) {
    using Scalar = typename Derived::Scalar;
    Mat<Scalar> a = input;
    const Eigen::Index n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
    if (n == 0) return Scalar(1);
    Scalar prev(1);
    int sign = 1;
    for (Eigen::Index k = 0; k < n - 1; ++k) {
        if (is_zero(a(k, k))) {
            Eigen::Index r = k + 1;
            while (r < n && is_zero(a(r, k))) ++r;
            if (r == n) return Scalar(0);
            a.row(k).swap(a.row(r));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i)
            for (Eigen::Index j = k + 1; j < n; ++j)
                a(i, j) = exact_quotient(a(i, j) * a(k, k) - a(i, k) * a(k, j), prev);
        prev = a(k, k);
    }
    Scalar d = a(n - 1, n - 1);
    return sign < 0 ? Scalar(-d) : d;
}

}  // namespace cybmw

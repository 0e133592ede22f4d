#include "cybmw/ratfun.hpp"

#include <algorithm>

namespace cybmw {

namespace {

using Terms = LaurentPoly::Terms;

struct Poly {
    std::size_t nv = 0;
    Terms t;

    bool zero() const { return t.empty(); }
    bool constant() const {
        if (t.empty()) return true;
        if (t.size() > 1) return false;
        for (int x : t.begin()->first)
            if (x) return false;
        return true;
    }
};

Poly make_const(std::size_t nv, const Integer& c) {
    Poly p{nv, {}};
    if (c != 0) p.t.emplace(Exps(nv, 0), c);
    return p;
}

void add_into(Terms& r, const Exps& e, const Integer& c) {
    if (c == 0) return;
    auto it = r.find(e);
    if (it == r.end())
        r.emplace(e, c);
    else {
        it->second += c;
        if (it->second == 0) r.erase(it);
    }
}

Poly mul(const Poly& a, const Poly& b) {
    Poly r{a.nv, {}};
    Exps f(a.nv);
    for (const auto& [ea, ca] : a.t)
        for (const auto& [eb, cb] : b.t) {
            for (std::size_t i = 0; i < a.nv; ++i) f[i] = ea[i] + eb[i];
            add_into(r.t, f, ca * cb);
        }
    return r;
}

Poly sub(Poly a, const Poly& b) {
    for (const auto& [e, c] : b.t) add_into(a.t, e, -c);
    return a;
}

// exact division with nonnegative exponents; assumes divisibility
Poly exact_div(const Poly& a, const Poly& b) {
    const std::size_t nv = a.nv;
    if (b.constant()) {
        const Integer& c = b.t.begin()->second;
        Poly r{nv, {}};
        for (const auto& [e, x] : a.t) r.t.emplace_hint(r.t.end(), e, Integer(x / c));
        return r;
    }
    Terms r = a.t;
    Poly q{nv, {}};
    const auto& [ld, lc] = *b.t.rbegin();
    Exps m(nv), f(nv);
    while (!r.empty()) {
        const auto& [lr, rc] = *r.rbegin();
        for (std::size_t i = 0; i < nv; ++i) m[i] = lr[i] - ld[i];
        Integer qc = rc / lc;
        q.t.emplace(m, qc);
        for (const auto& [e, c] : b.t) {
            for (std::size_t i = 0; i < nv; ++i) f[i] = e[i] + m[i];
            add_into(r, f, -qc * c);
        }
    }
    return q;
}

int degree(const Poly& a, std::size_t v) {
    int d = 0;
    for (const auto& [e, c] : a.t) d = std::max(d, e[v]);
    return d;
}

// coefficient of v^d (as polynomial not involving v)
Poly coeff(const Poly& a, std::size_t v, int d) {
    Poly r{a.nv, {}};
    for (const auto& [e, c] : a.t)
        if (e[v] == d) {
            Exps f = e;
            f[v] = 0;
            r.t.emplace(std::move(f), c);
        }
    return r;
}

Poly shift_var(const Poly& a, std::size_t v, int d) {
    Poly r{a.nv, {}};
    for (const auto& [e, c] : a.t) {
        Exps f = e;
        f[v] += d;
        r.t.emplace_hint(r.t.end(), std::move(f), c);
    }
    return r;
}

Poly normalize_sign(Poly a) {
    if (!a.zero() && a.t.rbegin()->second < 0)
        for (auto& x : a.t) x.second = -x.second;
    return a;
}

Poly gcd_rec(const Poly& a, const Poly& b);

Poly content_in(const Poly& a, std::size_t v) {
    Poly g{a.nv, {}};
    std::map<int, Poly> parts;
    for (const auto& [e, c] : a.t) {
        Exps f = e;
        f[v] = 0;
        auto& p = parts[e[v]];
        p.nv = a.nv;
        p.t.emplace(std::move(f), c);
    }
    for (const auto& [d, p] : parts) {
        g = gcd_rec(g, p);
        if (g.constant() && g.t.begin()->second == 1) break;
    }
    return g;
}

Poly prem(const Poly& a, const Poly& b, std::size_t v) {
    int db = degree(b, v);
    Poly lcb = coeff(b, v, db);
    Poly r = a;
    int e = degree(a, v) - db + 1;
    while (!r.zero() && degree(r, v) >= db) {
        int dr = degree(r, v);
        Poly lcr = coeff(r, v, dr);
        r = sub(mul(lcb, r), mul(lcr, shift_var(b, v, dr - db)));
        --e;
    }
    for (; e > 0; --e) r = mul(lcb, r);
    return r;
}

Poly gcd_rec(const Poly& a, const Poly& b) {
    if (a.zero()) return normalize_sign(b);
    if (b.zero()) return normalize_sign(a);
    const std::size_t nv = a.nv;
    if (a.constant() || b.constant()) {
        Integer g = 0;
        for (const auto& x : a.t) g = gcd(g, x.second);
        for (const auto& x : b.t) g = gcd(g, x.second);
        return make_const(nv, g);
    }
    std::size_t v = nv;
    for (std::size_t i = 0; i < nv && v == nv; ++i)
        if (degree(a, i) > 0 || degree(b, i) > 0) v = i;
    Poly ca = content_in(a, v), cb = content_in(b, v);
    Poly c = gcd_rec(ca, cb);
    Poly pa = exact_div(a, ca), pb = exact_div(b, cb);
    if (degree(pa, v) < degree(pb, v)) std::swap(pa, pb);
    Poly g;
    while (true) {
        if (pb.zero()) {
            g = pa;
            break;
        }
        if (degree(pb, v) == 0) {
            g = make_const(nv, 1);
            break;
        }
        Poly r = prem(pa, pb, v);
        pa = std::move(pb);
        if (r.zero())
            pb = Poly{nv, {}};
        else
            pb = exact_div(r, content_in(r, v));
    }
    if (!g.constant()) g = exact_div(g, content_in(g, v));
    return normalize_sign(mul(c, normalize_sign(g)));
}

Poly to_nonneg(const LaurentPoly& p) {
    Poly r{p.nvars(), {}};
    Exps m = p.min_exps();
    for (const auto& [e, c] : p.terms()) {
        Exps f = e;
        for (std::size_t i = 0; i < f.size(); ++i) f[i] -= m[i];
        r.t.emplace(std::move(f), c);
    }
    return r;
}

}  // namespace

LaurentPoly poly_gcd(const LaurentPoly& a0, const LaurentPoly& b0) {
    LaurentPoly a = a0, b = b0;
    if (!a.vars()) a = a.with_vars(b.vars());
    if (!b.vars()) b = b.with_vars(a.vars());
    Poly g = gcd_rec(to_nonneg(a), to_nonneg(b));
    LaurentPoly r(a.vars());
    for (const auto& [e, c] : g.t) r.add_term(e.empty() && r.nvars() ? Exps(r.nvars(), 0) : e, c);
    return r;
}

VarSetPtr field_varset(const VarSetPtr& vars) {
    if (!vars) return vars;
    return make_varset(vars->names(), std::vector<bool>(vars->size(), true));
}

// the same polynomial over the all-invertible copy of its variables
LaurentPoly to_field(const LaurentPoly& p) {
    const auto& vs = p.vars();
    if (!vs) return p;
    bool all = true;
    for (std::size_t i = 0; i < vs->size(); ++i) all = all && vs->invertible(i);
    if (all) return p;
    LaurentPoly r(field_varset(vs));
    for (const auto& [e, c] : p.terms()) r.add_term(e, c);
    return r;
}

RationalFunction::RationalFunction(const Rational& r) : num_(r.num()), den_(r.den()) {}

RationalFunction::RationalFunction(const LaurentPoly& p) : num_(to_field(p)), den_(1) { normalize(); }

RationalFunction::RationalFunction(const LaurentPoly& num, const LaurentPoly& den)
    : num_(to_field(num)), den_(to_field(den)) {
    if (den_.is_zero()) throw RingError("rational function with zero denominator");
    normalize();
}

RationalFunction RationalFunction::from_ring_value(const RingValue& v) {
    if (v.is_rational()) return RationalFunction(v.rational());
    const Localized& l = v.localized();
    VarSetPtr fv = field_varset(l.poly.vars());
    LaurentPoly num(fv);
    for (const auto& [e, c] : l.poly.terms()) num.add_term(e, c);
    if (!fv) num = l.poly;
    if (l.delta_power == 0) return RationalFunction(num);
    LaurentPoly d = delta_poly(fv).pow(static_cast<unsigned>(l.delta_power));
    return RationalFunction(num, d);
}

void RationalFunction::normalize() {
    if (!num_.vars() && den_.vars()) num_ = num_.with_vars(den_.vars());
    if (!den_.vars() && num_.vars()) den_ = den_.with_vars(num_.vars());
    if (num_.is_zero()) {
        den_ = LaurentPoly(num_.vars(), 1);
        return;
    }
    if (den_.is_constant()) {
        Integer d = den_.constant_term();
        Integer g = gcd(num_.content(), d);
        if (d < 0) g = -g;
        if (g != 1) {
            num_ = num_.divided_by_integer(g);
            den_ = LaurentPoly(den_.vars(), Integer(d / g));
        }
        return;
    }
    LaurentPoly g = poly_gcd(num_, den_);
    if (!g.is_constant() || g.constant_term() != 1) {
        num_ = *divide_exact(num_, g);
        den_ = *divide_exact(den_, g);
    }
    Exps m = den_.min_exps();
    for (auto& x : m) x = -x;
    den_ = den_.shifted(m);
    num_ = num_.shifted(m);
    if (den_.lead().second < 0) {
        den_ = -den_;
        num_ = -num_;
    }
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
    }
    normalize();
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction operator-(const RationalFunction& a) {
    RationalFunction r = a;
    r.num_ = -r.num_;
    return r;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
    if (is_zero()) return *this;
    if (o.is_zero()) return *this = o;
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
    if (o.is_zero()) throw RingError("division by zero rational function");
    num_ = num_ * o.den_;
    den_ = den_ * o.num_;
    normalize();
    return *this;
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
}

std::string RationalFunction::str() const {
    if (den_.is_constant() && den_.constant_term() == 1) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RingValue RationalFunction::to_ring_value(const VarSetPtr& ring_vars) const {
    auto back = [&](const LaurentPoly& p) {
        LaurentPoly r(ring_vars);
        if (!p.vars()) return LaurentPoly(ring_vars, p.constant_term());
        for (const auto& [e, c] : p.terms()) r.add_term(e, c);
        return r;
    };
    if (!ring_vars) {
        if (!num_.is_constant() || !den_.is_constant()) throw RingError("value not in ring");
        return RingValue(Rational(num_.constant_term(), den_.constant_term()));
    }
    LaurentPoly den = den_;
    LaurentPoly num = num_;
    if (den.is_constant()) {
        Integer d = den.constant_term();
        if (d != 1 && d != -1) throw RingError("value not in ring: " + str());
        return RingValue(back(d == 1 ? num : -num));
    }
    int qi = ring_vars->delta_var();
    if (qi < 0) throw RingError("value not in ring: " + str());
    auto q = static_cast<std::size_t>(qi);
    const VarSetPtr& fv = den.vars();
    LaurentPoly qm = LaurentPoly::variable(fv, q, 1) - LaurentPoly(fv, 1);
    LaurentPoly qp = LaurentPoly::variable(fv, q, 1) + LaurentPoly(fv, 1);
    int a = 0, b = 0;
    while (!den.is_constant()) {
        if (auto d = divide_exact(den, qm)) {
            den = *d;
            ++a;
        } else if (auto d2 = divide_exact(den, qp)) {
            den = *d2;
            ++b;
        } else {
            break;
        }
    }
    if (!den.is_monomial()) throw RingError("value not in ring: " + str());
    const auto& [me, mc] = den.lead();
    if (mc != 1 && mc != -1) throw RingError("value not in ring: " + str());
    int D = std::max(a, b);
    num = num * qm.pow(D - a) * qp.pow(D - b);
    Exps shift(me.size());
    for (std::size_t i = 0; i < me.size(); ++i) shift[i] = -me[i];
    shift[q] -= D;
    num = num.shifted(shift);
    if (mc == -1) num = -num;
    return RingValue(back(num), D);
}

}  // namespace cybmw

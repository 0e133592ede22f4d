#include "cybmw/ring.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace cybmw {

Rational::Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw RingError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Integer(s));
    return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
}

std::string Rational::str() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw RingError("division by zero");
    v_ /= o.v_;
    return *this;
}

Rational pow(const Rational& a, long e) {
    if (e < 0) return pow(Rational(1) / a, -e);
    Rational r(1), b = a;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

VarSet::VarSet(std::vector<std::string> names, std::vector<bool> invertible)
    : names_(std::move(names)), invertible_(std::move(invertible)) {
    if (names_.size() != invertible_.size()) throw RingError("varset size mismatch");
    for (std::size_t i = 0; i < names_.size(); ++i)
        for (std::size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j]) throw RingError("duplicate variable " + names_[i]);
    int qi = index_of("q");
    if (qi >= 0 && invertible_[qi]) delta_var_ = qi;
}

int VarSet::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return -1;
}

VarSetPtr make_varset(std::vector<std::string> names, std::vector<bool> invertible) {
    static std::mutex mu;
    static std::map<std::pair<std::vector<std::string>, std::vector<bool>>, VarSetPtr> interned;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(names, invertible);
    auto it = interned.find(key);
    if (it != interned.end()) return it->second;
    auto p = std::make_shared<const VarSet>(std::move(names), std::move(invertible));
    interned.emplace(std::move(key), p);
    return p;
}

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(long c) {
    if (c != 0) terms_.emplace(Exps{}, Integer(c));
}

LaurentPoly::LaurentPoly(const Integer& c) {
    if (c != 0) terms_.emplace(Exps{}, c);
}

LaurentPoly::LaurentPoly(VarSetPtr vars, const Integer& c) : vars_(std::move(vars)) {
    if (c != 0) terms_.emplace(Exps(nvars(), 0), c);
}

LaurentPoly LaurentPoly::variable(VarSetPtr vars, std::size_t i, int power) {
    Exps e(vars->size(), 0);
    e[i] = power;
    return monomial(std::move(vars), std::move(e), 1);
}

LaurentPoly LaurentPoly::monomial(VarSetPtr vars, Exps e, const Integer& c) {
    LaurentPoly p(std::move(vars));
    p.check_exps(e);
    if (c != 0) p.terms_.emplace(std::move(e), c);
    return p;
}

void LaurentPoly::check_exps(const Exps& e) const {
    if (e.size() != nvars()) throw RingError("exponent vector length mismatch");
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] < 0 && !vars_->invertible(i))
            throw RingError("negative exponent on non-invertible variable " + vars_->name(i));
}

bool LaurentPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    for (int x : terms_.begin()->first)
        if (x) return false;
    return true;
}

Integer LaurentPoly::constant_term() const {
    for (const auto& [e, c] : terms_) {
        if (std::all_of(e.begin(), e.end(), [](int x) { return x == 0; })) return c;
    }
    return 0;
}

int LaurentPoly::max_exp(std::size_t var) const {
    int m = 0;
    bool first = true;
    for (const auto& t : terms_) {
        if (first || t.first[var] > m) m = t.first[var];
        first = false;
    }
    return m;
}

int LaurentPoly::min_exp(std::size_t var) const {
    int m = 0;
    bool first = true;
    for (const auto& t : terms_) {
        if (first || t.first[var] < m) m = t.first[var];
        first = false;
    }
    return m;
}

Exps LaurentPoly::min_exps() const {
    Exps m(nvars(), 0);
    for (std::size_t v = 0; v < nvars(); ++v) m[v] = min_exp(v);
    return m;
}

Integer LaurentPoly::content() const {
    Integer g = 0;
    for (const auto& t : terms_) g = gcd(g, t.second);
    return g;
}

void LaurentPoly::add_term(const Exps& e, const Integer& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        check_exps(e);
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentPoly LaurentPoly::shifted(const Exps& shift) const {
    LaurentPoly r(vars_);
    for (const auto& [e, c] : terms_) {
        Exps f = e;
        for (std::size_t i = 0; i < f.size(); ++i) f[i] += shift[i];
        r.check_exps(f);
        r.terms_.emplace_hint(r.terms_.end(), std::move(f), c);
    }
    return r;
}

LaurentPoly LaurentPoly::with_vars(const VarSetPtr& vars) const {
    if (vars_ == vars) return *this;
    if (vars_) throw RingError("mixed-ring operands");
    LaurentPoly r(vars);
    for (const auto& [e, c] : terms_) r.terms_.emplace(Exps(r.nvars(), 0), c);
    return r;
}

void LaurentPoly::adopt(const LaurentPoly& o) {
    if (vars_ == o.vars_) return;
    if (!o.vars_) return;
    if (vars_) throw RingError("mixed-ring operands");
    *this = with_vars(o.vars_);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    adopt(o);
    if (vars_ != o.vars_) {
        *this += o.with_vars(vars_);
        return *this;
    }
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    adopt(o);
    if (vars_ != o.vars_) {
        *this -= o.with_vars(vars_);
        return *this;
    }
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a0, const LaurentPoly& b0) {
    LaurentPoly a = a0, b = b0;
    a.adopt(b);
    b.adopt(a);
    LaurentPoly r(a.vars_);
    if (a.is_zero() || b.is_zero()) return r;
    const std::size_t nv = r.nvars();
    Exps f(nv);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < nv; ++i) f[i] = ea[i] + eb[i];
            auto it = r.terms_.find(f);
            if (it == r.terms_.end())
                r.terms_.emplace(f, ca * cb);
            else {
                it->second += ca * cb;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
    return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly r = a;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.vars_ == b.vars_ || a.is_constant() || b.is_constant()) {
        if (a.terms_.size() != b.terms_.size()) return false;
        if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
        return a.constant_term() == b.constant_term() && a.is_constant() && b.is_constant();
    }
    throw RingError("mixed-ring operands");
}

LaurentPoly LaurentPoly::scaled(const Integer& c) const {
    LaurentPoly r(vars_);
    if (c == 0) return r;
    for (const auto& [e, x] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, x * c);
    return r;
}

LaurentPoly LaurentPoly::divided_by_integer(const Integer& c) const {
    LaurentPoly r(vars_);
    for (const auto& [e, x] : terms_) {
        if (!mpz_divisible_p(x.get_mpz_t(), c.get_mpz_t())) throw RingError("inexact integer division");
        r.terms_.emplace_hint(r.terms_.end(), e, Integer(x / c));
    }
    return r;
}

LaurentPoly LaurentPoly::pow(unsigned e) const {
    LaurentPoly r(vars_, 1), b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Integer a = abs(c);
        os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        bool unit = true;
        for (int x : e) unit = unit && x == 0;
        if (a != 1 || unit) os << a.get_str();
        bool need_star = a != 1;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (need_star) os << "*";
            os << vars_->name(i);
            if (e[i] != 1) os << "^" << e[i];
            need_star = true;
        }
        first = false;
    }
    return os.str();
}

std::optional<LaurentPoly> divide_exact(const LaurentPoly& a0, const LaurentPoly& b0) {
    if (b0.is_zero()) throw RingError("division by zero polynomial");
    LaurentPoly a = a0, b = b0;
    if (!a.vars()) a = a.with_vars(b.vars());
    if (!b.vars()) b = b.with_vars(a.vars());
    if (a.vars() != b.vars()) throw RingError("mixed-ring operands");
    if (a.is_zero()) return a;
    const std::size_t nv = a.nvars();
    Exps sa = a.min_exps(), sb = b.min_exps();
    for (auto& x : sa) x = -x;
    for (auto& x : sb) x = -x;
    // work with nonnegative exponents; vars may be non-invertible so build the maps directly
    LaurentPoly::Terms r, d;
    for (const auto& [e, c] : a.terms()) {
        Exps f = e;
        for (std::size_t i = 0; i < nv; ++i) f[i] += sa[i];
        r.emplace(std::move(f), c);
    }
    for (const auto& [e, c] : b.terms()) {
        Exps f = e;
        for (std::size_t i = 0; i < nv; ++i) f[i] += sb[i];
        d.emplace(std::move(f), c);
    }
    const auto& [ld, lc] = *d.rbegin();
    LaurentPoly::Terms quot;
    Exps m(nv);
    while (!r.empty()) {
        const auto& [lr, rc] = *r.rbegin();
        for (std::size_t i = 0; i < nv; ++i) {
            m[i] = lr[i] - ld[i];
            if (m[i] < 0) return std::nullopt;
        }
        if (!mpz_divisible_p(rc.get_mpz_t(), lc.get_mpz_t())) return std::nullopt;
        Integer qc = rc / lc;
        quot.emplace(m, qc);
        Exps f(nv);
        for (const auto& [e, c] : d) {
            for (std::size_t i = 0; i < nv; ++i) f[i] = e[i] + m[i];
            auto it = r.find(f);
            if (it == r.end())
                r.emplace(f, -qc * c);
            else {
                it->second -= qc * c;
                if (it->second == 0) r.erase(it);
            }
        }
    }
    Exps shift(nv);
    for (std::size_t i = 0; i < nv; ++i) shift[i] = sb[i] - sa[i];
    LaurentPoly q(a.vars());
    for (auto& [e, c] : quot) {
        Exps f = e;
        for (std::size_t i = 0; i < nv; ++i) f[i] += shift[i];
        for (std::size_t i = 0; i < nv; ++i)
            if (f[i] < 0 && !a.vars()->invertible(i)) return std::nullopt;
        q.add_term(f, c);
    }
    return q;
}

LaurentPoly delta_poly(const VarSetPtr& vars) {
    if (!vars || vars->delta_var() < 0) throw RingError("ring has no invertible q");
    auto q = static_cast<std::size_t>(vars->delta_var());
    return LaurentPoly::variable(vars, q, 1) - LaurentPoly::variable(vars, q, -1);
}

// ---------------------------------------------------------------- RingValue

RingValue::RingValue(const LaurentPoly& p, int delta_power) : v_(normalize(Localized{p, delta_power})) {}

Localized RingValue::normalize(Localized v) {
    if (v.delta_power < 0) {
        v.poly *= delta_poly(v.poly.vars()).pow(static_cast<unsigned>(-v.delta_power));
        v.delta_power = 0;
    }
    if (v.poly.is_zero()) {
        v.delta_power = 0;
        return v;
    }
    if (v.delta_power > 0) {
        const auto& vars = v.poly.vars();
        if (!vars || vars->delta_var() < 0) throw RingError("δ is not invertible in this ring");
        auto q = static_cast<std::size_t>(vars->delta_var());
        LaurentPoly qq = LaurentPoly::variable(vars, q, 2) - LaurentPoly(vars, 1);
        LaurentPoly qv = LaurentPoly::variable(vars, q, 1);
        while (v.delta_power > 0) {
            auto d = divide_exact(v.poly * qv, qq);
            if (!d) break;
            v.poly = std::move(*d);
            --v.delta_power;
        }
    }
    return v;
}

VarSetPtr RingValue::vars() const { return is_localized() ? localized().poly.vars() : nullptr; }

void RingValue::promote(RingValue& a, RingValue& b) {
    if (a.is_rational() == b.is_rational()) return;
    RingValue& r = a.is_rational() ? a : b;
    if (!r.rational().is_integer()) throw RingError("mixed-ring operands");
    r.v_ = Localized{LaurentPoly(r.rational().num()), 0};
}

bool RingValue::is_zero() const {
    return is_rational() ? rational().is_zero() : localized().poly.is_zero();
}

bool RingValue::is_one() const {
    if (is_rational()) return rational().is_one();
    const auto& l = localized();
    return l.delta_power == 0 && l.poly.is_constant() && l.poly.constant_term() == 1;
}

std::string RingValue::str() const {
    if (is_rational()) return rational().str();
    const auto& l = localized();
    if (l.delta_power == 0) return l.poly.str();
    return "(" + l.poly.str() + ")/delta^" + std::to_string(l.delta_power);
}

RingValue& RingValue::operator+=(const RingValue& o0) {
    RingValue o = o0;
    promote(*this, o);
    if (is_rational()) {
        std::get<Rational>(v_) += o.rational();
        return *this;
    }
    Localized a = localized();
    const Localized& b = o.localized();
    int d = std::max(a.delta_power, b.delta_power);
    LaurentPoly pa = a.poly, pb = b.poly;
    if (d > a.delta_power) pa *= delta_poly(pb.vars() ? pb.vars() : pa.vars()).pow(d - a.delta_power);
    if (d > b.delta_power) pb *= delta_poly(pa.vars() ? pa.vars() : pb.vars()).pow(d - b.delta_power);
    v_ = normalize(Localized{pa + pb, d});
    return *this;
}

RingValue operator-(const RingValue& a) {
    if (a.is_rational()) return RingValue(-a.rational());
    RingValue r = a;
    std::get<Localized>(r.v_).poly = -a.localized().poly;
    return r;
}

RingValue& RingValue::operator-=(const RingValue& o) { return *this += -o; }

RingValue& RingValue::operator*=(const RingValue& o0) {
    RingValue o = o0;
    promote(*this, o);
    if (is_rational()) {
        std::get<Rational>(v_) *= o.rational();
        return *this;
    }
    const Localized& a = localized();
    const Localized& b = o.localized();
    v_ = normalize(Localized{a.poly * b.poly, a.delta_power + b.delta_power});
    return *this;
}

bool operator==(const RingValue& a0, const RingValue& b0) {
    RingValue a = a0, b = b0;
    RingValue::promote(a, b);
    if (a.is_rational()) return a.rational() == b.rational();
    return a.localized().delta_power == b.localized().delta_power && a.localized().poly == b.localized().poly;
}

RingValue divide_exact(const RingValue& a0, const RingValue& b0) {
    if (b0.is_zero()) throw RingError("division by zero");
    RingValue a = a0, b = b0;
    RingValue::promote(a, b);
    if (a.is_rational()) return RingValue(a.rational() / b.rational());
    LaurentPoly num = a.localized().poly;
    LaurentPoly den = b.localized().poly;
    if (!den.vars()) den = den.with_vars(num.vars());
    if (!num.vars()) num = num.with_vars(den.vars());
    int extra = 0;
    const auto& vars = den.vars();
    if (vars && vars->delta_var() >= 0) {
        auto q = static_cast<std::size_t>(vars->delta_var());
        LaurentPoly qq = LaurentPoly::variable(vars, q, 2) - LaurentPoly(vars, 1);
        LaurentPoly qv = LaurentPoly::variable(vars, q, 1);
        while (!den.is_constant()) {
            auto d = divide_exact(den * qv, qq);
            if (!d) break;
            den = std::move(*d);
            ++extra;
        }
        if (b.localized().delta_power > 0) num *= delta_poly(vars).pow(b.localized().delta_power);
    }
    auto quot = divide_exact(num, den);
    if (!quot) throw RingError("inexact division in ring");
    return RingValue(*quot, a.localized().delta_power + extra);
}

RingValue RingValue::inverse() const { return divide_exact(RingValue(1), *this); }

RingValue pow(const RingValue& a, long e) {
    if (e < 0) return pow(a.inverse(), -e);
    RingValue r(1), b = a;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

// ---------------------------------------------------------------- ring specs

VarSetPtr generic_varset(int k) {
    std::vector<std::string> names{"q", "lambda"};
    std::vector<bool> inv{true, true};
    for (int i = 1; i < k; ++i) {
        names.push_back("q_" + std::to_string(i));
        inv.push_back(false);
    }
    return make_varset(names, inv);
}

VarSetPtr brauer_varset(int k) {
    std::vector<std::string> names;
    std::vector<bool> inv;
    for (int i = 0; i <= k / 2; ++i) {
        names.push_back("A_" + std::to_string(i));
        inv.push_back(i == 0);
    }
    return make_varset(names, inv);
}

VarSetPtr universal_varset(int k) {
    std::vector<std::string> names{"q", "lambda"};
    std::vector<bool> inv{true, true};
    for (int i = 0; i < k; ++i) {
        names.push_back("q_" + std::to_string(i));
        inv.push_back(i == 0);
    }
    for (int i = 0; i < k; ++i) {
        names.push_back("A_" + std::to_string(i));
        inv.push_back(false);
    }
    return make_varset(names, inv);
}

RingValue delta(const RingSpec& spec) {
    switch (spec.mode) {
        case RingMode::GenericPlus:
        case RingMode::GenericMinus:
            return RingValue(delta_poly(generic_varset(spec.k)));
        case RingMode::Universal:
            return RingValue(delta_poly(universal_varset(spec.k)));
        case RingMode::BrauerClassical:
            return RingValue(LaurentPoly(brauer_varset(spec.k), 0));
        case RingMode::RationalPoint: {
            auto it = spec.point.find("q");
            if (it == spec.point.end()) throw RingError("rational point lacks q");
            return RingValue(it->second - Rational(1) / it->second);
        }
    }
    return RingValue(0);
}

RingValue apply_hom(const RingValue& value, const Assignment& assignment) {
    if (value.is_rational()) return value;
    const Localized& l = value.localized();
    const auto& vars = l.poly.vars();
    RingValue result(0);
    if (!vars) return RingValue(Rational(l.poly.constant_term()));
    std::vector<RingValue> images(vars->size());
    std::vector<std::optional<RingValue>> inverses(vars->size());
    for (std::size_t i = 0; i < vars->size(); ++i) {
        auto it = assignment.find(vars->name(i));
        if (it == assignment.end()) {
            bool used = false;
            for (const auto& t : l.poly.terms()) used = used || t.first[i] != 0;
            if (used) throw RingError("no assignment for variable " + vars->name(i));
            continue;
        }
        images[i] = it->second;
    }
    for (const auto& [e, c] : l.poly.terms()) {
        RingValue term{Rational(c)};
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (e[i] < 0) {
                if (!inverses[i]) {
                    if (images[i].is_zero()) throw RingError("non-invertible image for unit " + vars->name(i));
                    inverses[i] = images[i].inverse();
                }
                term *= pow(*inverses[i], -e[i]);
            } else {
                term *= pow(images[i], e[i]);
            }
        }
        result += term;
    }
    if (l.delta_power > 0) {
        int qi = vars->delta_var();
        RingValue qv = images[static_cast<std::size_t>(qi)];
        RingValue d = qv - qv.inverse();
        if (d.is_zero()) throw RingError("δ maps to zero");
        result = divide_exact(result, pow(d, l.delta_power));
    }
    return result;
}

}  // namespace cybmw

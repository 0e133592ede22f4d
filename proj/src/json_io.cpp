#include "cybmw/json_io.hpp"

namespace cybmw {

Json poly_to_json(const LaurentPoly& p) {
    Json arr = Json::array();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        Exps e = it->first;
        if (e.empty()) e.assign(p.nvars(), 0);
        arr.push_back(Json{{"exp", e}, {"coef", it->second.get_str()}});
    }
    return arr;
}

LaurentPoly poly_from_json(const Json& j, const VarSetPtr& vars) {
    LaurentPoly p(vars);
    for (const auto& t : j) {
        Exps e = t.at("exp").get<Exps>();
        p.add_term(e, Integer(t.at("coef").get<std::string>()));
    }
    return p;
}

Json to_json(const RingValue& v) {
    if (v.is_rational()) return v.rational().str();
    const Localized& l = v.localized();
    Json names = Json::array();
    Json inv = Json::array();
    if (l.poly.vars()) {
        for (std::size_t i = 0; i < l.poly.nvars(); ++i) {
            names.push_back(l.poly.vars()->name(i));
            inv.push_back(l.poly.vars()->invertible(i));
        }
    }
    return Json{{"vars", names}, {"invertible", inv}, {"poly", poly_to_json(l.poly)}, {"deltaPower", l.delta_power}};
}

RingValue ring_value_from_json(const Json& j) {
    if (j.is_string()) return RingValue(Rational::parse(j.get<std::string>()));
    if (j.is_number_integer()) return RingValue(Rational(Integer(j.get<long>())));
    auto names = j.at("vars").get<std::vector<std::string>>();
    std::vector<bool> inv;
    if (j.contains("invertible"))
        inv = j.at("invertible").get<std::vector<bool>>();
    else
        inv.assign(names.size(), false);
    VarSetPtr vars = make_varset(names, inv);
    return RingValue(poly_from_json(j.at("poly"), vars), j.value("deltaPower", 0));
}

}  // namespace cybmw

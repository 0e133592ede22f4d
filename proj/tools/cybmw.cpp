#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cybmw/acceptance.hpp"
#include "cybmw/bmw.hpp"

using namespace cybmw;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Opts {
    int n = 2, k = 1, sigma = +1, count = 0, threads = 1, max_n = 4;
    std::string ring = "point", algebra = "bmw", params_file, word, left, right, out;
    std::uint64_t seed = 1;
    bool count_only = false, det = false, corrupt = false;
};

RingSpec ring_spec(const Opts& o) {
    RingSpec s;
    s.k = o.k;
    s.sigma = o.sigma;
    if (o.ring == "generic-plus") s.mode = RingMode::GenericPlus;
    else if (o.ring == "generic-minus") s.mode = RingMode::GenericMinus;
    else if (o.ring == "brauer") s.mode = RingMode::BrauerClassical;
    else if (o.ring == "universal") s.mode = RingMode::Universal;
    else if (o.ring == "point" || o.ring == "generic-point") {
        s.mode = RingMode::RationalPoint;
        s.seed = o.seed;
    } else
        throw UsageError("unknown ring " + o.ring);
    return s;
}

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw UsageError(std::string("bad JSON in ") + path + ": " + e.what());
    }
}

// a file with A_0 is a full parameter set, otherwise a generic point
ParameterSet load_params(const Opts& o) {
    Json j = read_json(o.params_file);
    if (!j.is_object()) throw UsageError("parameter file must be a JSON object");
    auto get = [&](const std::string& name) -> RingValue {
        if (!j.contains(name)) throw UsageError("parameter file lacks " + name);
        return ring_value_from_json(j.at(name));
    };
    if (!j.contains("A_0")) {
        std::map<std::string, Rational> point;
        for (auto it = j.begin(); it != j.end(); ++it) {
            RingValue v = ring_value_from_json(it.value());
            if (!v.is_rational()) throw UsageError("point coordinate " + it.key() + " is not rational");
            point[it.key()] = v.rational();
        }
        return rational_point(o.k, o.sigma, point);
    }
    std::vector<RingValue> qs, A;
    for (int i = 0; i < o.k; ++i) {
        qs.push_back(get("q_" + std::to_string(i)));
        A.push_back(get("A_" + std::to_string(i)));
    }
    VarSetPtr vars;
    for (auto it = j.begin(); it != j.end() && !vars; ++it) vars = ring_value_from_json(it.value()).vars();
    RingSpec s;
    s.k = o.k;
    s.sigma = o.sigma;
    s.mode = vars ? RingMode::Universal : RingMode::RationalPoint;
    return ParameterSet(s, vars, get("q"), get("lambda"), qs, A);
}

ParameterSet params_of(const Opts& o) { return o.params_file.empty() ? make_parameters(ring_spec(o)) : load_params(o); }

std::shared_ptr<const BmwAlgebra> algebra_of(const Opts& o) {
    if (o.ring == "universal") throw UsageError("the universal ring is not admissible; pick another ring");
    if (!o.params_file.empty()) return make_bmw(o.n, load_params(o));
    return get_bmw(o.n, ring_spec(o));
}

Word word_arg(const std::string& s, int n) {
    try {
        return parse_word(s, n).tokens;
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

Json ring_list(const std::vector<RingValue>& v) {
    Json j = Json::array();
    for (const auto& x : v) j.push_back(to_json(x));
    return j;
}

Json matrix_json(const std::vector<std::vector<RingValue>>& m) {
    Json j = Json::array();
    for (const auto& r : m) j.push_back(ring_list(r));
    return j;
}

Json header(const std::string& cmd, const Opts& o) {
    return {{"schemaVersion", kSchemaVersion}, {"command", cmd}, {"n", o.n}, {"k", o.k}};
}

Json checks_json(const std::vector<RelationCheck>& cs, bool& all) {
    Json j = Json::array();
    all = true;
    for (const auto& c : cs) {
        Json e{{"name", c.name}, {"pass", c.pass}};
        if (!c.note.empty()) e["note"] = c.note;
        j.push_back(e);
        all = all && c.pass;
    }
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cyclotomic BMW algebras"};
    app.require_subcommand(1);
    Opts o;
    auto common = [&](CLI::App* c, bool with_n = true, bool with_ring = true) {
        if (with_n) c->add_option("--n", o.n)->check(CLI::Range(1, 8));
        c->add_option("--k", o.k)->check(CLI::Range(1, 12));
        if (with_ring) {
            c->add_option("--ring", o.ring)
                ->check(CLI::IsMember({"generic-plus", "generic-minus", "brauer", "point", "generic-point", "universal"}));
            c->add_option("--sigma", o.sigma)->check(CLI::IsMember({1, -1}));
            c->add_option("--seed", o.seed);
            c->add_option("--params", o.params_file);
        }
        c->add_option("--threads", o.threads)->check(CLI::PositiveNumber);
        c->add_option("--out", o.out, "write JSON here instead of stdout");
    };
    auto* adm = app.add_subcommand("admissible", "admissibility report");
    common(adm, false);
    auto* bas = app.add_subcommand("basis", "list the basis");
    common(bas, true, false);
    bas->add_flag("--count", o.count_only);
    auto* nor = app.add_subcommand("normalize", "reduce a word to the basis");
    common(nor);
    nor->add_option("--word", o.word)->required();
    auto* mul = app.add_subcommand("multiply", "product of two words");
    common(mul);
    mul->add_option("--left", o.left)->required();
    mul->add_option("--right", o.right)->required();
    auto* sta = app.add_subcommand("star", "anti-involution of a word");
    common(sta);
    sta->add_option("--word", o.word)->required();
    auto* reg = app.add_subcommand("regrep", "generator matrices");
    common(reg);
    auto* ver = app.add_subcommand("verify", "check relations and identities");
    common(ver);
    auto* gra = app.add_subcommand("gram", "Gram matrix of the trace");
    common(gra);
    gra->add_option("--algebra", o.algebra)->check(CLI::IsMember({"bmw", "brauer"}));
    gra->add_flag("--det", o.det);
    auto* tra = app.add_subcommand("trace", "Markov trace of a word");
    common(tra);
    tra->add_option("--word", o.word)->required();
    auto* spe = app.add_subcommand("specialize", "image of a word in the cyclotomic Brauer algebra");
    common(spe, true, false);
    spe->add_option("--sigma", o.sigma)->check(CLI::IsMember({1, -1}));
    spe->add_option("--word", o.word)->required();
    auto* sui = app.add_subcommand("suite", "acceptance criteria");
    sui->add_option("--max-n", o.max_n)->check(CLI::Range(1, 4));
    sui->add_option("--only", o.count)->check(CLI::Range(1, 10));
    sui->add_flag("--corrupt-rules", o.corrupt);
    sui->add_option("--threads", o.threads)->check(CLI::PositiveNumber);
    sui->add_option("--out", o.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (const char* env = std::getenv("CYBMW_THREADS")) {
        try {
            o.threads = std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            std::cerr << "bad CYBMW_THREADS\n";
            return 2;
        }
    }

    int rc = 0;
    Json res;
    try {
        if (adm->parsed()) {
            auto p = params_of(o);
            auto r = check_admissible(p);
            res = header("admissible", o);
            res.erase("n");
            res["ring"] = o.params_file.empty() ? ring_name(ring_spec(o)) : o.params_file;
            res["beta"] = to_json(r.beta);
            res["betaPlus"] = to_json(r.beta_plus);
            res["betaMinus"] = to_json(r.beta_minus);
            res["h"] = ring_list(r.h);
            res["hPrime"] = ring_list(r.h_prime);
            res["B"] = ring_list(r.B);
            res["admissible"] = r.admissible;
            res["weaklyAdmissible"] = r.weakly_admissible;
            res["weakHorizon"] = r.weak_horizon;
        } else if (bas->parsed()) {
            res = header("basis", o);
            if (o.count_only) {
                res["count"] = count_basis(o.n, o.k);
            } else {
                Json l = Json::array();
                for (const auto& b : enumerate_basis(o.n, o.k))
                    l.push_back({{"descriptor", b.descriptor()}, {"word", word_str(word_of(b))}});
                res["count"] = l.size();
                res["basis"] = l;
            }
        } else if (nor->parsed()) {
            auto B = algebra_of(o);
            res = header("normalize", o);
            res["ring"] = ring_name(B->params().spec());
            res["element"] = B->to_json(B->normalize(word_arg(o.word, o.n)));
        } else if (mul->parsed()) {
            auto B = algebra_of(o);
            auto x = B->normalize(word_arg(o.left, o.n));
            auto y = B->normalize(word_arg(o.right, o.n));
            res = header("multiply", o);
            res["ring"] = ring_name(B->params().spec());
            res["element"] = B->to_json(B->multiply(x, y));
        } else if (sta->parsed()) {
            auto B = algebra_of(o);
            res = header("star", o);
            res["ring"] = ring_name(B->params().spec());
            res["element"] = B->to_json(B->star(B->normalize(word_arg(o.word, o.n))));
        } else if (reg->parsed()) {
            auto B = algebra_of(o);
            std::vector<Token> gens{Token::y()};
            for (int i = 1; i < o.n; ++i) gens.push_back(Token::x(i));
            for (int i = 1; i < o.n; ++i) gens.push_back(Token::e(i));
            res = header("regrep", o);
            res["ring"] = ring_name(B->params().spec());
            res["dim"] = B->dim();
            Json files = Json::array();
            Json mats = Json::object();
            for (const auto& t : gens) {
                Json m = matrix_json(B->regrep(t));
                if (!o.out.empty()) {
                    std::filesystem::create_directories(o.out);
                    auto path = std::filesystem::path(o.out) / (t.str() + ".json");
                    std::ofstream(path) << Json{{"schemaVersion", kSchemaVersion}, {"generator", t.str()}, {"matrix", m}}.dump()
                                        << "\n";
                    files.push_back(path.string());
                } else {
                    mats[t.str()] = m;
                }
            }
            if (o.out.empty()) res["matrices"] = mats;
            else res["files"] = files;
            std::cout << res.dump(2) << "\n";
            return 0;
        } else if (ver->parsed()) {
            auto B = algebra_of(o);
            bool rel = false, ak = false;
            res = header("verify", o);
            res["ring"] = ring_name(B->params().spec());
            res["dim"] = B->dim();
            res["checks"] = checks_json(B->verify_relations(), rel);
            res["quotientChecks"] = checks_json(B->verify_ak_quotient(), ak);
            res["relations"] = rel ? "all-pass" : "failures";
            res["quotient"] = ak ? "all-pass" : "failures";
            rc = rel && ak ? 0 : 1;
        } else if (gra->parsed()) {
            res = header("gram", o);
            res["algebra"] = o.algebra;
            if (o.algebra == "brauer") {
                res["matrix"] = matrix_json(gram_matrix_brauer(o.n, o.k));
                if (o.det) res["det"] = to_json(gram_det(o.n, o.k));
            } else {
                if (rank_formula(o.n, o.k) > 200) throw UsageError("Gram matrix exceeds the 200x200 guard");
                auto B = algebra_of(o);
                res["ring"] = ring_name(B->params().spec());
                res["matrix"] = matrix_json(B->gram(o.threads));
                if (o.det) res["det"] = to_json(B->gram_det(o.threads));
            }
        } else if (tra->parsed()) {
            auto B = algebra_of(o);
            res = header("trace", o);
            res["ring"] = ring_name(B->params().spec());
            res["trace"] = to_json(B->markov_trace(B->normalize(word_arg(o.word, o.n))));
        } else if (spe->parsed()) {
            RingSpec s;
            s.mode = RingMode::BrauerClassical;
            s.k = o.k;
            s.sigma = o.sigma;
            auto B = get_bmw(o.n, s);
            auto x = B->normalize(word_arg(o.word, o.n));
            auto img = specialize_brauer(*B, x);
            res = header("specialize", o);
            res["ring"] = ring_name(s);
            res["element"] = B->to_json(x);
            res["image"] = img.to_json();
            res["trace"] = to_json(B->markov_trace(x));
            res["diagramTrace"] = to_json(trace_c(img));
            rc = res["trace"] == res["diagramTrace"] ? 0 : 1;
        } else if (sui->parsed()) {
            AcceptanceOptions ao;
            ao.max_n = o.max_n;
            ao.only = o.count;
            ao.corrupt_rules = o.corrupt;
            ao.threads = o.threads;
            auto rs = run_acceptance(ao);
            res = {{"schemaVersion", kSchemaVersion}, {"command", "suite"}, {"criteria", acceptance_json(rs)}};
            bool all = true;
            for (const auto& r : rs) all = all && r.pass;
            res["pass"] = all;
            rc = all ? 0 : 1;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << "guard: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    if (o.out.empty()) {
        std::cout << res.dump(2) << "\n";
    } else {
        std::ofstream f(o.out);
        if (!f) {
            std::cerr << "cannot write " << o.out << "\n";
            return 2;
        }
        f << res.dump(2) << "\n";
    }
    return rc;
}

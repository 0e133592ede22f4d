#include "cybmw/brauer.hpp"

#include <algorithm>
#include <stdexcept>

#include "cybmw/eigen_support.hpp"
#include "cybmw/params.hpp"

namespace cybmw {

namespace {
int modk(int x, int k) { return ((x % k) + k) % k; }
}  // namespace

CycloBrauerDiagram::CycloBrauerDiagram(int n, int k)
    : n_(n), k_(k), mate_(static_cast<std::size_t>(2 * n), -1), lab_(static_cast<std::size_t>(2 * n), 0) {
    if (n < 0 || k < 1) throw std::invalid_argument("bad diagram size");
}

void CycloBrauerDiagram::connect(int a, int b, int label_a_to_b) {
    mate_[static_cast<std::size_t>(a)] = b;
    mate_[static_cast<std::size_t>(b)] = a;
    lab_[static_cast<std::size_t>(a)] = modk(label_a_to_b, k_);
    lab_[static_cast<std::size_t>(b)] = modk(-label_a_to_b, k_);
}

CycloBrauerDiagram CycloBrauerDiagram::identity(int n, int k) {
    CycloBrauerDiagram d(n, k);
    for (int i = 0; i < n; ++i) d.connect(i, n + i, 0);
    return d;
}

CycloBrauerDiagram CycloBrauerDiagram::y_power(int n, int k, int c) {
    CycloBrauerDiagram d = identity(n, k);
    d.connect(0, n, c);
    return d;
}

CycloBrauerDiagram CycloBrauerDiagram::crossing(int n, int k, int i) {
    CycloBrauerDiagram d = identity(n, k);
    d.connect(i - 1, n + i, 0);
    d.connect(i, n + i - 1, 0);
    return d;
}

CycloBrauerDiagram CycloBrauerDiagram::cupcap(int n, int k, int i) {
    CycloBrauerDiagram d = identity(n, k);
    d.connect(i - 1, i, 0);
    d.connect(n + i - 1, n + i, 0);
    return d;
}

std::vector<std::pair<std::pair<int, int>, int>> CycloBrauerDiagram::strands() const {
    std::vector<std::pair<std::pair<int, int>, int>> out;
    for (int a = 0; a < 2 * n_; ++a) {
        int b = mate(a);
        if (a < b) out.push_back({{a, b}, label_from(a)});
    }
    return out;
}

bool operator<(const CycloBrauerDiagram& a, const CycloBrauerDiagram& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    auto sa = a.strands(), sb = b.strands();
    for (std::size_t i = 0; i < sa.size(); ++i)
        if (sa[i].first != sb[i].first) return sa[i].first < sb[i].first;
    for (std::size_t i = 0; i < sa.size(); ++i)
        if (sa[i].second != sb[i].second) return sa[i].second < sb[i].second;
    return false;
}

Json CycloBrauerDiagram::to_json() const {
    Json pairs = Json::array(), labels = Json::array();
    for (const auto& [p, l] : strands()) {
        pairs.push_back({p.first + 1, p.second + 1});
        labels.push_back(l);
    }
    return Json{{"pairs", pairs}, {"labels", labels}};
}

CycloBrauerDiagram CycloBrauerDiagram::from_json(const Json& j, int k) {
    const auto& pairs = j.at("pairs");
    int n = static_cast<int>(pairs.size());
    CycloBrauerDiagram d(n, k);
    for (std::size_t s = 0; s < pairs.size(); ++s) {
        int a = pairs[s][0].get<int>() - 1, b = pairs[s][1].get<int>() - 1;
        d.connect(a, b, j.at("labels")[s].get<int>());
    }
    for (int x : d.mate_)
        if (x < 0) throw std::invalid_argument("diagram is not a perfect matching");
    return d;
}

DiagramProduct compose(const CycloBrauerDiagram& d1, const CycloBrauerDiagram& d2) {
    if (d1.n() != d2.n() || d1.k() != d2.k()) throw std::invalid_argument("diagram size mismatch");
    const int n = d1.n(), k = d1.k();
    DiagramProduct out{std::vector<int>(static_cast<std::size_t>(k / 2 + 1), 0), CycloBrauerDiagram(n, k)};
    std::vector<char> mid_seen(static_cast<std::size_t>(n), 0);
    std::vector<char> done(static_cast<std::size_t>(2 * n), 0);
    // returns the result endpoint and label reached from a start (which, endpoint)
    auto walk = [&](int which, int x, int& label) {
        for (;;) {
            const CycloBrauerDiagram& d = which == 1 ? d1 : d2;
            label += d.label_from(x);
            int y = d.mate(x);
            if (which == 1) {
                if (y < n) return y;
                mid_seen[static_cast<std::size_t>(y - n)] = 1;
                which = 2;
                x = y - n;
            } else {
                if (y >= n) return y;
                mid_seen[static_cast<std::size_t>(y)] = 1;
                which = 1;
                x = n + y;
            }
        }
    };
    for (int e = 0; e < 2 * n; ++e) {
        if (done[static_cast<std::size_t>(e)]) continue;
        int label = 0;
        int end = e < n ? walk(1, e, label) : walk(2, e, label);
        out.diagram.connect(e, end, label);
        done[static_cast<std::size_t>(e)] = done[static_cast<std::size_t>(end)] = 1;
    }
    for (int m = 0; m < n; ++m) {
        if (mid_seen[static_cast<std::size_t>(m)]) continue;
        int label = 0, which = 1, x = n + m;
        for (;;) {
            const CycloBrauerDiagram& d = which == 1 ? d1 : d2;
            label += d.label_from(x);
            int y = d.mate(x);
            if (which == 1) {
                mid_seen[static_cast<std::size_t>(y - n)] = 1;
                which = 2;
                x = y - n;
            } else {
                mid_seen[static_cast<std::size_t>(y)] = 1;
                if (y == m) break;
                which = 1;
                x = n + y;
            }
        }
        out.loops[static_cast<std::size_t>(fold_label(label, k))]++;
    }
    return out;
}

DiagramProduct close_last(const CycloBrauerDiagram& d) {
    const int n = d.n(), k = d.k();
    if (n < 1) throw std::invalid_argument("closure of empty diagram");
    DiagramProduct out{std::vector<int>(static_cast<std::size_t>(k / 2 + 1), 0), CycloBrauerDiagram(n - 1, k)};
    const int t = n - 1, b = 2 * n - 1;
    auto remap = [&](int x) { return x < n ? x : x - 1; };
    for (const auto& [p, l] : d.strands()) {
        auto [a, c] = p;
        if (a == t || a == b || c == t || c == b) continue;
        out.diagram.connect(remap(a), remap(c), l);
    }
    if (d.mate(t) == b) {
        out.loops[static_cast<std::size_t>(fold_label(d.label_from(t), k))]++;
    } else {
        int a = d.mate(t), c = d.mate(b);
        out.diagram.connect(remap(a), remap(c), d.label_from(a) + d.label_from(b));
    }
    return out;
}

RingValue loop_monomial(const std::vector<int>& loops, int k) {
    VarSetPtr vs = brauer_varset(k);
    Exps e(vs->size(), 0);
    for (std::size_t d = 0; d < loops.size(); ++d) e[d] = loops[d];
    return RingValue(LaurentPoly::monomial(vs, e, 1));
}

BrauerElement::BrauerElement(const CycloBrauerDiagram& d, const RingValue& c) { add(d, c); }

void BrauerElement::add(const CycloBrauerDiagram& d, const RingValue& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(d);
    if (it == terms_.end()) {
        terms_.emplace(d, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

BrauerElement& BrauerElement::operator+=(const BrauerElement& o) {
    for (const auto& [d, c] : o.terms_) add(d, c);
    return *this;
}

BrauerElement BrauerElement::scaled(const RingValue& c) const {
    BrauerElement r;
    for (const auto& [d, x] : terms_) r.add(d, x * c);
    return r;
}

BrauerElement multiply(const CycloBrauerDiagram& d1, const CycloBrauerDiagram& d2) {
    DiagramProduct p = compose(d1, d2);
    return BrauerElement(p.diagram, loop_monomial(p.loops, d1.k()));
}

BrauerElement operator*(const BrauerElement& a, const BrauerElement& b) {
    BrauerElement r;
    for (const auto& [d1, c1] : a.terms_)
        for (const auto& [d2, c2] : b.terms_) {
            DiagramProduct p = compose(d1, d2);
            r.add(p.diagram, c1 * c2 * loop_monomial(p.loops, d1.k()));
        }
    return r;
}

Json BrauerElement::to_json() const {
    Json arr = Json::array();
    for (const auto& [d, c] : terms_) arr.push_back(Json{{"diagram", d.to_json()}, {"coef", cybmw::to_json(c)}});
    return arr;
}

BrauerElement closure(const BrauerElement& x) {
    BrauerElement r;
    for (const auto& [d, c] : x.terms()) {
        DiagramProduct p = close_last(d);
        r.add(p.diagram, c * loop_monomial(p.loops, d.k()));
    }
    return r;
}

RingValue trace_c(const CycloBrauerDiagram& d) {
    std::vector<int> loops(static_cast<std::size_t>(d.k() / 2 + 1), 0);
    CycloBrauerDiagram cur = d;
    while (cur.n() > 0) {
        DiagramProduct p = close_last(cur);
        for (std::size_t i = 0; i < loops.size(); ++i) loops[i] += p.loops[i];
        cur = p.diagram;
    }
    return loop_monomial(loops, d.k());
}

RingValue trace_c(const BrauerElement& x) {
    RingValue r(LaurentPoly(brauer_varset(x.is_zero() ? 1 : x.terms().begin()->first.k()), 0));
    for (const auto& [d, c] : x.terms()) r += c * trace_c(d);
    return r;
}

namespace {

void matchings(int n2, std::vector<int>& mate, std::vector<std::vector<int>>& out) {
    int first = -1;
    for (int i = 0; i < n2; ++i)
        if (mate[static_cast<std::size_t>(i)] < 0) {
            first = i;
            break;
        }
    if (first < 0) {
        out.push_back(mate);
        return;
    }
    for (int j = first + 1; j < n2; ++j) {
        if (mate[static_cast<std::size_t>(j)] >= 0) continue;
        mate[static_cast<std::size_t>(first)] = j;
        mate[static_cast<std::size_t>(j)] = first;
        matchings(n2, mate, out);
        mate[static_cast<std::size_t>(first)] = mate[static_cast<std::size_t>(j)] = -1;
    }
}

}  // namespace

std::vector<CycloBrauerDiagram> enumerate_diagrams(int n, int k, std::size_t guard) {
    double count = 1;
    for (int i = 0; i < n; ++i) count *= k * (2 * i + 1);
    if (count > static_cast<double>(guard)) throw std::length_error("diagram enumeration exceeds guard");
    std::vector<std::vector<int>> ms;
    std::vector<int> mate(static_cast<std::size_t>(2 * n), -1);
    matchings(2 * n, mate, ms);
    std::vector<CycloBrauerDiagram> out;
    for (const auto& m : ms) {
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < 2 * n; ++a)
            if (a < m[static_cast<std::size_t>(a)]) pairs.push_back({a, m[static_cast<std::size_t>(a)]});
        std::vector<int> labels(static_cast<std::size_t>(n), 0);
        for (;;) {
            CycloBrauerDiagram d(n, k);
            for (std::size_t s = 0; s < pairs.size(); ++s) d.connect(pairs[s].first, pairs[s].second, labels[s]);
            out.push_back(d);
            int pos = n - 1;
            while (pos >= 0 && ++labels[static_cast<std::size_t>(pos)] == k) labels[static_cast<std::size_t>(pos--)] = 0;
            if (pos < 0) break;
        }
    }
    return out;
}

std::vector<std::vector<RingValue>> gram_matrix_brauer(int n, int k, std::size_t guard) {
    auto ds = enumerate_diagrams(n, k, guard);
    std::vector<std::vector<RingValue>> g(ds.size(), std::vector<RingValue>(ds.size()));
    for (std::size_t i = 0; i < ds.size(); ++i)
        for (std::size_t j = 0; j < ds.size(); ++j) {
            DiagramProduct p = compose(ds[i], ds[j]);
            std::vector<int> loops = p.loops;
            CycloBrauerDiagram cur = p.diagram;
            RingValue t = trace_c(cur) * loop_monomial(loops, k);
            g[i][j] = t;
        }
    return g;
}

RingValue gram_det(int n, int k, std::size_t guard) {
    auto g = gram_matrix_brauer(n, k, guard);
    Mat<RingValue> m(static_cast<Eigen::Index>(g.size()), static_cast<Eigen::Index>(g.size()));
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = g[i][j];
    return bareiss_determinant(m);
}

}  // namespace cybmw

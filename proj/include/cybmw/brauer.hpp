#pragma once

#include <map>
#include <optional>
#include <vector>

#include "cybmw/json_io.hpp"
#include "cybmw/ring.hpp"

namespace cybmw {

/// Perfect matching on endpoints 0..n-1 (top) and n..2n-1 (bottom) with a
/// Z_k label per strand. lab[x] is the label read when leaving x toward its mate.
class CycloBrauerDiagram {
public:
    CycloBrauerDiagram() = default;
    CycloBrauerDiagram(int n, int k);
    static CycloBrauerDiagram identity(int n, int k);
    /// strand through top 1 labelled c
    static CycloBrauerDiagram y_power(int n, int k, int c);
    /// transposition of strands i, i+1 (1-based)
    static CycloBrauerDiagram crossing(int n, int k, int i);
    /// cup-cap at i, i+1 (1-based)
    static CycloBrauerDiagram cupcap(int n, int k, int i);
    static CycloBrauerDiagram from_json(const Json& j, int k);

    int n() const { return n_; }
    int k() const { return k_; }
    int mate(int x) const { return mate_[static_cast<std::size_t>(x)]; }
    int label_from(int x) const { return lab_[static_cast<std::size_t>(x)]; }
    void connect(int a, int b, int label_a_to_b);
    /// pairs (a < b) sorted by a, with labels oriented a → b
    std::vector<std::pair<std::pair<int, int>, int>> strands() const;
    Json to_json() const;

    friend bool operator==(const CycloBrauerDiagram& a, const CycloBrauerDiagram& b) {
        return a.n_ == b.n_ && a.k_ == b.k_ && a.mate_ == b.mate_ && a.lab_ == b.lab_;
    }
    friend bool operator<(const CycloBrauerDiagram& a, const CycloBrauerDiagram& b);

private:
    int n_ = 0, k_ = 1;
    std::vector<int> mate_, lab_;
};

/// Loop count per folded label d = 0..⌊k/2⌋ plus the product diagram.
struct DiagramProduct {
    std::vector<int> loops;
    CycloBrauerDiagram diagram;
};

/// D1 above D2
DiagramProduct compose(const CycloBrauerDiagram& d1, const CycloBrauerDiagram& d2);
/// joins top n to bottom n'; loops[d] counts a closed loop
DiagramProduct close_last(const CycloBrauerDiagram& d);

/// Π A_d^{loops[d]} in R_c
RingValue loop_monomial(const std::vector<int>& loops, int k);

class BrauerElement {
public:
    using Terms = std::map<CycloBrauerDiagram, RingValue>;

    BrauerElement() = default;
    BrauerElement(const CycloBrauerDiagram& d, const RingValue& c = RingValue(1));

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const CycloBrauerDiagram& d, const RingValue& c);

    BrauerElement& operator+=(const BrauerElement& o);
    BrauerElement scaled(const RingValue& c) const;
    friend BrauerElement operator*(const BrauerElement& a, const BrauerElement& b);
    friend bool operator==(const BrauerElement& a, const BrauerElement& b) { return a.terms_ == b.terms_; }
    Json to_json() const;

private:
    Terms terms_;
};

BrauerElement multiply(const CycloBrauerDiagram& d1, const CycloBrauerDiagram& d2);
BrauerElement closure(const BrauerElement& x);
RingValue trace_c(const BrauerElement& x);
RingValue trace_c(const CycloBrauerDiagram& d);
std::vector<CycloBrauerDiagram> enumerate_diagrams(int n, int k, std::size_t guard = 1000000);

/// (ε_c(D·D'))_{D,D'} over R_c
std::vector<std::vector<RingValue>> gram_matrix_brauer(int n, int k, std::size_t guard = 200);
RingValue gram_det(int n, int k, std::size_t guard = 200);

}  // namespace cybmw

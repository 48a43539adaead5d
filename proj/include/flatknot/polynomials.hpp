#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "flatknot/based_matrix.hpp"
#include "flatknot/gauss.hpp"
#include "flatknot/gf2.hpp"

namespace flatknot {

// Integer polynomial in commuting variables K1, K2, ...; a monomial is its
// exponent vector (index 0 is K1) with trailing zeros trimmed.
class KPoly {
public:
    using Mono = std::vector<int>;

    KPoly() = default;
    static KPoly constant(long long c);
    static KPoly variable(int index);  // K_index; K_0 is 1

    void add(const Mono& m, long long c);
    KPoly& operator+=(const KPoly& o);
    KPoly operator*(const KPoly& o) const;
    KPoly scaled(long long c) const;
    bool operator==(const KPoly& o) const { return terms_ == o.terms_; }
    bool operator<(const KPoly& o) const { return terms_ < o.terms_; }

    long long constant_term() const;
    long long eval_all_ones() const;
    bool is_zero() const { return terms_.empty(); }
    const std::map<Mono, long long>& terms() const { return terms_; }

    std::string str() const;
    static KPoly parse(const std::string& text);

private:
    std::map<Mono, long long> terms_;
};

// Polynomial in w and z, keyed by (z degree, w degree).
using WZPoly = std::map<std::pair<int, int>, long long>;
std::string format_wz(const WZPoly& p);
WZPoly parse_wz(const std::string& text);
IntPoly parse_int_poly(const std::string& text, char var);

struct StateLoop {
    BitVec edges;
    int cusps = 0;  // signed cusp total along the traversal
};

// Loops of the smoothing state given by mask (bit e set: arrow e smoothed
// disoriented). Circles without endpoints are returned as cusp-free loops.
std::vector<StateLoop> state_loops(const GaussDiagram& d, unsigned long long mask);

// Arrow polynomial by contracting the smoothing graph vertex by vertex.
KPoly arrow_polynomial(const GaussDiagram& d, bool normalize);
// Direct sum over all 2^n states; used as an independent check.
KPoly arrow_polynomial_states(const GaussDiagram& d, bool normalize);
// K-free part only; evaluates cables the full polynomial would not fit.
long long arrow_constant_term(const GaussDiagram& d, bool normalize);

struct JKResult {
    IntPoly j;              // in z
    IntPoly j_normalized;   // j divided by -2 or z
    WZPoly j_enhanced;
    WZPoly j_enhanced_normalized;
    int genus = 0;
    bool core_trivial = false;
};

// Caller supplies a minimal-crossing knot diagram.
JKResult jones_krushkal(const GaussDiagram& d);

IntPoly wz_at_w1(const WZPoly& p);
long long int_poly_eval(const IntPoly& p, long long x);

}  // namespace flatknot

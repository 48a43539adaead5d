#include <doctest.h>

#include <random>

#include "flatknot/moves.hpp"
#include "flatknot/polynomials.hpp"
#include "flatknot/surface.hpp"
#include "oracles.hpp"

using namespace flatknot;

namespace {

GaussDiagram code(const char* s) { return parse_gauss_code(s); }

KPoly arrow_of(const char* s) { return arrow_polynomial(code(s), true); }

}  // namespace

TEST_SUITE("polynomials") {

TEST_CASE("KPoly arithmetic, printing and parsing") {
    KPoly k1 = KPoly::variable(1), k2 = KPoly::variable(2);
    KPoly p = (k1 * k1).scaled(2);
    p += k2.scaled(-1);
    CHECK(p.str() == "2*K1^2 - K2");
    CHECK(KPoly::parse("2*K1^2 - K2") == p);
    CHECK(KPoly::parse("-K2 + 2*K1^2") == p);
    CHECK(KPoly::variable(0) == KPoly::constant(1));
    CHECK(p.eval_all_ones() == 1);
    CHECK(KPoly::parse("3 - 4*K1^2 + 2*K2").constant_term() == 3);
    CHECK(KPoly::constant(0).is_zero());
    CHECK(KPoly().str() == "0");
    CHECK_THROWS(KPoly::parse("2*x"));
}

TEST_CASE("w,z polynomial text") {
    WZPoly p = parse_wz("-3*w^2*z^2 - 5*w*z");
    CHECK(p.at({2, 2}) == -3);
    CHECK(p.at({1, 1}) == -5);
    CHECK(format_wz(p) == "-3*w^2*z^2 - 5*w*z");
    CHECK(wz_at_w1(p) == IntPoly{0, -5, -3});
    CHECK(parse_int_poly("24*z^2 + 72*z + 49", 'z') == IntPoly{49, 72, 24});
    CHECK(int_poly_eval(IntPoly{49, 72, 24}, -2) == 1);
}

TEST_CASE("printed arrow polynomials") {
    CHECK(arrow_of("O1O2O3U1U3U2") == KPoly::parse("2*K1^2 - K2"));
    CHECK(arrow_of("O1O2O3O4U3U4U1U2") == KPoly::parse("-4*K1^2 + 2*K2 + 3"));
    CHECK(arrow_of("O1O2O3O4O5O6U4U5U6U1U2U3") == KPoly::parse("-16*K1^4 + 8*K1^2*K2 + 8*K1^2 + 1"));
    CHECK(arrow_of("O1O2O3O4O5O6U4U6U5U2U1U3") == KPoly::parse("4*K1^2*K2 - 4*K1*K3 + K4"));
    CHECK(arrow_of("O1O2O3O4O5U3U5U4O6U2U1U6") == KPoly::constant(1));
    CHECK(arrow_polynomial(unknot(), true) == KPoly::constant(1));
}

TEST_CASE("contraction agrees with the direct state sum") {
    for (int n = 0; n <= 4; ++n)
        for (const auto& d : oracle::all_knot_diagrams(n)) {
            KPoly a = arrow_polynomial(d, false);
            CHECK(a == arrow_polynomial_states(d, false));
            CHECK(arrow_constant_term(d, false) == a.constant_term());
        }
    std::mt19937 rng(43);
    for (int trial = 0; trial < 60; ++trial) {
        GaussDiagram d = oracle::random_knot_diagram(5 + trial % 5, rng);
        CHECK(arrow_polynomial(d, true) == arrow_polynomial_states(d, true));
    }
    for (const char* c : {"O1O2O3U1U3U2", "O1O2O3O4U1U3U4U2", "O1U2;U1O2", "O1O2U1U2;O3U3;"}) {
        GaussDiagram d = code(c);
        CHECK(arrow_polynomial(d, true) == arrow_polynomial_states(d, true));
    }
    GaussDiagram c2 = cable(code("O1O2O3U1U3U2"), 2);
    CHECK(arrow_polynomial(c2, true) == arrow_polynomial_states(c2, true));
    CHECK(arrow_constant_term(c2, true) == arrow_polynomial(c2, true).constant_term());
}

TEST_CASE("arrow polynomial is unchanged by moves") {
    std::mt19937 rng(47);
    for (int trial = 0; trial < 60; ++trial) {
        GaussDiagram d = oracle::random_knot_diagram(3 + trial % 5, rng);
        KPoly a = arrow_polynomial(d, true);
        for (const auto& s : find_moves(d)) CHECK(arrow_polynomial(apply_move(d, s), true) == a);
    }
}

TEST_CASE("state loops partition the skeleton edges and carry even cusp totals") {
    std::mt19937 rng(53);
    for (int trial = 0; trial < 40; ++trial) {
        GaussDiagram d = oracle::random_knot_diagram(2 + trial % 5, rng);
        int edges = d.num_slots();
        for (unsigned long long mask = 0; mask < (1ull << d.num_arrows()); ++mask) {
            BitVec all(edges);
            int count = 0;
            for (const auto& l : state_loops(d, mask)) {
                CHECK(l.cusps % 2 == 0);
                for (int e = 0; e < edges; ++e)
                    if (l.edges.get(e)) {
                        CHECK_FALSE(all.get(e));
                        all.set(e);
                        ++count;
                    }
            }
            CHECK(count == edges);
        }
    }
}

TEST_CASE("Jones-Krushkal of 3.1 and 5.1") {
    JKResult t = jones_krushkal(code("O1O2O3U1U3U2"));
    CHECK(t.j == parse_int_poly("-3*z^2 - 5*z", 'z'));
    CHECK(t.j_normalized == parse_int_poly("-3*z - 5", 'z'));
    CHECK(t.j_enhanced == parse_wz("-3*w^2*z^2 - 5*w*z"));
    JKResult f = jones_krushkal(code("O1O2O3O4O5U1U2U3U5U4"));
    CHECK(f.j == t.j);
    CHECK(f.j_enhanced == parse_wz("-4*w^4*z^2 + 6*w^3*z^2 - 5*w^2*z^2 - 5*w*z"));
    CHECK(wz_at_w1(f.j_enhanced) == f.j);
}

TEST_CASE("Jones-Krushkal of the unknot") {
    JKResult u = jones_krushkal(unknot());
    CHECK(u.j == IntPoly{-2});
    CHECK(u.j_normalized == IntPoly{1});
    CHECK(u.core_trivial);
}

TEST_CASE("JK normalization evaluates to 1 at z = -2 on minimal diagrams") {
    std::mt19937 rng(59);
    int tested = 0;
    for (int trial = 0; trial < 200 && tested < 40; ++trial) {
        GaussDiagram d = oracle::random_knot_diagram(3 + trial % 5, rng);
        GaussDiagram m = from_ou_matching(canonical_key(d));
        if (m.num_arrows() < 2) continue;
        ++tested;
        JKResult j = jones_krushkal(m);
        CHECK(int_poly_eval(j.j_normalized, -2) == 1);
        CHECK(j.genus == carter_surface(m).genus);
        CHECK(wz_at_w1(j.j_enhanced) == j.j);
    }
    CHECK(tested > 10);
}

TEST_CASE("coefficient overflow raises instead of wrapping") {
    KPoly big = KPoly::constant(1LL << 62);
    CHECK_THROWS_AS(big.scaled(4), std::overflow_error);
}

}

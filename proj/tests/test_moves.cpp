#include <doctest.h>

#include <random>
#include <set>

#include "flatknot/moves.hpp"
#include "oracles.hpp"

using namespace flatknot;

namespace {

std::vector<int> oracle_indices(const GaussDiagram& d) {
    std::vector<int> v;
    for (int a = 0; a < d.num_arrows(); ++a) v.push_back(oracle::index(d.circles[0], a));
    return v;
}

}  // namespace

TEST_SUITE("moves") {

TEST_CASE("R1 and R2 removals on small diagrams") {
    GaussDiagram kink = parse_gauss_code("O1U1");
    auto r = find_removals(kink);
    REQUIRE(r.size() == 1);
    CHECK(r[0].kind == MoveKind::R1_remove);
    CHECK(apply_move(kink, r[0]) == unknot());

    GaussDiagram bigon = parse_gauss_code("O1O2U1U2");
    bool found = false;
    for (const auto& s : find_removals(bigon))
        if (s.kind == MoveKind::R2_remove) {
            found = true;
            CHECK(apply_move(bigon, s).num_arrows() == 0);
        }
    CHECK(found);
    // both arrows pointing the same way across the pairs: not an R2 bigon
    CHECK(find_removals(parse_gauss_code("O1O2U2U1")).empty() == false);  // R1 on arrow 2
    CHECK(find_removals(parse_gauss_code("O1O2O3U1U3U2")).empty());
}

TEST_CASE("R2 legality equals the mixed-pair rule on all diagrams with up to 4 arrows") {
    for (int n = 2; n <= 4; ++n)
        for (const auto& d : oracle::all_knot_diagrams(n)) {
            const auto& w = d.circles[0];
            int len = static_cast<int>(w.size());
            for (const auto& s : r2_candidates(d)) {
                bool mixed = true;
                for (Slot p : s.slots) mixed = mixed && w[p.pos].head != w[(p.pos + 1) % len].head;
                CHECK(r2_pattern_legal(d, s) == mixed);
            }
        }
}

TEST_CASE("R3 legality equals index preservation on all diagrams with up to 4 arrows") {
    int legal = 0, total = 0;
    for (int n = 3; n <= 4; ++n)
        for (const auto& d : oracle::all_knot_diagrams(n))
            for (const auto& s : r3_candidates(d)) {
                ++total;
                bool keeps = oracle_indices(swap_pairs(d, s.slots)) == oracle_indices(d);
                CHECK(r3_pattern_legal(d, s) == keeps);
                legal += keeps;
            }
    CHECK(total > 0);
    CHECK(legal > 0);
    CHECK(legal < total);
}

TEST_CASE("every found move is legal and changes the crossing count as expected") {
    for (int n = 1; n <= 4; ++n)
        for (const auto& d : oracle::all_knot_diagrams(n))
            for (const auto& s : find_moves(d)) {
                GaussDiagram e = apply_move(d, s);
                CHECK_NOTHROW(e.validate());
                int drop = s.kind == MoveKind::R1_remove ? 1 : s.kind == MoveKind::R2_remove ? 2 : 0;
                CHECK(e.num_arrows() == n - drop);
                if (s.kind == MoveKind::R3) {
                    CHECK(r3_pattern_legal(d, s));
                    // R3 is its own inverse at the same site
                    CHECK(swap_pairs(e, s.slots) == d);
                }
            }
}

TEST_CASE("describe names the move") {
    auto r = find_removals(parse_gauss_code("O1U1"));
    CHECK(describe(r[0]) == "R1 arrows 1 at 0:0 0:1");
}

TEST_CASE("R3 closure is the same set from every member") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        GaussDiagram d = oracle::random_knot_diagram(3 + trial % 4, rng);
        auto cl = r3_closure(d);
        std::set<std::string> a;
        for (const auto& m : cl) a.insert(raw_code(m));
        CHECK(a.count(raw_code(d)) == 1);
        std::set<std::string> b;
        for (const auto& m : r3_closure(cl.back())) b.insert(raw_code(m));
        CHECK(a == b);
    }
}

TEST_CASE("reduction trace replays and lands on the canonical class") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        GaussDiagram d = oracle::random_knot_diagram(1 + trial % 7, rng);
        std::vector<ReduceStep> trace;
        GaussDiagram m = reduce_monotone(d, &trace);
        GaussDiagram cur = d;
        for (const auto& st : trace) {
            CHECK(st.before == cur);
            cur = apply_move(cur, st.site);
        }
        CHECK(cur == m);
        CHECK(orbit_key(m) == canonical_key(d));
        CHECK(m.num_arrows() <= d.num_arrows());
    }
}

TEST_CASE("canonical key ignores rotation and relabeling") {
    GaussDiagram d = parse_gauss_code("O1O2O3O4O5U1U2U3U5U4");
    CanonicalKey k = canonical_key(d);
    for (int r = 0; r < 10; ++r) CHECK(canonical_key(rotate(d, r)) == k);
    CHECK(same_flat_knot(d, rotate(d, 3)));
    CHECK_FALSE(same_flat_knot(d, parse_gauss_code("O1O2O3U1U3U2")));
    CHECK(canonical_key(parse_gauss_code("O1U1O2O3U2U3")) == canonical_key(unknot()));
}

TEST_CASE("symmetry types") {
    CHECK(symmetry_type(parse_gauss_code("O1O2O3O4O5U1U2U4U5U3")) == SymmetryType::chiral);
    CHECK(symmetry_type(unknot()) == SymmetryType::fully_achiral);
    CHECK(symmetry_type_from(true, false, false) == SymmetryType::reversible);
    CHECK(symmetry_type_from(false, true, false) == SymmetryType::plus_achiral);
    CHECK(symmetry_type_from(false, false, true) == SymmetryType::minus_achiral);
    CHECK(symmetry_type_from(true, true, true) == SymmetryType::fully_achiral);
    for (auto t : {SymmetryType::chiral, SymmetryType::reversible, SymmetryType::plus_achiral,
                   SymmetryType::minus_achiral, SymmetryType::fully_achiral})
        CHECK(parse_symmetry_name(symmetry_name(t)) == t);
}

}

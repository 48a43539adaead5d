#include <doctest.h>

#include <random>

#include "flatknot/based_matrix.hpp"
#include "flatknot/surface.hpp"
#include "oracles.hpp"

using namespace flatknot;

TEST_SUITE("surface") {

TEST_CASE("unknot and trefoil shadow") {
    CarterSurface u = carter_surface(unknot());
    CHECK(u.genus == 0);
    CHECK(u.free_circles == 1);
    CarterSurface s = carter_surface(parse_gauss_code("O1O2O3U1U3U2"));
    CHECK(s.vertices == 3);
    CHECK(s.edges == 6);
    CHECK(s.faces == 1);
    CHECK(s.genus == 2);
    CHECK(s.homology_dim() == 4);
}

TEST_CASE("genus and Euler characteristic agree with the word oracle") {
    auto check = [](const GaussDiagram& d) {
        CarterSurface s = carter_surface(d);
        int n = d.num_arrows();
        CHECK(s.genus == oracle::genus(d.circles[0]));
        CHECK(s.homology_dim() == 2 * s.genus);
        if (n > 0) {
            CHECK(s.graph_components == 1);
            CHECK(s.vertices - s.edges + s.faces == 2 - 2 * s.genus);
        }
    };
    for (int n = 0; n <= 4; ++n)
        for (const auto& d : oracle::all_knot_diagrams(n)) check(d);
    std::mt19937 rng(17);
    for (int trial = 0; trial < 200; ++trial) check(oracle::random_knot_diagram(5 + trial % 5, rng));
}

TEST_CASE("two-component diagrams") {
    CarterSurface s = carter_surface(parse_gauss_code("O1U2;U1O2"));
    CHECK(s.graph_components == 1);
    CHECK(s.free_circles == 0);
    CarterSurface t = carter_surface(parse_gauss_code("O1U1;"));
    CHECK(t.free_circles == 1);
}

TEST_CASE("core walk and arrow loops are closed; their pairing gives the index") {
    GaussDiagram d = parse_gauss_code("O1O2O3O4O5U1U2U3U5U4");
    CarterSurface s = carter_surface(d);
    Walk core = core_walk(d);
    CHECK_NOTHROW(check_closed(s, core));
    auto idx = arrow_indices(d);
    for (int a = 0; a < d.num_arrows(); ++a) {
        Walk w = arrow_loop(d, a);
        CHECK_NOTHROW(check_closed(s, w));
        CHECK(std::abs(intersection_pairing(s, core, w)) == std::abs(idx[a]));
        CHECK(intersection_pairing(s, w, w) == 0);
    }
    Walk open = {{0, true}};
    CHECK_THROWS_AS(check_closed(s, open), std::invalid_argument);
}

TEST_CASE("face boundaries are null-homologous and the basis has full rank") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        GaussDiagram d = oracle::random_knot_diagram(2 + trial % 6, rng);
        CarterSurface s = carter_surface(d);
        for (const auto& f : s.face_edges) CHECK(null_homologous(s, f));
        CHECK(homology_rank(s, s.basis) == 2 * s.genus);
    }
}

}

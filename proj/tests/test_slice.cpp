#include <doctest.h>

#include <algorithm>

#include "flatknot/based_matrix.hpp"
#include "flatknot/moves.hpp"
#include "flatknot/slice.hpp"

using namespace flatknot;

namespace {

// circles up to rotation and order; arrow ids are kept
std::vector<std::string> circle_forms(const GaussDiagram& d) {
    std::vector<std::string> out;
    for (const auto& c : d.circles) {
        std::string best;
        for (size_t k = 0; k < std::max<size_t>(1, c.size()); ++k) {
            std::string s;
            for (size_t i = 0; i < c.size(); ++i) {
                const auto& e = c[(i + k) % c.size()];
                s += std::to_string(e.arrow) + (e.head ? "U" : "O");
            }
            if (k == 0 || s < best) best = s;
        }
        out.push_back(best);
    }
    std::sort(out.begin(), out.end());
    return out;
}

const char* k42 = "O1O2O3O4U1U3U4U2";

}  // namespace

TEST_SUITE("slice") {

TEST_CASE("splitting saddle then merging back restores the circle") {
    GaussDiagram d = parse_gauss_code("O1O2O3O4O5U1U2U3U5U4");
    int len = d.num_slots();
    for (int p = 0; p < len; ++p)
        for (int q = p + 1; q < len; ++q) {
            GaussDiagram s = saddle(d, {0, p}, {0, q});
            REQUIRE(s.components() == 2);
            CHECK(s.num_arrows() == d.num_arrows());
            GaussDiagram m = saddle(s, {0, 0}, {1, 0});
            CHECK(m == rotate(d, q));
        }
}

TEST_CASE("merging then splitting restores both circles") {
    GaussDiagram d = parse_gauss_code("O1U2O3;U1O2U3");
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
            GaussDiagram m = saddle(d, {0, p}, {1, q});
            REQUIRE(m.components() == 1);
            GaussDiagram s = saddle(m, {0, 0}, {0, 3});
            CHECK(circle_forms(s) == circle_forms(d));
        }
}

TEST_CASE("saddle errors") {
    GaussDiagram d = parse_gauss_code("O1U1");
    CHECK_THROWS_AS(saddle(d, {0, 1}, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(saddle(d, {0, 0}, {0, 5}), std::invalid_argument);
    CHECK_THROWS_AS(saddle(d, {0, 0}, {3, 0}), std::invalid_argument);
}

TEST_CASE("unknot is slice with an empty movie") {
    SliceStatus s = slice_search(unknot());
    CHECK(s.kind == SliceStatus::slice);
    REQUIRE(s.movie);
    CHECK(s.movie->steps.empty());
    CHECK(strongly_ribbon_check(unknot()));
}

TEST_CASE("obstructions") {
    SliceStatus a = slice_obstructions(parse_gauss_code(k42));
    CHECK(a.kind == SliceStatus::not_slice);
    CHECK(a.reason.find("u-polynomial") != std::string::npos);

    GaussDiagram d464 = parse_gauss_code("O1O2O3O4O5U6U4O6U1U3U5U2");
    CHECK(u_polynomial(d464).empty());
    CHECK(algebraic_genus(based_matrix(d464)) == 0);
    SliceStatus b = slice_obstructions(d464);
    CHECK(b.kind == SliceStatus::not_slice);
    CHECK(b.reason.find("3-covering") != std::string::npos);
    CHECK(slice_obstructions(d464, 0).kind == SliceStatus::unknown);

    CHECK(slice_obstructions(unknot()).kind == SliceStatus::unknown);
    CHECK_FALSE(strongly_ribbon_check(parse_gauss_code(k42)));
}

TEST_CASE("a one-saddle ribbon movie for a 7-crossing knot") {
    GaussDiagram d = parse_gauss_code("O1O2U3O4U5O6U4O7U1U2O5O3U7U6");
    SliceStatus s = slice_search(d);
    REQUIRE(s.kind == SliceStatus::slice);
    REQUIRE(s.movie);
    CHECK(s.movie->saddles() == 1);
    CHECK(s.movie->ribbon());
    CHECK(s.movie->saddles() == s.movie->births() + s.movie->deaths());
    GaussDiagram end = replay(*s.movie);
    CHECK(end.components() == 1);
    CHECK(end.num_arrows() == 0);
}

TEST_CASE("movie text round trip and tamper detection") {
    GaussDiagram d = parse_gauss_code("O1O2U3O4U5O6U4O7U1U2O5O3U7U6");
    SliceMovie m = *slice_search(d).movie;
    std::string text = format_movie(m);
    SliceMovie back = parse_movie(text);
    CHECK(format_movie(back) == text);
    CHECK_NOTHROW(replay(back));

    SliceMovie cut = back;
    cut.steps.pop_back();
    CHECK_THROWS_AS(replay(cut), std::invalid_argument);

    SliceMovie extra = back;
    extra.steps.push_back(MovieStep{MovieStep::birth});
    CHECK_THROWS_AS(replay(extra), std::invalid_argument);

    CHECK_THROWS(parse_movie("start O1U1\nfly away\n"));
    CHECK(format_movie(parse_movie("# slice\n\n" + text)) == text);
}

TEST_CASE("birth and death keep the count identity") {
    SliceMovie m;
    m.start = unknot();
    m.steps.push_back(MovieStep{MovieStep::birth});
    MovieStep s{MovieStep::saddle};
    s.p = {0, 0};
    s.q = {1, 0};
    m.steps.push_back(s);
    CHECK(m.births() == 1);
    CHECK(m.saddles() == 1);
    CHECK_FALSE(m.ribbon());
    CHECK(replay(m).num_arrows() == 0);
}

TEST_CASE("a symmetric connected sum is strongly ribbon and slice") {
    GaussDiagram a = parse_gauss_code("O1O2O3U1U3U2");
    GaussDiagram b = symmetry_transform(a, Symmetry::reverse_mirror);
    bool found = false;
    for (int s1 = 0; s1 < 6 && !found; ++s1)
        for (int s2 = 0; s2 < 6 && !found; ++s2) {
            GaussDiagram d = connected_sum(b, s1, a, s2);
            GaussDiagram flipped = symmetry_transform(d, Symmetry::reverse_mirror);
            if (canonical_rotation(flipped) != canonical_rotation(d)) continue;
            found = true;
            CHECK(strongly_ribbon_check(d));
            CHECK(u_polynomial(d).empty());
            CHECK(slice_status(d).kind == SliceStatus::slice);
        }
    CHECK(found);
}

TEST_CASE("status names") {
    CHECK(slice_kind_name(SliceStatus::slice) == "slice");
    CHECK(slice_kind_name(SliceStatus::not_slice) == "not_slice");
    CHECK(slice_kind_name(SliceStatus::unknown) == "unknown");
}

}

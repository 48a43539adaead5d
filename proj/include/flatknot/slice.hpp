#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flatknot/gauss.hpp"
#include "flatknot/moves.hpp"

namespace flatknot {

// Gap just before slot pos of a circle (pos 0 on an empty circle is its only gap).
using Gap = Slot;

// Cut the skeleton at two gaps and reconnect respecting orientation. Two gaps
// on one circle split it in two (the arc from p to q becomes the last circle);
// gaps on different circles merge them into the lower-numbered one.
GaussDiagram saddle(const GaussDiagram& d, Gap p, Gap q);

struct MovieStep {
    enum Kind { reidemeister, saddle, birth, death } kind = reidemeister;
    MoveSite move;     // reidemeister
    Gap p, q;          // saddle
    int circle = 0;    // death: circle removed
};

// Steps lead from start to a single crossing-free circle, the trivial knot.
struct SliceMovie {
    GaussDiagram start;
    std::vector<MovieStep> steps;
    int saddles() const;
    int births() const;
    int deaths() const;
    bool ribbon() const { return births() == 0; }
};

// Throws std::invalid_argument describing the first illegal step; checks the
// end state, the count identity, and connectivity of the cobordism.
GaussDiagram replay(const SliceMovie& m);

std::string format_movie(const SliceMovie& m);
// Blank lines and lines starting with '#' are skipped.
SliceMovie parse_movie(const std::string& text);

struct SliceStatus {
    enum Kind { slice, not_slice, unknown } kind = unknown;
    std::optional<SliceMovie> movie;
    std::string reason;
};
std::string slice_kind_name(SliceStatus::Kind k);

// not_slice with a reason, or unknown.
SliceStatus slice_obstructions(const GaussDiagram& d, int depth = 2);

struct SliceBudget {
    int max_saddles = 2;
    size_t max_states = 100000;
};

// slice with a movie, or unknown.
SliceStatus slice_search(const GaussDiagram& d, const SliceBudget& budget = {});

// Obstructions first, then the search.
SliceStatus slice_status(const GaussDiagram& d, int depth = 2, const SliceBudget& budget = {});

// Semi-decision: some member of the R3 orbit of the reduced diagram equals its
// own reversed mirror up to rotation. false means not detected.
bool strongly_ribbon_check(const GaussDiagram& d);

}  // namespace flatknot

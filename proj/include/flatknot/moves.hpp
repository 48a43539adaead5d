#pragma once

#include <string>
#include <vector>

#include "flatknot/gauss.hpp"

namespace flatknot {

enum class MoveKind { R1_remove, R2_remove, R3 };

// R1: slots = {tail, head}. R2: slots = first slot of each adjacent pair.
// R3: slots = first slot of each of the three adjacent pairs that get swapped.
struct MoveSite {
    MoveKind kind = MoveKind::R1_remove;
    std::vector<int> arrows;
    std::vector<Slot> slots;
    bool operator==(const MoveSite&) const = default;
};

std::string describe(const MoveSite& s);

std::vector<MoveSite> find_moves(const GaussDiagram& d);
std::vector<MoveSite> find_removals(const GaussDiagram& d);
std::vector<MoveSite> find_r3(const GaussDiagram& d);
GaussDiagram apply_move(const GaussDiagram& d, const MoveSite& site);

// Unvalidated candidate patterns, exposed so tests can check the move table.
// An R2 candidate is any two arrows whose ends fill two adjacent pairs; an R3
// candidate is any triangle of arrows on three disjoint adjacent pairs.
std::vector<MoveSite> r2_candidates(const GaussDiagram& d);
std::vector<MoveSite> r3_candidates(const GaussDiagram& d);
bool r2_pattern_legal(const GaussDiagram& d, const MoveSite& s);
bool r3_pattern_legal(const GaussDiagram& d, const MoveSite& s);
GaussDiagram swap_pairs(const GaussDiagram& d, const std::vector<Slot>& firsts);

// Byte string identifying a diagram exactly (no rotation or relabeling).
std::string raw_code(const GaussDiagram& d);

// All diagrams reachable from d by R3 moves, positions kept fixed.
std::vector<GaussDiagram> r3_closure(const GaussDiagram& d, size_t limit = 0);
// Same closure with every member put in canonical rotation, duplicates removed.
std::vector<GaussDiagram> r3_orbit(const GaussDiagram& d);

struct ReduceStep {
    GaussDiagram before;
    MoveSite site;
};

// Monotone reduction. If trace is given, every applied move is appended.
GaussDiagram reduce_monotone(const GaussDiagram& d, std::vector<ReduceStep>* trace = nullptr);

using CanonicalKey = OUMatching;
CanonicalKey canonical_key(const GaussDiagram& d);
// Key of a diagram already known to be minimal (skips reduction).
CanonicalKey orbit_key(const GaussDiagram& minimal);
bool same_flat_knot(const GaussDiagram& a, const GaussDiagram& b);

enum class SymmetryType { chiral, reversible, plus_achiral, minus_achiral, fully_achiral };
SymmetryType symmetry_type(const GaussDiagram& d);
SymmetryType symmetry_type_from(bool eq_reverse, bool eq_mirror, bool eq_reverse_mirror);
std::string symmetry_name(SymmetryType t);
char symmetry_letter(SymmetryType t);
SymmetryType parse_symmetry_name(const std::string& s);

}  // namespace flatknot

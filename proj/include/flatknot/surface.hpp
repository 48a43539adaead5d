#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "flatknot/gauss.hpp"
#include "flatknot/gf2.hpp"

namespace flatknot {

// Closed walk in the skeleton graph: (edge id, traversed forward?).
using Walk = std::vector<std::pair<int, bool>>;
using HomClass = BitVec;

// Ribbon graph of a diagram. Vertices are arrows, edges are skeleton arcs
// (edge of slot p on a circle runs from slot p to slot p+1). Edge ends are
// numbered 2*edge (start) and 2*edge+1 (end).
struct CarterSurface {
    int vertices = 0;
    int edges = 0;
    int faces = 0;
    int genus = 0;
    int graph_components = 0;
    int free_circles = 0;  // circles carrying no endpoints
    // counterclockwise order at each vertex: in-tail, in-head, out-tail, out-head
    std::vector<std::array<int, 4>> rotation;
    std::vector<int> end_vertex;
    std::vector<int> end_position;  // index within rotation
    std::vector<std::vector<int>> face_darts;  // outgoing edge ends in face order
    std::vector<BitVec> face_edges;
    std::vector<BitVec> basis;  // representatives of a basis of H1(.;Z/2), 2g of them
    Echelon boundaries;          // face boundaries
    Echelon with_basis;          // face boundaries plus basis, basis rows tagged
    std::vector<int> edge_circle, edge_slot;
    std::vector<int> circle_edge_offset;

    int homology_dim() const { return static_cast<int>(basis.size()); }
    int edge_id(int circle, int slot) const { return circle_edge_offset.at(circle) + slot; }
};

CarterSurface carter_surface(const GaussDiagram& d);

Walk core_walk(const GaussDiagram& d, int circle = 0);
// The loop e+: the skeleton arc from the tail of the arrow to its head.
Walk arrow_loop(const GaussDiagram& d, int arrow);

BitVec walk_edges(const CarterSurface& s, const Walk& w);
// Throws std::invalid_argument if the walk is not closed.
void check_closed(const CarterSurface& s, const Walk& w);
HomClass loop_class(const CarterSurface& s, const Walk& w);
HomClass edge_set_class(const CarterSurface& s, const BitVec& edges);
// Rank of the span of the given edge cycles in H1(.;Z/2).
int homology_rank(const CarterSurface& s, const std::vector<BitVec>& cycles);
bool null_homologous(const CarterSurface& s, const BitVec& edges);

long long intersection_pairing(const CarterSurface& s, const Walk& a, const Walk& b);

}  // namespace flatknot

#include "flatknot/surface.hpp"

#include <numeric>
#include <stdexcept>

namespace flatknot {

namespace {

int find(std::vector<int>& p, int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
}

}  // namespace

CarterSurface carter_surface(const GaussDiagram& d) {
    d.validate();
    CarterSurface s;
    s.vertices = d.num_arrows();
    for (int c = 0; c < d.components(); ++c) {
        s.circle_edge_offset.push_back(s.edges);
        int len = static_cast<int>(d.circles[c].size());
        if (len == 0) ++s.free_circles;
        for (int p = 0; p < len; ++p) {
            s.edge_circle.push_back(c);
            s.edge_slot.push_back(p);
        }
        s.edges += len;
    }
    s.rotation.assign(s.vertices, {-1, -1, -1, -1});
    s.end_vertex.assign(2 * s.edges, -1);
    s.end_position.assign(2 * s.edges, -1);
    for (int c = 0; c < d.components(); ++c) {
        int len = static_cast<int>(d.circles[c].size());
        for (int p = 0; p < len; ++p) {
            const auto& ep = d.circles[c][p];
            int out_end = 2 * s.edge_id(c, p);
            int in_end = 2 * s.edge_id(c, (p + len - 1) % len) + 1;
            int in_pos = ep.head ? 1 : 0;
            int out_pos = ep.head ? 3 : 2;
            s.rotation[ep.arrow][in_pos] = in_end;
            s.rotation[ep.arrow][out_pos] = out_end;
            s.end_vertex[in_end] = s.end_vertex[out_end] = ep.arrow;
            s.end_position[in_end] = in_pos;
            s.end_position[out_end] = out_pos;
        }
    }

    // faces: from an outgoing end, cross the edge, then turn to the next end clockwise
    std::vector<char> used(2 * s.edges, 0);
    for (int start = 0; start < 2 * s.edges; ++start) {
        if (used[start]) continue;
        std::vector<int> face;
        BitVec fe(s.edges);
        int dart = start;
        while (!used[dart]) {
            used[dart] = 1;
            face.push_back(dart);
            fe.flip(dart / 2);
            int arrive = dart ^ 1;
            int v = s.end_vertex[arrive];
            int pos = s.end_position[arrive];
            dart = s.rotation[v][(pos + 3) % 4];
        }
        s.face_darts.push_back(std::move(face));
        s.face_edges.push_back(std::move(fe));
    }
    s.faces = static_cast<int>(s.face_darts.size());

    std::vector<int> parent(s.vertices);
    std::iota(parent.begin(), parent.end(), 0);
    for (int e = 0; e < s.edges; ++e) parent[find(parent, s.end_vertex[2 * e])] = find(parent, s.end_vertex[2 * e + 1]);
    for (int v = 0; v < s.vertices; ++v)
        if (find(parent, v) == v) ++s.graph_components;

    int chi = s.vertices - s.edges + s.faces;
    int twice_genus = 2 * s.graph_components - chi;
    if (twice_genus < 0 || twice_genus % 2) throw std::logic_error("Euler characteristic check failed");
    s.genus = twice_genus / 2;

    for (const auto& fe : s.face_edges) s.boundaries.insert(fe);
    if (s.boundaries.rank() != s.faces - s.graph_components) throw std::logic_error("face boundary rank check failed");

    // cycle basis from a spanning forest (lowest-numbered edges first)
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<BitVec> cycles;
    std::vector<std::vector<std::pair<int, int>>> tree(s.vertices);
    std::vector<int> nontree;
    for (int e = 0; e < s.edges; ++e) {
        int a = s.end_vertex[2 * e], b = s.end_vertex[2 * e + 1];
        int ra = find(parent, a), rb = find(parent, b);
        if (ra == rb) { nontree.push_back(e); continue; }
        parent[ra] = rb;
        tree[a].push_back({b, e});
        tree[b].push_back({a, e});
    }
    auto tree_path = [&](int from, int to) {
        std::vector<int> prev(s.vertices, -2), via(s.vertices, -1);
        std::vector<int> stack{from};
        prev[from] = -1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [w, e] : tree[v])
                if (prev[w] == -2) { prev[w] = v; via[w] = e; stack.push_back(w); }
        }
        BitVec path(s.edges);
        for (int v = to; v != from; v = prev[v]) path.flip(via[v]);
        return path;
    };
    for (int e : nontree) {
        BitVec cyc = tree_path(s.end_vertex[2 * e + 1], s.end_vertex[2 * e]);
        cyc.flip(e);
        cycles.push_back(std::move(cyc));
    }

    Echelon probe = s.boundaries;
    for (auto& c : cycles)
        if (probe.insert(c)) s.basis.push_back(c);
    if (s.homology_dim() != 2 * s.genus) throw std::logic_error("homology dimension differs from 2g");

    int dim = s.homology_dim();
    for (const auto& fe : s.face_edges) s.with_basis.insert(fe, BitVec(dim));
    for (int i = 0; i < dim; ++i) {
        BitVec tag(dim);
        tag.set(i);
        s.with_basis.insert(s.basis[i], tag);
    }
    return s;
}

Walk core_walk(const GaussDiagram& d, int circle) {
    int offset = 0;
    for (int c = 0; c < circle; ++c) offset += static_cast<int>(d.circles[c].size());
    Walk w;
    for (int p = 0; p < static_cast<int>(d.circles.at(circle).size()); ++p) w.push_back({offset + p, true});
    return w;
}

Walk arrow_loop(const GaussDiagram& d, int arrow) {
    Slot t = d.tails().at(arrow), h = d.heads().at(arrow);
    if (t.circle != h.circle) throw std::invalid_argument("arrow loop needs both ends on one circle");
    int offset = 0;
    for (int c = 0; c < t.circle; ++c) offset += static_cast<int>(d.circles[c].size());
    int len = static_cast<int>(d.circles[t.circle].size());
    Walk w;
    for (int p = t.pos; p != h.pos; p = (p + 1) % len) w.push_back({offset + p, true});
    return w;
}

BitVec walk_edges(const CarterSurface& s, const Walk& w) {
    BitVec v(s.edges);
    for (auto [e, fwd] : w) v.flip(e);
    return v;
}

namespace {

int arrive_end(const std::pair<int, bool>& step) { return 2 * step.first + (step.second ? 1 : 0); }
int leave_end(const std::pair<int, bool>& step) { return 2 * step.first + (step.second ? 0 : 1); }

}  // namespace

void check_closed(const CarterSurface& s, const Walk& w) {
    for (size_t i = 0; i < w.size(); ++i) {
        if (w[i].first < 0 || w[i].first >= s.edges) throw std::invalid_argument("walk uses unknown edge");
        const auto& nxt = w[(i + 1) % w.size()];
        if (s.end_vertex[arrive_end(w[i])] != s.end_vertex[leave_end(nxt)]) throw std::invalid_argument("walk is not closed");
    }
}

HomClass edge_set_class(const CarterSurface& s, const BitVec& edges) {
    BitVec v = edges, tag(s.homology_dim());
    s.with_basis.reduce(v, tag);
    if (v.any()) throw std::invalid_argument("edge set is not a cycle");
    return tag;
}

HomClass loop_class(const CarterSurface& s, const Walk& w) {
    check_closed(s, w);
    return edge_set_class(s, walk_edges(s, w));
}

int homology_rank(const CarterSurface& s, const std::vector<BitVec>& cycles) {
    Echelon e = s.boundaries;
    int r = 0;
    for (const auto& c : cycles)
        if (e.insert(c)) ++r;
    return r;
}

bool null_homologous(const CarterSurface& s, const BitVec& edges) {
    BitVec v = edges;
    s.boundaries.reduce(v);
    return !v.any();
}

// Push a to its left. At a corner entering by end i and leaving by end o, the
// pushed copy sweeps clockwise past the ends lying counterclockwise-between o
// and i; each such end met outward by b counts +1, inward -1.
long long intersection_pairing(const CarterSurface& s, const Walk& a, const Walk& b) {
    check_closed(s, a);
    check_closed(s, b);
    std::vector<int> weight(2 * s.edges, 0);
    for (const auto& step : b) {
        weight[leave_end(step)] += 1;
        weight[arrive_end(step)] -= 1;
    }
    long long total = 0;
    for (size_t k = 0; k < a.size(); ++k) {
        int in = arrive_end(a[k]);
        int out = leave_end(a[(k + 1) % a.size()]);
        int v = s.end_vertex[in];
        int pi = s.end_position[in], po = s.end_position[out];
        for (int p = (po + 1) % 4; p != pi; p = (p + 1) % 4) total += weight[s.rotation[v][p]];
    }
    return total;
}

}  // namespace flatknot

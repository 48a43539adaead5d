#include "flatknot/slice.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "flatknot/based_matrix.hpp"

namespace flatknot {

GaussDiagram saddle(const GaussDiagram& d, Gap p, Gap q) {
    if (p == q) throw std::invalid_argument("saddle needs two distinct gaps");
    for (Gap g : {p, q}) {
        if (g.circle < 0 || g.circle >= d.components()) throw std::invalid_argument("saddle gap on unknown circle");
        int len = static_cast<int>(d.circles[g.circle].size());
        if (g.pos < 0 || g.pos > std::max(0, len - 1)) throw std::invalid_argument("saddle gap out of range");
    }
    GaussDiagram out = d;
    if (p.circle == q.circle) {
        if (q.pos < p.pos) std::swap(p, q);
        const auto& c = d.circles[p.circle];
        std::vector<Endpoint> inner(c.begin() + p.pos, c.begin() + q.pos);
        std::vector<Endpoint> outer(c.begin() + q.pos, c.end());
        outer.insert(outer.end(), c.begin(), c.begin() + p.pos);
        out.circles[p.circle] = std::move(outer);
        out.circles.push_back(std::move(inner));
        return out;
    }
    if (q.circle < p.circle) std::swap(p, q);
    const auto& a = d.circles[p.circle];
    const auto& b = d.circles[q.circle];
    std::vector<Endpoint> merged(a.begin() + p.pos, a.end());
    merged.insert(merged.end(), a.begin(), a.begin() + p.pos);
    merged.insert(merged.end(), b.begin() + q.pos, b.end());
    merged.insert(merged.end(), b.begin(), b.begin() + q.pos);
    out.circles[p.circle] = std::move(merged);
    out.circles.erase(out.circles.begin() + q.circle);
    return out;
}

int SliceMovie::saddles() const {
    return static_cast<int>(std::count_if(steps.begin(), steps.end(), [](const MovieStep& s) { return s.kind == MovieStep::saddle; }));
}
int SliceMovie::births() const {
    return static_cast<int>(std::count_if(steps.begin(), steps.end(), [](const MovieStep& s) { return s.kind == MovieStep::birth; }));
}
int SliceMovie::deaths() const {
    return static_cast<int>(std::count_if(steps.begin(), steps.end(), [](const MovieStep& s) { return s.kind == MovieStep::death; }));
}

namespace {

int find(std::vector<int>& p, int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
}

}  // namespace

GaussDiagram replay(const SliceMovie& m) {
    GaussDiagram d = m.start;
    d.validate();
    // every circle carries the id of the surface piece it bounds
    std::vector<int> piece(d.components());
    std::iota(piece.begin(), piece.end(), 0);
    std::vector<int> uf(piece.size());
    std::iota(uf.begin(), uf.end(), 0);
    for (size_t i = 0; i < m.steps.size(); ++i) {
        const auto& s = m.steps[i];
        auto fail = [&](const std::string& why) {
            throw std::invalid_argument("movie step " + std::to_string(i + 1) + ": " + why);
        };
        switch (s.kind) {
            case MovieStep::reidemeister:
                try {
                    d = apply_move(d, s.move);
                } catch (const std::exception& e) {
                    fail(e.what());
                }
                break;
            case MovieStep::saddle: {
                bool split = s.p.circle == s.q.circle;
                try {
                    d = saddle(d, s.p, s.q);
                } catch (const std::exception& e) {
                    fail(e.what());
                }
                if (split) piece.push_back(piece[s.p.circle]);
                else {
                    int a = std::min(s.p.circle, s.q.circle), b = std::max(s.p.circle, s.q.circle);
                    uf[find(uf, piece[b])] = find(uf, piece[a]);
                    piece.erase(piece.begin() + b);
                }
                break;
            }
            case MovieStep::birth:
                d.circles.emplace_back();
                piece.push_back(static_cast<int>(uf.size()));
                uf.push_back(static_cast<int>(uf.size()));
                break;
            case MovieStep::death:
                if (s.circle < 0 || s.circle >= d.components()) fail("death on unknown circle");
                if (!d.circles[s.circle].empty()) fail("death on a circle with arrow ends");
                if (d.components() == 1) fail("death of the last circle");
                d.circles.erase(d.circles.begin() + s.circle);
                piece.erase(piece.begin() + s.circle);
                break;
        }
    }
    if (d.components() != 1 || d.num_arrows() != 0) throw std::invalid_argument("movie does not end at the trivial knot");
    if (m.saddles() != m.births() + m.deaths()) throw std::invalid_argument("saddle count differs from births plus deaths");
    int root = find(uf, 0);
    for (int i = 0; i < static_cast<int>(uf.size()); ++i)
        if (find(uf, i) != root) throw std::invalid_argument("movie cobordism is not connected");
    return d;
}

namespace {

const char* move_word(MoveKind k) {
    switch (k) {
        case MoveKind::R1_remove: return "R1";
        case MoveKind::R2_remove: return "R2";
        case MoveKind::R3: return "R3";
    }
    return "?";
}

std::string gap_text(Gap g) { return std::to_string(g.circle) + ":" + std::to_string(g.pos); }

Gap parse_gap(const std::string& s) {
    auto c = s.find(':');
    if (c == std::string::npos) throw std::invalid_argument("bad position " + s);
    return {std::stoi(s.substr(0, c)), std::stoi(s.substr(c + 1))};
}

template <class F>
void split_list(const std::string& s, F f) {
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) f(item);
}

}  // namespace

std::string format_movie(const SliceMovie& m) {
    std::string out = "start " + serialize_gauss_code(m.start) + "\n";
    for (const auto& s : m.steps) {
        switch (s.kind) {
            case MovieStep::reidemeister: {
                out += std::string("move ") + move_word(s.move.kind) + " ";
                for (size_t i = 0; i < s.move.arrows.size(); ++i) out += (i ? "," : "") + std::to_string(s.move.arrows[i]);
                out += " ";
                for (size_t i = 0; i < s.move.slots.size(); ++i) out += (i ? "," : "") + gap_text(s.move.slots[i]);
                out += "\n";
                break;
            }
            case MovieStep::saddle: out += "saddle " + gap_text(s.p) + " " + gap_text(s.q) + "\n"; break;
            case MovieStep::birth: out += "birth\n"; break;
            case MovieStep::death: out += "death " + std::to_string(s.circle) + "\n"; break;
        }
    }
    return out;
}

SliceMovie parse_movie(const std::string& text) {
    SliceMovie m;
    std::istringstream in(text);
    std::string line;
    bool started = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word) || word[0] == '#') continue;
        if (word == "start") {
            std::string code;
            std::getline(ls, code);
            code.erase(0, code.find_first_not_of(' '));
            m.start = parse_gauss_code(code);
            started = true;
            continue;
        }
        if (!started) throw std::invalid_argument("movie must begin with a start line");
        MovieStep s;
        if (word == "move") {
            std::string kind, arrows, slots;
            ls >> kind >> arrows >> slots;
            s.kind = MovieStep::reidemeister;
            if (kind == "R1") s.move.kind = MoveKind::R1_remove;
            else if (kind == "R2") s.move.kind = MoveKind::R2_remove;
            else if (kind == "R3") s.move.kind = MoveKind::R3;
            else throw std::invalid_argument("unknown move " + kind);
            split_list(arrows, [&](const std::string& a) { s.move.arrows.push_back(std::stoi(a)); });
            split_list(slots, [&](const std::string& g) { s.move.slots.push_back(parse_gap(g)); });
        } else if (word == "saddle") {
            std::string a, b;
            ls >> a >> b;
            s.kind = MovieStep::saddle;
            s.p = parse_gap(a);
            s.q = parse_gap(b);
        } else if (word == "birth") {
            s.kind = MovieStep::birth;
        } else if (word == "death") {
            s.kind = MovieStep::death;
            if (!(ls >> s.circle)) throw std::invalid_argument("death needs a circle");
        } else {
            throw std::invalid_argument("unknown movie step " + word);
        }
        m.steps.push_back(s);
    }
    if (!started) throw std::invalid_argument("empty movie");
    return m;
}

std::string slice_kind_name(SliceStatus::Kind k) {
    switch (k) {
        case SliceStatus::slice: return "slice";
        case SliceStatus::not_slice: return "not_slice";
        case SliceStatus::unknown: return "unknown";
    }
    return "?";
}

SliceStatus slice_obstructions(const GaussDiagram& input, int depth) {
    if (input.components() != 1) throw std::invalid_argument("slice obstructions need a knot diagram");
    GaussDiagram d = reduce_monotone(input);
    SliceStatus st;
    auto u = u_polynomial(d);
    if (!u.empty()) {
        st.kind = SliceStatus::not_slice;
        st.reason = "u-polynomial " + format_u_polynomial(u) + " is nonzero";
        return st;
    }
    int ga = algebraic_genus(based_matrix(d));
    if (ga > 0) {
        st.kind = SliceStatus::not_slice;
        st.reason = "algebraic genus " + std::to_string(ga) + " is positive";
        return st;
    }
    if (depth > 0) {
        int n = d.num_arrows();
        for (int r = 2; r <= n; ++r) {
            GaussDiagram c = covering(d, r);
            if (c.num_arrows() == n) continue;
            SliceStatus sub = slice_obstructions(c, depth - 1);
            if (sub.kind == SliceStatus::not_slice) {
                st.kind = SliceStatus::not_slice;
                st.reason = std::to_string(r) + "-covering " + serialize_gauss_code(reduce_monotone(c)) + " is not slice: " + sub.reason;
                return st;
            }
        }
    }
    return st;
}

namespace {

struct Node {
    GaussDiagram d;
    int parent;
    std::vector<MovieStep> steps;  // from the parent's diagram to d
    int saddles;
};

// Reduce, then drop crossing-free circles while more than one circle remains.
GaussDiagram settle(const GaussDiagram& d, std::vector<MovieStep>& steps) {
    std::vector<ReduceStep> trace;
    GaussDiagram r = reduce_monotone(d, &trace);
    for (auto& t : trace) steps.push_back({MovieStep::reidemeister, t.site, {}, {}, 0});
    for (int c = r.components() - 1; c >= 0 && r.components() > 1; --c) {
        if (!r.circles[c].empty()) continue;
        r.circles.erase(r.circles.begin() + c);
        steps.push_back({MovieStep::death, {}, {}, {}, c});
    }
    return r;
}

bool trivial(const GaussDiagram& d) { return d.components() == 1 && d.num_arrows() == 0; }

}  // namespace

SliceStatus slice_search(const GaussDiagram& input, const SliceBudget& budget) {
    if (input.components() != 1) throw std::invalid_argument("slice search needs a knot diagram");
    std::vector<Node> nodes;
    std::vector<MovieStep> first;
    GaussDiagram start = settle(input, first);
    nodes.push_back({start, -1, first, 0});

    auto movie_to = [&](int k) {
        std::vector<int> chain;
        for (int i = k; i >= 0; i = nodes[i].parent) chain.push_back(i);
        SliceMovie m;
        m.start = input;
        for (auto it = chain.rbegin(); it != chain.rend(); ++it)
            m.steps.insert(m.steps.end(), nodes[*it].steps.begin(), nodes[*it].steps.end());
        SliceStatus st;
        st.kind = SliceStatus::slice;
        st.movie = m;
        st.reason = m.ribbon() ? "ribbon movie" : "slice movie";
        return st;
    };
    if (trivial(start)) return movie_to(0);

    // fewest crossings first, then fewest circles, then fewest saddles
    using Entry = std::tuple<int, int, int, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    open.push({start.num_arrows(), start.components(), 0, 0});
    std::unordered_set<std::string> seen{raw_code(normalize_labels(start))};
    while (!open.empty()) {
        int k = std::get<3>(open.top());
        open.pop();
        if (nodes[k].saddles >= budget.max_saddles) continue;
        GaussDiagram cur = nodes[k].d;
        for (int c = 0; c < cur.components(); ++c) {
            int len = static_cast<int>(cur.circles[c].size());
            for (int p = 0; p < len; ++p)
                for (int q = p + 1; q < len; ++q) {
                    std::vector<MovieStep> steps{{MovieStep::saddle, {}, {c, p}, {c, q}, 0}};
                    GaussDiagram next = settle(saddle(cur, {c, p}, {c, q}), steps);
                    if (!seen.insert(raw_code(normalize_labels(next))).second) continue;
                    nodes.push_back({next, k, std::move(steps), nodes[k].saddles + 1});
                    int id = static_cast<int>(nodes.size()) - 1;
                    if (trivial(next)) return movie_to(id);
                    if (nodes.size() >= budget.max_states) return {};
                    open.push({next.num_arrows(), next.components(), nodes[id].saddles, id});
                }
        }
    }
    return {};
}

SliceStatus slice_status(const GaussDiagram& d, int depth, const SliceBudget& budget) {
    SliceStatus st = slice_obstructions(d, depth);
    if (st.kind == SliceStatus::not_slice) return st;
    return slice_search(d, budget);
}

bool strongly_ribbon_check(const GaussDiagram& d) {
    if (d.components() != 1) throw std::invalid_argument("strongly ribbon check needs a knot diagram");
    GaussDiagram r = reduce_monotone(d);
    for (const auto& m : r3_orbit(r))
        if (canonical_rotation(symmetry_transform(m, Symmetry::reverse_mirror)) == m) return true;
    return false;
}

}  // namespace flatknot

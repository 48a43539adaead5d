#include "flatknot/moves.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace flatknot {

namespace {

int circle_len(const GaussDiagram& d, int c) { return static_cast<int>(d.circles[c].size()); }

Slot next_slot(const GaussDiagram& d, Slot s) { return {s.circle, (s.pos + 1) % circle_len(d, s.circle)}; }

const Endpoint& at(const GaussDiagram& d, Slot s) { return d.circles.at(s.circle).at(s.pos); }

bool adjacent(const GaussDiagram& d, Slot a, Slot b) {
    if (a.circle != b.circle || a == b) return false;
    return next_slot(d, a) == b || next_slot(d, b) == a;
}

// First slots of all adjacent pairs; a 2-slot circle has one pair.
std::vector<Slot> adjacent_pairs(const GaussDiagram& d) {
    std::vector<Slot> out;
    for (int c = 0; c < d.components(); ++c) {
        int len = circle_len(d, c);
        if (len < 2) continue;
        int count = len == 2 ? 1 : len;
        for (int p = 0; p < count; ++p) out.push_back({c, p});
    }
    return out;
}

int etype(const Endpoint& e) { return e.head ? -1 : 1; }

bool slot_less(Slot a, Slot b) { return a.circle != b.circle ? a.circle < b.circle : a.pos < b.pos; }

}  // namespace

std::string describe(const MoveSite& s) {
    std::string k = s.kind == MoveKind::R1_remove ? "R1" : s.kind == MoveKind::R2_remove ? "R2" : "R3";
    k += " arrows";
    for (int a : s.arrows) k += " " + std::to_string(a + 1);
    k += " at";
    for (auto sl : s.slots) k += " " + std::to_string(sl.circle) + ":" + std::to_string(sl.pos);
    return k;
}

std::string raw_code(const GaussDiagram& d) {
    std::string s;
    s.reserve(d.num_slots() + d.components());
    for (const auto& c : d.circles) {
        for (const auto& e : c) s += static_cast<char>(e.arrow * 2 + (e.head ? 1 : 0));
        s += static_cast<char>(-1);
    }
    return s;
}

std::vector<MoveSite> r2_candidates(const GaussDiagram& d) {
    std::vector<MoveSite> out;
    auto t = d.tails(), h = d.heads();
    for (Slot a : adjacent_pairs(d)) {
        Slot a2 = next_slot(d, a);
        const auto& x = at(d, a);
        const auto& y = at(d, a2);
        if (x.arrow == y.arrow) continue;
        Slot ox = x.head ? t[x.arrow] : h[x.arrow];
        Slot oy = y.head ? t[y.arrow] : h[y.arrow];
        if (!adjacent(d, ox, oy)) continue;
        Slot b = next_slot(d, ox) == oy ? ox : oy;
        // skip the mirror-image listing of the same decomposition
        if (slot_less(b, a)) continue;
        out.push_back({MoveKind::R2_remove, {std::min(x.arrow, y.arrow), std::max(x.arrow, y.arrow)}, {a, b}});
    }
    return out;
}

bool r2_pattern_legal(const GaussDiagram& d, const MoveSite& s) {
    if (s.kind != MoveKind::R2_remove || s.slots.size() != 2) return false;
    // one tail and one head in each pair: the two arrows point opposite ways
    Slot a = s.slots[0];
    return at(d, a).head != at(d, next_slot(d, a)).head;
}

std::vector<MoveSite> r3_candidates(const GaussDiagram& d) {
    std::vector<Slot> pairs;
    for (Slot p : adjacent_pairs(d))
        if (at(d, p).arrow != at(d, next_slot(d, p)).arrow) pairs.push_back(p);
    std::map<std::pair<int, int>, std::vector<int>> by_arrows;
    auto arrows_of = [&](Slot p) {
        int x = at(d, p).arrow, y = at(d, next_slot(d, p)).arrow;
        return std::make_pair(std::min(x, y), std::max(x, y));
    };
    for (int i = 0; i < static_cast<int>(pairs.size()); ++i) by_arrows[arrows_of(pairs[i])].push_back(i);
    auto disjoint = [&](Slot p, Slot q) {
        Slot p2 = next_slot(d, p), q2 = next_slot(d, q);
        return !(p == q || p == q2 || p2 == q || p2 == q2);
    };
    std::set<std::vector<std::pair<int, int>>> seen;
    std::vector<MoveSite> out;
    for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
        auto [a, b] = arrows_of(pairs[i]);
        for (int j = i + 1; j < static_cast<int>(pairs.size()); ++j) {
            auto [c1, c2] = arrows_of(pairs[j]);
            // second pair shares exactly one arrow with the first
            int shared = -1, other = -1;
            if (c1 == a || c1 == b) { shared = c1; other = c2; }
            else if (c2 == a || c2 == b) { shared = c2; other = c1; }
            if (shared < 0 || other == a || other == b) continue;
            if (!disjoint(pairs[i], pairs[j])) continue;
            int lone = shared == a ? b : a;
            auto it = by_arrows.find({std::min(lone, other), std::max(lone, other)});
            if (it == by_arrows.end()) continue;
            for (int k : it->second) {
                if (k == i || k == j) continue;
                if (!disjoint(pairs[k], pairs[i]) || !disjoint(pairs[k], pairs[j])) continue;
                std::vector<Slot> sl{pairs[i], pairs[j], pairs[k]};
                std::sort(sl.begin(), sl.end(), slot_less);
                std::vector<std::pair<int, int>> key;
                for (auto s : sl) key.push_back({s.circle, s.pos});
                if (!seen.insert(key).second) continue;
                std::vector<int> arr{a, b, other};
                std::sort(arr.begin(), arr.end());
                out.push_back({MoveKind::R3, arr, sl});
            }
        }
    }
    return out;
}

bool r3_pattern_legal(const GaussDiagram& d, const MoveSite& s) {
    if (s.kind != MoveKind::R3 || s.slots.size() != 3) return false;
    std::map<int, int> delta;
    for (Slot p : s.slots) {
        const auto& x = at(d, p);
        const auto& y = at(d, next_slot(d, p));
        delta[x.arrow] += x.head ? etype(y) : -etype(y);
        delta[y.arrow] += y.head ? -etype(x) : etype(x);
    }
    if (delta.size() != 3) return false;
    for (auto [a, v] : delta)
        if (v) return false;
    return true;
}

GaussDiagram swap_pairs(const GaussDiagram& d, const std::vector<Slot>& firsts) {
    GaussDiagram out = d;
    for (Slot p : firsts) {
        Slot q = next_slot(d, p);
        std::swap(out.circles[p.circle][p.pos], out.circles[q.circle][q.pos]);
    }
    return out;
}

std::vector<MoveSite> find_removals(const GaussDiagram& d) {
    std::vector<MoveSite> out;
    auto t = d.tails(), h = d.heads();
    for (int e = 0; e < d.num_arrows(); ++e)
        if (adjacent(d, t[e], h[e])) out.push_back({MoveKind::R1_remove, {e}, {t[e], h[e]}});
    std::set<std::vector<int>> seen;
    for (auto& s : r2_candidates(d))
        if (r2_pattern_legal(d, s) && seen.insert(s.arrows).second) out.push_back(s);
    return out;
}

std::vector<MoveSite> find_r3(const GaussDiagram& d) {
    std::vector<MoveSite> out;
    for (auto& s : r3_candidates(d))
        if (r3_pattern_legal(d, s)) out.push_back(s);
    return out;
}

std::vector<MoveSite> find_moves(const GaussDiagram& d) {
    auto out = find_removals(d);
    auto r3 = find_r3(d);
    out.insert(out.end(), r3.begin(), r3.end());
    return out;
}

GaussDiagram apply_move(const GaussDiagram& d, const MoveSite& site) {
    auto stale = [] { return std::invalid_argument("stale move site"); };
    int n = d.num_arrows();
    for (int a : site.arrows)
        if (a < 0 || a >= n) throw stale();
    for (auto s : site.slots)
        if (s.circle < 0 || s.circle >= d.components() || s.pos < 0 || s.pos >= circle_len(d, s.circle)) throw stale();
    switch (site.kind) {
        case MoveKind::R1_remove: {
            if (site.arrows.size() != 1) throw stale();
            auto t = d.tails(), h = d.heads();
            int e = site.arrows[0];
            if (!adjacent(d, t[e], h[e])) throw stale();
            std::vector<bool> drop(n, false);
            drop[e] = true;
            return delete_arrows(d, drop);
        }
        case MoveKind::R2_remove: {
            if (site.arrows.size() != 2 || site.slots.size() != 2) throw stale();
            Slot a = site.slots[0], b = site.slots[1];
            std::set<int> in_a{at(d, a).arrow, at(d, next_slot(d, a)).arrow};
            std::set<int> in_b{at(d, b).arrow, at(d, next_slot(d, b)).arrow};
            std::set<int> want(site.arrows.begin(), site.arrows.end());
            if (in_a != want || in_b != want || want.size() != 2 || !r2_pattern_legal(d, site)) throw stale();
            std::vector<bool> drop(n, false);
            for (int x : want) drop[x] = true;
            return delete_arrows(d, drop);
        }
        case MoveKind::R3: {
            if (site.slots.size() != 3) throw stale();
            std::set<int> arr;
            for (auto s : site.slots) {
                int x = at(d, s).arrow, y = at(d, next_slot(d, s)).arrow;
                if (x == y) throw stale();
                arr.insert(x);
                arr.insert(y);
            }
            if (arr != std::set<int>(site.arrows.begin(), site.arrows.end()) || !r3_pattern_legal(d, site)) throw stale();
            return swap_pairs(d, site.slots);
        }
    }
    throw stale();
}

std::vector<GaussDiagram> r3_closure(const GaussDiagram& d, size_t limit) {
    std::vector<GaussDiagram> members{d};
    std::unordered_set<std::string> seen{raw_code(d)};
    for (size_t i = 0; i < members.size(); ++i) {
        if (limit && members.size() >= limit) break;
        for (const auto& s : find_r3(members[i])) {
            GaussDiagram m = swap_pairs(members[i], s.slots);
            if (seen.insert(raw_code(m)).second) members.push_back(std::move(m));
        }
    }
    return members;
}

std::vector<GaussDiagram> r3_orbit(const GaussDiagram& d) {
    std::vector<GaussDiagram> out;
    std::set<std::string> seen;
    for (const auto& m : r3_closure(d)) {
        GaussDiagram c = d.components() == 1 ? canonical_rotation(m) : normalize_labels(m);
        if (seen.insert(raw_code(c)).second) out.push_back(std::move(c));
    }
    return out;
}

GaussDiagram reduce_monotone(const GaussDiagram& input, std::vector<ReduceStep>* trace) {
    GaussDiagram d = input;
    for (;;) {
        auto rem = find_removals(d);
        if (!rem.empty()) {
            if (trace) trace->push_back({d, rem[0]});
            d = apply_move(d, rem[0]);
            continue;
        }
        // breadth-first search of the R3 closure for a member with a removal
        std::vector<GaussDiagram> members{d};
        std::vector<std::pair<int, MoveSite>> parent{{-1, {}}};
        std::unordered_map<std::string, int> seen{{raw_code(d), 0}};
        int found = -1;
        MoveSite removal;
        for (size_t i = 0; i < members.size() && found < 0; ++i) {
            for (const auto& s : find_r3(members[i])) {
                GaussDiagram m = swap_pairs(members[i], s.slots);
                auto [it, fresh] = seen.try_emplace(raw_code(m), static_cast<int>(members.size()));
                if (!fresh) continue;
                auto r = find_removals(m);
                members.push_back(std::move(m));
                parent.push_back({static_cast<int>(i), s});
                if (!r.empty()) {
                    found = static_cast<int>(members.size()) - 1;
                    removal = r[0];
                    break;
                }
            }
        }
        if (found < 0) return d;
        if (trace) {
            std::vector<int> path;
            for (int k = found; k > 0; k = parent[k].first) path.push_back(k);
            std::reverse(path.begin(), path.end());
            for (int k : path) trace->push_back({members[parent[k].first], parent[k].second});
            trace->push_back({members[found], removal});
        }
        d = apply_move(members[found], removal);
    }
}

CanonicalKey orbit_key(const GaussDiagram& minimal) {
    if (minimal.components() != 1) throw std::invalid_argument("canonical key needs a single-component diagram");
    CanonicalKey best;
    bool first = true;
    for (const auto& m : r3_closure(minimal)) {
        auto k = ou_matching(m);
        if (first || k < best) { best = std::move(k); first = false; }
    }
    return best;
}

CanonicalKey canonical_key(const GaussDiagram& d) {
    if (d.components() != 1) throw std::invalid_argument("canonical key needs a single-component diagram");
    return orbit_key(reduce_monotone(d));
}

bool same_flat_knot(const GaussDiagram& a, const GaussDiagram& b) { return canonical_key(a) == canonical_key(b); }

SymmetryType symmetry_type_from(bool r, bool m, bool rm) {
    if (r && m && rm) return SymmetryType::fully_achiral;
    if (r && !m && !rm) return SymmetryType::reversible;
    if (!r && m && !rm) return SymmetryType::plus_achiral;
    if (!r && !m && rm) return SymmetryType::minus_achiral;
    if (!r && !m && !rm) return SymmetryType::chiral;
    throw std::logic_error("inconsistent symmetry comparisons");
}

SymmetryType symmetry_type(const GaussDiagram& d) {
    auto k = canonical_key(d);
    auto kr = canonical_key(symmetry_transform(d, Symmetry::reverse));
    auto km = canonical_key(symmetry_transform(d, Symmetry::mirror));
    auto krm = canonical_key(symmetry_transform(d, Symmetry::reverse_mirror));
    return symmetry_type_from(k == kr, k == km, k == krm);
}

std::string symmetry_name(SymmetryType t) {
    switch (t) {
        case SymmetryType::chiral: return "chiral";
        case SymmetryType::reversible: return "reversible";
        case SymmetryType::plus_achiral: return "plus_achiral";
        case SymmetryType::minus_achiral: return "minus_achiral";
        case SymmetryType::fully_achiral: return "fully_achiral";
    }
    return "?";
}

char symmetry_letter(SymmetryType t) {
    switch (t) {
        case SymmetryType::chiral: return 'c';
        case SymmetryType::reversible: return 'r';
        case SymmetryType::plus_achiral: return '+';
        case SymmetryType::minus_achiral: return '-';
        case SymmetryType::fully_achiral: return 'a';
    }
    return '?';
}

SymmetryType parse_symmetry_name(const std::string& s) {
    for (auto t : {SymmetryType::chiral, SymmetryType::reversible, SymmetryType::plus_achiral,
                   SymmetryType::minus_achiral, SymmetryType::fully_achiral})
        if (s == symmetry_name(t) || (s.size() == 1 && s[0] == symmetry_letter(t))) return t;
    throw std::invalid_argument("unknown symmetry type " + s);
}

}  // namespace flatknot

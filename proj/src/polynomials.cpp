#include "flatknot/polynomials.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <stdexcept>
#include <unordered_map>

#include "flatknot/checked.hpp"
#include "flatknot/surface.hpp"

namespace flatknot {

// ---------------------------------------------------------------- KPoly

KPoly KPoly::constant(long long c) {
    KPoly p;
    p.add({}, c);
    return p;
}

KPoly KPoly::variable(int index) {
    KPoly p;
    Mono m;
    if (index > 0) {
        m.assign(index, 0);
        m[index - 1] = 1;
    }
    p.add(m, 1);
    return p;
}

void KPoly::add(const Mono& m_in, long long c) {
    if (!c) return;
    Mono m = m_in;
    while (!m.empty() && m.back() == 0) m.pop_back();
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(std::move(m), c);
        return;
    }
    it->second = add_checked(it->second, c);
    if (!it->second) terms_.erase(it);
}

KPoly& KPoly::operator+=(const KPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

KPoly KPoly::operator*(const KPoly& o) const {
    KPoly r;
    for (const auto& [a, ca] : terms_)
        for (const auto& [b, cb] : o.terms_) {
            Mono m(std::max(a.size(), b.size()), 0);
            for (size_t i = 0; i < a.size(); ++i) m[i] += a[i];
            for (size_t i = 0; i < b.size(); ++i) m[i] += b[i];
            r.add(m, mul_checked(ca, cb));
        }
    return r;
}

KPoly KPoly::scaled(long long c) const {
    KPoly r;
    for (const auto& [m, x] : terms_) r.add(m, mul_checked(x, c));
    return r;
}

long long KPoly::constant_term() const {
    auto it = terms_.find({});
    return it == terms_.end() ? 0 : it->second;
}

long long KPoly::eval_all_ones() const {
    long long s = 0;
    for (const auto& [m, c] : terms_) s = add_checked(s, c);
    return s;
}

namespace {

struct Factor {
    std::string name;
    int exp;
};
struct Term {
    long long coef;
    std::vector<Factor> factors;
};

std::string format_terms(const std::vector<Term>& terms) {
    if (terms.empty()) return "0";
    std::string s;
    for (const auto& t : terms) {
        long long a = t.coef < 0 ? -t.coef : t.coef;
        if (s.empty()) s += t.coef < 0 ? "-" : "";
        else s += t.coef < 0 ? " - " : " + ";
        bool first = true;
        if (a != 1 || t.factors.empty()) {
            s += std::to_string(a);
            first = false;
        }
        for (const auto& f : t.factors) {
            if (!first) s += "*";
            first = false;
            s += f.name;
            if (f.exp > 1) s += "^" + std::to_string(f.exp);
        }
    }
    return s;
}

std::vector<Term> parse_terms(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty polynomial");
    std::vector<Term> out;
    if (s == "0") return out;
    size_t i = 0;
    auto number = [&](long long& v) {
        size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) return false;
        v = std::stoll(s.substr(i, j - i));
        i = j;
        return true;
    };
    while (i < s.size()) {
        Term t{1, {}};
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') t.coef = -1;
            ++i;
        } else if (!out.empty()) {
            throw std::invalid_argument("expected sign in polynomial: " + text);
        }
        long long c;
        bool have_coef = number(c);
        if (have_coef) t.coef *= c;
        bool need_factor = !have_coef;
        while (i < s.size() && s[i] != '+' && s[i] != '-') {
            if (!need_factor) {
                if (s[i] != '*') throw std::invalid_argument("expected '*' in polynomial: " + text);
                ++i;
            }
            size_t j = i;
            if (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j]))) ++j;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j == i) throw std::invalid_argument("bad factor in polynomial: " + text);
            Factor f{s.substr(i, j - i), 1};
            i = j;
            if (i < s.size() && s[i] == '^') {
                ++i;
                long long e;
                if (!number(e)) throw std::invalid_argument("bad exponent in polynomial: " + text);
                f.exp = static_cast<int>(e);
            }
            t.factors.push_back(f);
            need_factor = false;
        }
        if (need_factor) throw std::invalid_argument("dangling sign in polynomial: " + text);
        out.push_back(t);
    }
    return out;
}

}  // namespace

std::string KPoly::str() const {
    std::vector<Term> terms;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        Term t{it->second, {}};
        for (size_t i = 0; i < it->first.size(); ++i)
            if (it->first[i]) t.factors.push_back({"K" + std::to_string(i + 1), it->first[i]});
        terms.push_back(t);
    }
    return format_terms(terms);
}

KPoly KPoly::parse(const std::string& text) {
    KPoly p;
    for (const auto& t : parse_terms(text)) {
        Mono m;
        for (const auto& f : t.factors) {
            if (f.name.size() < 2 || f.name[0] != 'K') throw std::invalid_argument("unknown variable " + f.name);
            int idx = std::stoi(f.name.substr(1));
            if (idx == 0) continue;
            if (static_cast<int>(m.size()) < idx) m.resize(idx, 0);
            m[idx - 1] += f.exp;
        }
        p.add(m, t.coef);
    }
    return p;
}

std::string format_wz(const WZPoly& p) {
    std::vector<Term> terms;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        if (!it->second) continue;
        Term t{it->second, {}};
        auto [zd, wd] = it->first;
        if (wd) t.factors.push_back({"w", wd});
        if (zd) t.factors.push_back({"z", zd});
        terms.push_back(t);
    }
    return format_terms(terms);
}

WZPoly parse_wz(const std::string& text) {
    WZPoly p;
    for (const auto& t : parse_terms(text)) {
        int zd = 0, wd = 0;
        for (const auto& f : t.factors) {
            if (f.name == "z") zd += f.exp;
            else if (f.name == "w") wd += f.exp;
            else throw std::invalid_argument("unknown variable " + f.name);
        }
        long long& c = p[{zd, wd}];
        c = add_checked(c, t.coef);
        if (!c) p.erase({zd, wd});
    }
    return p;
}

IntPoly parse_int_poly(const std::string& text, char var) {
    IntPoly p;
    for (const auto& t : parse_terms(text)) {
        int d = 0;
        for (const auto& f : t.factors) {
            if (f.name != std::string(1, var)) throw std::invalid_argument("unknown variable " + f.name);
            d += f.exp;
        }
        if (static_cast<int>(p.size()) <= d) p.resize(d + 1, 0);
        p[d] = add_checked(p[d], t.coef);
    }
    return poly_trim(p);
}

IntPoly wz_at_w1(const WZPoly& p) {
    IntPoly r;
    for (const auto& [k, c] : p) {
        if (static_cast<int>(r.size()) <= k.first) r.resize(k.first + 1, 0);
        r[k.first] = add_checked(r[k.first], c);
    }
    return poly_trim(r);
}

long long int_poly_eval(const IntPoly& p, long long x) {
    long long r = 0;
    for (size_t k = p.size(); k-- > 0;) r = add_checked(mul_checked(r, x), p[k]);
    return r;
}

// ---------------------------------------------------------------- smoothings
//
// End positions at a vertex: 0 in-tail, 1 in-head, 2 out-tail, 3 out-head.
// Oriented smoothing joins 0-3 and 1-2; disoriented joins 0-1 and 2-3.
// Passing a disoriented smoothing arriving by end p adds +1 for p in {0,3}
// and -1 for p in {1,2}; the reverse passage adds the negative.

namespace {

constexpr int kPartner[2][4] = {{3, 2, 1, 0}, {1, 0, 3, 2}};
constexpr int kCusp[4] = {1, -1, -1, 1};

long long pow_minus2(int k) {
    long long r = 1;
    for (int i = 0; i < k; ++i) r = mul_checked(r, -2);
    return r;
}

int cusp_index(int total) {
    if (total % 2) throw std::logic_error("odd cusp total on a state loop");
    return (total < 0 ? -total : total) / 2;
}

}  // namespace

std::vector<StateLoop> state_loops(const GaussDiagram& d, unsigned long long mask) {
    CarterSurface s = carter_surface(d);
    std::vector<StateLoop> loops;
    std::vector<char> used(s.edges, 0);
    for (int e = 0; e < s.edges; ++e) {
        if (used[e]) continue;
        StateLoop loop{BitVec(s.edges), 0};
        int start = 2 * e, leave = start;
        do {
            used[leave / 2] = 1;
            loop.edges.flip(leave / 2);
            int arrive = leave ^ 1;
            int v = s.end_vertex[arrive], p = s.end_position[arrive];
            int bit = static_cast<int>((mask >> v) & 1u);
            if (bit) loop.cusps += kCusp[p];
            leave = s.rotation[v][kPartner[bit][p]];
        } while (leave != start);
        loops.push_back(std::move(loop));
    }
    for (int c = 0; c < s.free_circles; ++c) loops.push_back({BitVec(s.edges), 0});
    return loops;
}

KPoly arrow_polynomial_states(const GaussDiagram& d, bool normalize) {
    int n = d.num_arrows();
    if (n > 40) throw std::invalid_argument("too many arrows for the state enumeration");
    KPoly total;
    for (unsigned long long mask = 0; mask < (1ull << n); ++mask) {
        auto loops = state_loops(d, mask);
        KPoly term = KPoly::constant(pow_minus2(static_cast<int>(loops.size()) - 1));
        for (const auto& l : loops) term = term * KPoly::variable(cusp_index(l.cusps));
        total += term;
    }
    return normalize && n % 2 ? total.scaled(-1) : total;
}

// ---------------------------------------------------------------- contraction
//
// Vertices are absorbed one at a time. The frontier is the set of edges with
// exactly one absorbed end; a partial state records, for each frontier edge,
// which frontier edge its strand reaches through the absorbed part and the
// cusp total along the way. Loops closed so far are folded into the value.

namespace {

struct KValue {
    KPoly p;
    static KValue one() { return {KPoly::constant(1)}; }
    // returns false if the configuration should be dropped
    bool close_loop(int idx) {
        p = (p * KPoly::variable(idx)).scaled(-2);
        return true;
    }
    void add(const KValue& o) { p += o.p; }
};

struct ConstValue {
    long long c = 0;
    static ConstValue one() { return {1}; }
    bool close_loop(int idx) {
        if (idx) return false;
        c = mul_checked(c, -2);
        return true;
    }
    void add(const ConstValue& o) { c = add_checked(c, o.c); }
};

struct Link {
    int partner;
    int cusps;
};

std::string encode(const std::vector<Link>& links) {
    std::string key(links.size() * 4, '\0');
    for (size_t i = 0; i < links.size(); ++i) {
        int16_t a = static_cast<int16_t>(links[i].partner), b = static_cast<int16_t>(links[i].cusps);
        std::memcpy(&key[4 * i], &a, 2);
        std::memcpy(&key[4 * i + 2], &b, 2);
    }
    return key;
}

std::vector<Link> decode(const std::string& key) {
    std::vector<Link> links(key.size() / 4);
    for (size_t i = 0; i < links.size(); ++i) {
        int16_t a, b;
        std::memcpy(&a, &key[4 * i], 2);
        std::memcpy(&b, &key[4 * i + 2], 2);
        links[i] = {a, b};
    }
    return links;
}

template <class Value>
Value contract(const GaussDiagram& d) {
    CarterSurface s = carter_surface(d);
    int nv = s.vertices;
    std::vector<char> absorbed(nv, 0);
    std::vector<int> frontier;                 // sorted edge ids
    std::vector<int> frontier_pos(s.edges, -1);  // edge -> index in frontier
    std::unordered_map<std::string, Value> states;
    states.emplace(std::string(), Value::one());

    auto other_vertex = [&](int end) { return s.end_vertex[end ^ 1]; };

    for (int step = 0; step < nv; ++step) {
        // pick the vertex giving the smallest next frontier
        int best = -1, best_size = 0;
        for (int v = 0; v < nv; ++v) {
            if (absorbed[v]) continue;
            int size = static_cast<int>(frontier.size());
            for (int k = 0; k < 4; ++k) {
                int end = s.rotation[v][k];
                int ov = other_vertex(end);
                if (ov == v) continue;
                size += absorbed[ov] ? -1 : 1;
            }
            if (best < 0 || size < best_size) { best = v; best_size = size; }
        }
        int v = best;

        enum Kind { fresh, old, self };
        Kind kind[4];
        int self_mate[4];
        for (int k = 0; k < 4; ++k) {
            int end = s.rotation[v][k];
            int ov = other_vertex(end);
            if (ov == v) { kind[k] = self; self_mate[k] = s.end_position[end ^ 1]; }
            else kind[k] = absorbed[ov] ? old : fresh;
        }
        std::vector<int> next;
        for (int e : frontier)
            if (s.end_vertex[2 * e] != v && s.end_vertex[2 * e + 1] != v) next.push_back(e);
        for (int k = 0; k < 4; ++k)
            if (kind[k] == fresh) next.push_back(s.rotation[v][k] / 2);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        std::vector<int> next_pos(s.edges, -1);
        for (size_t i = 0; i < next.size(); ++i) next_pos[next[i]] = static_cast<int>(i);
        // old frontier index -> end position at v, or -1
        std::vector<int> touches(frontier.size(), -1);
        for (int k = 0; k < 4; ++k)
            if (kind[k] == old) touches[frontier_pos[s.rotation[v][k] / 2]] = k;

        std::unordered_map<std::string, Value> out;
        for (const auto& [key, value] : states) {
            std::vector<Link> links = decode(key);
            for (int bit = 0; bit < 2; ++bit) {
                Value val = value;
                bool keep = true;
                bool arc_used[4] = {false, false, false, false};
                std::vector<Link> nl(next.size(), {-1, 0});

                // Follow the strand that arrives at v by position k. Returns the
                // new-frontier index reached, or -1 if it came back to v by 'stop'.
                auto walk = [&](int k, int& c, int stop) -> int {
                    while (true) {
                        arc_used[k] = arc_used[kPartner[bit][k]] = true;
                        if (bit) c += kCusp[k];
                        int q = kPartner[bit][k];
                        int end = s.rotation[v][q];
                        if (kind[q] == fresh) return next_pos[end / 2];
                        if (kind[q] == self) k = self_mate[q];
                        else {
                            int g = frontier_pos[end / 2];
                            c += links[g].cusps;
                            int h = links[g].partner;
                            if (touches[h] < 0) return next_pos[frontier[h]];
                            k = touches[h];
                        }
                        if (k == stop) return -1;
                    }
                };
                auto pair_up = [&](int a, int b, int c) {
                    nl[a] = {b, c};
                    nl[b] = {a, -c};
                };

                for (size_t t = 0; t < next.size(); ++t) {
                    if (nl[t].partner >= 0) continue;
                    int e = next[t];
                    int c = 0;
                    int fp = frontier_pos[e];
                    if (fp >= 0) {
                        c = links[fp].cusps;
                        int h = links[fp].partner;
                        if (touches[h] < 0) { pair_up(static_cast<int>(t), next_pos[frontier[h]], c); continue; }
                        int u = walk(touches[h], c, -1);
                        pair_up(static_cast<int>(t), u, c);
                    } else {
                        int k = s.end_vertex[2 * e] == v ? s.end_position[2 * e] : s.end_position[2 * e + 1];
                        int u = walk(k, c, -1);
                        pair_up(static_cast<int>(t), u, c);
                    }
                }
                for (int k = 0; k < 4 && keep; ++k) {
                    if (arc_used[k]) continue;
                    int c = 0;
                    walk(k, c, k);
                    keep = val.close_loop(cusp_index(c));
                }
                if (!keep) continue;
                auto [it, inserted] = out.try_emplace(encode(nl), val);
                if (!inserted) it->second.add(val);
            }
        }
        states = std::move(out);
        absorbed[v] = 1;
        for (int e : frontier) frontier_pos[e] = -1;
        frontier = std::move(next);
        for (size_t i = 0; i < frontier.size(); ++i) frontier_pos[frontier[i]] = static_cast<int>(i);
    }

    Value total{};
    for (const auto& [key, value] : states) total.add(value);
    for (int c = 0; c < s.free_circles; ++c) total.close_loop(0);
    return total;
}

}  // namespace

KPoly arrow_polynomial(const GaussDiagram& d, bool normalize) {
    KPoly total = contract<KValue>(d).p;  // every state carries one extra -2
    KPoly r;
    for (const auto& [m, c] : total.terms()) {
        if (c % 2) throw std::logic_error("state sum not divisible by -2");
        r.add(m, c / -2);
    }
    return normalize && d.num_arrows() % 2 ? r.scaled(-1) : r;
}

long long arrow_constant_term(const GaussDiagram& d, bool normalize) {
    long long c = contract<ConstValue>(d).c;
    if (c % 2) throw std::logic_error("state sum not divisible by -2");
    c /= -2;
    return normalize && d.num_arrows() % 2 ? -c : c;
}

// ---------------------------------------------------------------- Jones-Krushkal

JKResult jones_krushkal(const GaussDiagram& d) {
    if (d.components() != 1) throw std::invalid_argument("Jones-Krushkal polynomial needs a knot diagram");
    CarterSurface s = carter_surface(d);
    int n = d.num_arrows();
    if (n > 30) throw std::invalid_argument("too many arrows for the state enumeration");
    JKResult r;
    r.genus = s.genus;
    BitVec core(s.edges);
    for (int e = 0; e < s.edges; ++e) core.flip(e);
    r.core_trivial = !edge_set_class(s, core).any();

    IntPoly j;
    WZPoly jen;
    for (unsigned long long mask = 0; mask < (1ull << n); ++mask) {
        auto loops = state_loops(d, mask);
        Echelon span;
        int rank = 0, nontrivial = 0;
        for (const auto& l : loops) {
            HomClass h = l.edges.size() ? edge_set_class(s, l.edges) : BitVec(s.homology_dim());
            if (h.any()) ++nontrivial;
            if (h.size() && span.insert(h)) ++rank;
        }
        int kernel = static_cast<int>(loops.size()) - rank;
        long long w = pow_minus2(kernel);
        if (n % 2) w = -w;
        if (static_cast<int>(j.size()) <= rank) j.resize(rank + 1, 0);
        j[rank] = add_checked(j[rank], w);
        long long& c = jen[{rank, nontrivial}];
        c = add_checked(c, w);
    }
    for (auto it = jen.begin(); it != jen.end();)
        it = it->second ? std::next(it) : jen.erase(it);
    r.j = poly_trim(j);
    r.j_enhanced = jen;

    if (r.core_trivial) {
        for (long long c : r.j)
            if (c % 2) throw std::logic_error("J not divisible by 2 with trivial core class");
        for (long long c : r.j) r.j_normalized.push_back(c / -2);
        for (const auto& [k, c] : jen) {
            if (c % 2) throw std::logic_error("enhanced J not divisible by 2 with trivial core class");
            r.j_enhanced_normalized[k] = c / -2;
        }
    } else {
        if (!r.j.empty() && r.j[0]) throw std::logic_error("J not divisible by z with nontrivial core class");
        r.j_normalized.assign(r.j.begin() + (r.j.empty() ? 0 : 1), r.j.end());
        for (const auto& [k, c] : jen) {
            if (k.first == 0) throw std::logic_error("enhanced J not divisible by z with nontrivial core class");
            r.j_enhanced_normalized[{k.first - 1, k.second}] = c;
        }
    }
    r.j_normalized = poly_trim(r.j_normalized);
    return r;
}

}  // namespace flatknot

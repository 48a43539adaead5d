#include "flatknot/gauss.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string_view>

namespace flatknot {

int GaussDiagram::num_slots() const {
    int s = 0;
    for (const auto& c : circles) s += static_cast<int>(c.size());
    return s;
}

int GaussDiagram::num_arrows() const { return num_slots() / 2; }

std::vector<Slot> GaussDiagram::tails() const {
    std::vector<Slot> t(num_arrows(), Slot{-1, -1});
    for (int c = 0; c < components(); ++c)
        for (int p = 0; p < static_cast<int>(circles[c].size()); ++p)
            if (!circles[c][p].head) t.at(circles[c][p].arrow) = {c, p};
    return t;
}

std::vector<Slot> GaussDiagram::heads() const {
    std::vector<Slot> h(num_arrows(), Slot{-1, -1});
    for (int c = 0; c < components(); ++c)
        for (int p = 0; p < static_cast<int>(circles[c].size()); ++p)
            if (circles[c][p].head) h.at(circles[c][p].arrow) = {c, p};
    return h;
}

void GaussDiagram::validate() const {
    if (circles.empty()) throw std::invalid_argument("diagram has no skeleton circle");
    if (num_slots() % 2) throw std::invalid_argument("odd number of endpoints");
    int n = num_arrows();
    std::vector<int> seen_tail(n, 0), seen_head(n, 0);
    for (const auto& c : circles)
        for (const auto& e : c) {
            if (e.arrow < 0 || e.arrow >= n) throw std::invalid_argument("arrow id out of range");
            (e.head ? seen_head : seen_tail)[e.arrow]++;
        }
    for (int a = 0; a < n; ++a)
        if (seen_tail[a] != 1 || seen_head[a] != 1)
            throw std::invalid_argument("arrow " + std::to_string(a + 1) + " needs exactly one tail and one head");
}

GaussDiagram unknot() { return GaussDiagram{}; }

GaussDiagram parse_gauss_code(const std::string& text) {
    GaussDiagram d;
    d.circles.assign(1, {});
    std::map<long long, int> label_to_arrow;
    std::map<long long, std::pair<int, int>> counts;  // label -> (#O, #U)
    size_t i = 0;
    while (i < text.size()) {
        char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch))) { ++i; continue; }
        if (ch == ';') { d.circles.emplace_back(); ++i; continue; }
        if (ch != 'O' && ch != 'U' && ch != 'o' && ch != 'u')
            throw std::invalid_argument(std::string("malformed token at '") + ch + "'");
        bool head = (ch == 'U' || ch == 'u');
        size_t j = i + 1;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        if (j == i + 1) throw std::invalid_argument("missing label after " + std::string(1, ch));
        if (j - i - 1 > 9) throw std::invalid_argument("label too long");
        long long label = std::stoll(text.substr(i + 1, j - i - 1));
        if (label <= 0) throw std::invalid_argument("labels must be positive");
        auto [it, fresh] = label_to_arrow.try_emplace(label, static_cast<int>(label_to_arrow.size()));
        (void)fresh;
        auto& cnt = counts[label];
        (head ? cnt.second : cnt.first)++;
        d.circles.back().push_back({it->second, head});
        i = j;
    }
    for (const auto& [label, cnt] : counts) {
        if (cnt.first != 1) throw std::invalid_argument("label " + std::to_string(label) + " needs exactly one O");
        if (cnt.second != 1) throw std::invalid_argument("label " + std::to_string(label) + " needs exactly one U");
    }
    return d;
}

GaussDiagram normalize_labels(const GaussDiagram& d) {
    std::vector<int> relabel(d.num_arrows(), -1);
    int next = 0;
    GaussDiagram out = d;
    for (auto& c : out.circles)
        for (auto& e : c) {
            if (relabel[e.arrow] < 0) relabel[e.arrow] = next++;
            e.arrow = relabel[e.arrow];
        }
    return out;
}

std::string serialize_gauss_code(const GaussDiagram& d) {
    GaussDiagram n = normalize_labels(d);
    std::string out;
    for (int c = 0; c < n.components(); ++c) {
        if (c) out += ';';
        for (const auto& e : n.circles[c]) {
            out += e.head ? 'U' : 'O';
            out += std::to_string(e.arrow + 1);
        }
    }
    return out;
}

GaussDiagram rotate(const GaussDiagram& d, int k, int circle) {
    GaussDiagram out = d;
    auto& c = out.circles.at(circle);
    if (c.empty()) return out;
    int len = static_cast<int>(c.size());
    k = ((k % len) + len) % len;
    std::rotate(c.begin(), c.begin() + k, c.end());
    return out;
}

static void require_knot(const GaussDiagram& d, const char* what) {
    if (d.components() != 1) throw std::invalid_argument(std::string(what) + " needs a single-component diagram");
}

std::string ou_word(const GaussDiagram& d) {
    require_knot(d, "ou_word");
    std::string w;
    for (const auto& e : d.circles[0]) w += e.head ? 'U' : 'O';
    return w;
}

OUMatching ou_matching_raw(const GaussDiagram& d) {
    require_knot(d, "ou_matching");
    OUMatching m;
    std::vector<int> o_number(d.num_arrows(), 0);
    int k = 0;
    for (const auto& e : d.circles[0]) {
        m.ou_word += e.head ? 'U' : 'O';
        if (!e.head) o_number[e.arrow] = ++k;
    }
    for (const auto& e : d.circles[0])
        if (e.head) m.matching.push_back(o_number[e.arrow]);
    return m;
}

static int best_rotation(const GaussDiagram& d) {
    const auto& c = d.circles[0];
    int len = static_cast<int>(c.size());
    if (len == 0) return 0;
    std::string w = ou_word(d);
    std::string ww = w + w;
    std::string best_word;
    std::vector<int> cands;
    for (int r = 0; r < len; ++r) {
        std::string_view s(ww.data() + r, len);
        if (cands.empty() || s < best_word) {
            best_word = std::string(s);
            cands.assign(1, r);
        } else if (s == best_word) {
            cands.push_back(r);
        }
    }
    if (cands.size() == 1) return cands[0];
    int best = cands[0];
    std::vector<int> best_m = ou_matching_raw(rotate(d, best)).matching;
    for (size_t i = 1; i < cands.size(); ++i) {
        auto m = ou_matching_raw(rotate(d, cands[i])).matching;
        if (m < best_m) { best_m = std::move(m); best = cands[i]; }
    }
    return best;
}

GaussDiagram canonical_rotation(const GaussDiagram& d) {
    require_knot(d, "canonical_rotation");
    return normalize_labels(rotate(d, best_rotation(d)));
}

OUMatching ou_matching(const GaussDiagram& d) {
    require_knot(d, "ou_matching");
    return ou_matching_raw(rotate(d, best_rotation(d)));
}

GaussDiagram from_ou_matching(const OUMatching& m) {
    int n = static_cast<int>(m.matching.size());
    if (static_cast<int>(m.ou_word.size()) != 2 * n) throw std::invalid_argument("word length must be twice the matching length");
    if (std::count(m.ou_word.begin(), m.ou_word.end(), 'O') != n ||
        std::count(m.ou_word.begin(), m.ou_word.end(), 'U') != n)
        throw std::invalid_argument("word needs equally many O and U letters");
    std::vector<int> seen(n + 1, 0);
    for (int v : m.matching) {
        if (v < 1 || v > n || seen[v]++) throw std::invalid_argument("matching is not a permutation");
    }
    GaussDiagram d;
    int o = 0, u = 0;
    for (char ch : m.ou_word) {
        if (ch == 'O') d.circles[0].push_back({o++, false});
        else d.circles[0].push_back({m.matching[u++] - 1, true});
    }
    return normalize_labels(d);
}

std::string format_ou_matching(const OUMatching& m) {
    std::string s = m.ou_word + " [";
    for (size_t i = 0; i < m.matching.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(m.matching[i]);
    }
    return s + "]";
}

OUMatching parse_ou_matching(const std::string& text) {
    OUMatching m;
    auto lb = text.find('['), rb = text.find(']');
    if (lb == std::string::npos || rb == std::string::npos || rb < lb)
        throw std::invalid_argument("expected '<word> [m1 ... mn]'");
    for (char ch : text.substr(0, lb)) {
        if (ch == 'O' || ch == 'U') m.ou_word += ch;
        else if (!std::isspace(static_cast<unsigned char>(ch))) throw std::invalid_argument("bad OU word");
    }
    std::istringstream in(text.substr(lb + 1, rb - lb - 1));
    int v;
    while (in >> v) m.matching.push_back(v);
    if (!in.eof()) throw std::invalid_argument("bad matching entry");
    from_ou_matching(m);  // validates
    return m;
}

GaussDiagram symmetry_transform(const GaussDiagram& d, Symmetry kind) {
    GaussDiagram out = d;
    bool rev = kind != Symmetry::mirror;
    bool mir = kind != Symmetry::reverse;
    for (auto& c : out.circles) {
        if (rev) std::reverse(c.begin(), c.end());
        if (mir)
            for (auto& e : c) e.head = !e.head;
    }
    return out;
}

std::vector<int> arrow_indices(const GaussDiagram& d) {
    require_knot(d, "arrow_indices");
    const auto& c = d.circles[0];
    int len = static_cast<int>(c.size());
    auto t = d.tails(), h = d.heads();
    std::vector<int> idx(d.num_arrows(), 0);
    for (int a = 0; a < d.num_arrows(); ++a) {
        int v = 0;
        for (int p = (t[a].pos + 1) % len; p != h[a].pos; p = (p + 1) % len) v += c[p].head ? -1 : 1;
        idx[a] = v;
    }
    return idx;
}

bool mod_p_numberable(const GaussDiagram& d, int p) {
    if (p < 0) throw std::invalid_argument("p must be non-negative");
    for (int v : arrow_indices(d))
        if (p == 0 ? v != 0 : v % p != 0) return false;
    return true;
}

bool almost_classical(const GaussDiagram& d) { return mod_p_numberable(d, 0); }
bool checkerboard_colorable(const GaussDiagram& d) { return mod_p_numberable(d, 2); }

UPolynomial u_polynomial(const GaussDiagram& d) {
    UPolynomial u;
    for (int v : arrow_indices(d)) {
        if (v == 0) continue;
        int deg = v > 0 ? v : -v;
        if ((u[deg] += (v > 0 ? 1 : -1)) == 0) u.erase(deg);
    }
    return u;
}

std::string format_u_polynomial(const UPolynomial& u) {
    if (u.empty()) return "0";
    std::string s;
    for (auto it = u.rbegin(); it != u.rend(); ++it) {
        long long c = it->second;
        long long a = c < 0 ? -c : c;
        if (s.empty()) s += c < 0 ? "-" : "";
        else s += c < 0 ? " - " : " + ";
        if (a != 1) s += std::to_string(a) + "*";
        s += "t";
        if (it->first != 1) s += "^" + std::to_string(it->first);
    }
    return s;
}

GaussDiagram delete_arrows(const GaussDiagram& d, const std::vector<bool>& drop) {
    std::vector<int> relabel(d.num_arrows(), -1);
    int next = 0;
    for (int a = 0; a < d.num_arrows(); ++a)
        if (!drop.at(a)) relabel[a] = next++;
    GaussDiagram out;
    out.circles.clear();
    for (const auto& c : d.circles) {
        out.circles.emplace_back();
        for (const auto& e : c)
            if (!drop[e.arrow]) out.circles.back().push_back({relabel[e.arrow], e.head});
    }
    return out;
}

GaussDiagram covering(const GaussDiagram& d, int r) {
    if (r <= 0) throw std::invalid_argument("covering degree must be positive");
    auto idx = arrow_indices(d);
    std::vector<bool> drop(idx.size());
    for (size_t a = 0; a < idx.size(); ++a) drop[a] = idx[a] % r != 0;
    return delete_arrows(d, drop);
}

// Strands of a parallel are numbered left to right along the direction of travel.
// The head strand crosses the tail strand from right to left, so along tail
// strand i the head strands are met as 0..n-1, and along head strand j the
// tail strands are met as n-1..0.
GaussDiagram cable(const GaussDiagram& d, int n) {
    if (n <= 0) throw std::invalid_argument("cable needs a positive strand count");
    if (n == 1) return d;
    GaussDiagram out;
    out.circles.clear();
    auto id = [n](int e, int i, int j) { return (e * n + i) * n + j; };
    for (const auto& c : d.circles)
        for (int k = 0; k < n; ++k) {
            out.circles.emplace_back();
            auto& oc = out.circles.back();
            for (const auto& e : c) {
                if (!e.head)
                    for (int j = 0; j < n; ++j) oc.push_back({id(e.arrow, k, j), false});
                else
                    for (int i = n - 1; i >= 0; --i) oc.push_back({id(e.arrow, i, k), true});
            }
        }
    return normalize_labels(out);
}

GaussDiagram connected_sum(const GaussDiagram& d1, int slot1, const GaussDiagram& d2, int slot2) {
    require_knot(d1, "connected_sum");
    require_knot(d2, "connected_sum");
    int l1 = static_cast<int>(d1.circles[0].size()), l2 = static_cast<int>(d2.circles[0].size());
    if (slot1 < 0 || slot1 > l1 || slot2 < 0 || slot2 > l2) throw std::out_of_range("connected_sum slot out of range");
    GaussDiagram a = rotate(d1, slot1), b = rotate(d2, slot2);
    int shift = d1.num_arrows();
    for (auto e : b.circles[0]) {
        e.arrow += shift;
        a.circles[0].push_back(e);
    }
    return normalize_labels(a);
}

bool is_alternating_pattern(const GaussDiagram& d) {
    require_knot(d, "is_alternating_pattern");
    const auto& c = d.circles[0];
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i].head == c[(i + 1) % c.size()].head) return false;
    return true;
}

}  // namespace flatknot

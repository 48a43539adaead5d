#include "flatknot/based_matrix.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "flatknot/checked.hpp"
#include "flatknot/surface.hpp"

namespace flatknot {

Matrix based_matrix(const GaussDiagram& d) {
    if (d.components() != 1) throw std::invalid_argument("based matrix needs a single-component diagram");
    CarterSurface s = carter_surface(d);
    int n = d.num_arrows();
    std::vector<Walk> loops{core_walk(d)};
    for (int e = 0; e < n; ++e) loops.push_back(arrow_loop(d, e));
    Matrix t(n + 1, std::vector<long long>(n + 1, 0));
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            t[i][j] = intersection_pairing(s, loops[i], loops[j]);
            t[j][i] = -t[i][j];
        }
    return t;
}

bool is_skew(const Matrix& m) {
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != m.size()) return false;
        for (size_t j = 0; j < m.size(); ++j)
            if (m[i][j] != -m[j][i]) return false;
    }
    return true;
}

Matrix submatrix(const Matrix& m, const std::vector<int>& keep) {
    Matrix out(keep.size(), std::vector<long long>(keep.size()));
    for (size_t i = 0; i < keep.size(); ++i)
        for (size_t j = 0; j < keep.size(); ++j) out[i][j] = m[keep[i]][keep[j]];
    return out;
}

namespace {

int find_annihilating(const Matrix& t) {
    int n = static_cast<int>(t.size());
    for (int x = 1; x < n; ++x)
        if (std::all_of(t[x].begin(), t[x].end(), [](long long v) { return v == 0; })) return x;
    return -1;
}

int find_core(const Matrix& t) {
    int n = static_cast<int>(t.size());
    for (int x = 1; x < n; ++x) {
        bool ok = true;
        for (int y = 1; y < n && ok; ++y) ok = t[x][y] == t[0][y];
        if (ok) return x;
    }
    return -1;
}

std::pair<int, int> find_complementary(const Matrix& t) {
    int n = static_cast<int>(t.size());
    for (int x = 1; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            bool ok = true;
            for (int z = 0; z < n && ok; ++z) ok = t[x][z] + t[y][z] == t[0][z];
            if (ok) return {x, y};
        }
    return {-1, -1};
}

Matrix remove_indices(const Matrix& t, std::vector<int> drop) {
    std::vector<int> keep;
    for (int i = 0; i < static_cast<int>(t.size()); ++i)
        if (std::find(drop.begin(), drop.end(), i) == drop.end()) keep.push_back(i);
    return submatrix(t, keep);
}

}  // namespace

Matrix primitive_reduce(const Matrix& input, std::vector<ReductionStep>* steps) {
    if (!is_skew(input) || input.empty()) throw std::invalid_argument("based matrix must be a non-empty skew-symmetric matrix");
    Matrix t = input;
    for (;;) {
        if (int x = find_annihilating(t); x > 0) {
            if (steps) steps->push_back({ReductionStep::annihilating, {x}});
            t = remove_indices(t, {x});
            continue;
        }
        if (int x = find_core(t); x > 0) {
            if (steps) steps->push_back({ReductionStep::core, {x}});
            t = remove_indices(t, {x});
            continue;
        }
        if (auto [x, y] = find_complementary(t); x > 0) {
            if (steps) steps->push_back({ReductionStep::complementary, {x, y}});
            t = remove_indices(t, {x, y});
            continue;
        }
        return t;
    }
}

bool is_primitive(const Matrix& t) {
    return find_annihilating(t) < 0 && find_core(t) < 0 && find_complementary(t).first < 0;
}

std::vector<long long> phi_reading(const Matrix& m) {
    std::vector<long long> r;
    int n = static_cast<int>(m.size());
    for (int j = 0; j < n; ++j)
        for (int i = j + 1; i < n; ++i) r.push_back(m[i][j]);
    return r;
}

namespace {

// Branch and bound over orderings. At depth j the remaining generators are
// sorted by their entries against the core and the already placed generators;
// the next placed generator must come from the least class.
struct PhiSearch {
    const Matrix& t;
    std::vector<long long> best;
    bool have_best = false;

    explicit PhiSearch(const Matrix& mat) : t(mat) {}

    // -1, 0, 1 comparing reading with the same-length prefix of best
    int compare_prefix(const std::vector<long long>& reading) const {
        for (size_t k = 0; k < reading.size(); ++k)
            if (reading[k] != best[k]) return reading[k] < best[k] ? -1 : 1;
        return 0;
    }

    // placed: generator order so far (starting with the core 0); rest: unplaced.
    void run(std::vector<int>& placed, std::vector<int> rest, std::vector<long long>& reading) {
        auto key_less = [&](int a, int b) {
            for (int c : placed)
                if (t[a][c] != t[b][c]) return t[a][c] < t[b][c];
            return false;
        };
        std::stable_sort(rest.begin(), rest.end(), key_less);
        size_t base = reading.size();
        for (int x : rest) reading.push_back(t[x][placed.back()]);
        int cmp = have_best ? compare_prefix(reading) : -1;
        if (cmp > 0) { reading.resize(base); return; }
        if (rest.empty()) {
            if (cmp < 0) { best = reading; have_best = true; }
            reading.resize(base);
            return;
        }
        size_t cls = 1;
        while (cls < rest.size() && !key_less(rest[0], rest[cls])) ++cls;
        for (size_t c = 0; c < cls; ++c) {
            std::vector<int> next = rest;
            placed.push_back(next[c]);
            next.erase(next.begin() + static_cast<long>(c));
            run(placed, next, reading);
            placed.pop_back();
        }
        reading.resize(base);
    }
};

}  // namespace

std::vector<long long> phi_of_matrix(const Matrix& t) {
    if (t.size() <= 1) return {};
    PhiSearch s(t);
    std::vector<int> placed{0};
    std::vector<int> rest(t.size() - 1);
    std::iota(rest.begin(), rest.end(), 1);
    std::vector<long long> reading;
    s.run(placed, rest, reading);
    return s.best;
}

std::vector<long long> phi_invariant(const GaussDiagram& d) { return phi_of_matrix(primitive_reduce(based_matrix(d))); }

IntPoly poly_trim(IntPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = add_checked(r[i + j], mul_checked(a[i], b[j]));
    return poly_trim(r);
}

IntPoly poly_sub(const IntPoly& a, const IntPoly& b) {
    IntPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = add_checked(r[i], -b[i]);
    return poly_trim(r);
}

IntPoly poly_div_exact(const IntPoly& a_in, const IntPoly& b_in) {
    IntPoly a = poly_trim(a_in), b = poly_trim(b_in);
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    if (a.empty()) return {};
    if (a.size() < b.size()) throw std::domain_error("inexact polynomial division");
    IntPoly q(a.size() - b.size() + 1, 0);
    for (size_t k = q.size(); k-- > 0;) {
        long long lead = a[k + b.size() - 1];
        if (lead % b.back()) throw std::domain_error("inexact polynomial division");
        long long c = lead / b.back();
        q[k] = c;
        for (size_t i = 0; i < b.size(); ++i) a[k + i] = add_checked(a[k + i], -mul_checked(c, b[i]));
    }
    if (!poly_trim(a).empty()) throw std::domain_error("inexact polynomial division");
    return poly_trim(q);
}

std::string format_poly(const IntPoly& p_in, const std::string& var) {
    IntPoly p = poly_trim(p_in);
    if (p.empty()) return "0";
    std::string s;
    for (size_t k = p.size(); k-- > 0;) {
        long long c = p[k];
        if (!c) continue;
        long long a = c < 0 ? -c : c;
        if (s.empty()) s += c < 0 ? "-" : "";
        else s += c < 0 ? " - " : " + ";
        if (k == 0) { s += std::to_string(a); continue; }
        if (a != 1) s += std::to_string(a) + "*";
        s += var;
        if (k > 1) s += "^" + std::to_string(k);
    }
    return s;
}

namespace {

std::vector<std::vector<IntPoly>> t_minus(const Matrix& m) {
    size_t n = m.size();
    std::vector<std::vector<IntPoly>> a(n, std::vector<IntPoly>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            a[i][j] = poly_trim({-m[i][j]});
            if (i == j) a[i][j] = poly_trim({-m[i][j], 1});
        }
    return a;
}

}  // namespace

IntPoly char_poly_bareiss(const Matrix& m) {
    size_t n = m.size();
    if (n == 0) return {1};
    auto a = t_minus(m);
    IntPoly prev{1};
    long long sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].empty()) {
            size_t r = k + 1;
            while (r < n && a[r][k].empty()) ++r;
            if (r == n) return {};
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                a[i][j] = poly_div_exact(poly_sub(poly_mul(a[i][j], a[k][k]), poly_mul(a[i][k], a[k][j])), prev);
        prev = a[k][k];
    }
    IntPoly r = a[n - 1][n - 1];
    for (auto& c : r) c *= sign;
    return poly_trim(r);
}

IntPoly char_poly_cofactor(const Matrix& m) {
    size_t n = m.size();
    if (n == 0) return {1};
    if (n > 20) throw std::invalid_argument("cofactor expansion limited to 20x20");
    auto a = t_minus(m);
    // memo[mask] = determinant of rows k.. (k = popcount(mask)) over the column set not in mask
    std::map<unsigned, IntPoly> memo;
    std::function<IntPoly(unsigned, size_t)> rec = [&](unsigned used, size_t row) -> IntPoly {
        if (row == n) return {1};
        auto it = memo.find(used);
        if (it != memo.end()) return it->second;
        IntPoly total;
        int parity = 0;
        for (size_t c = 0; c < n; ++c) {
            if (used & (1u << c)) continue;
            if (!a[row][c].empty()) {
                IntPoly term = poly_mul(a[row][c], rec(used | (1u << c), row + 1));
                if (parity % 2) total = poly_sub(total, term);
                else total = poly_sub(total, poly_sub({}, term));
            }
            ++parity;
        }
        memo[used] = total;
        return total;
    };
    return rec(0, 0);
}

CharPolyPair characteristic_polynomials(const Matrix& t) {
    CharPolyPair r;
    r.outer = char_poly_bareiss(t);
    std::vector<int> keep(t.size() > 0 ? t.size() - 1 : 0);
    std::iota(keep.begin(), keep.end(), 1);
    r.inner = char_poly_bareiss(submatrix(t, keep));
    return r;
}

namespace {

// Fraction-free elimination; returns rank, and the determinant when square.
int bareiss(Matrix& m, __int128* det) {
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::vector<std::vector<__int128>> a(rows, std::vector<__int128>(cols));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) a[i][j] = m[i][j];
    __int128 prev = 1;
    int sign = 1;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        if (p != r) { std::swap(a[p], a[r]); sign = -sign; }
        for (size_t i = r + 1; i < rows; ++i) {
            for (size_t j = c + 1; j < cols; ++j) {
                __int128 v = add_checked(mul_checked(a[r][c], a[i][j]), -mul_checked(a[i][c], a[r][j]));
                if (v % prev) throw std::logic_error("Bareiss division not exact");
                a[i][j] = v / prev;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    if (det) *det = (rows == cols && r == rows) ? (rows ? sign * a[rows - 1][cols - 1] : 1) : 0;
    return static_cast<int>(r);
}

}  // namespace

long long det_bareiss(const Matrix& m) {
    Matrix c = m;
    __int128 d = 0;
    bareiss(c, &d);
    if (d > static_cast<__int128>(INT64_MAX) || d < static_cast<__int128>(INT64_MIN)) throw std::overflow_error("determinant exceeds 64 bits");
    return static_cast<long long>(d);
}

int integer_rank(const Matrix& m) {
    Matrix c = m;
    return bareiss(c, nullptr);
}

Matrix filled_matrix(const Matrix& t, const Filling& f) {
    size_t k = f.size() + 1;
    Matrix out(k, std::vector<long long>(k, 0));
    auto members = [&](size_t b) -> std::vector<int> {
        if (b == 0) return {0};
        return f[b - 1];
    };
    for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b)
            for (int x : members(a))
                for (int y : members(b)) out[a][b] += t.at(x).at(y);
    return out;
}

int algebraic_genus(const Matrix& t, Filling* witness) {
    int n = static_cast<int>(t.size()) - 1;
    if (n < 0) throw std::invalid_argument("empty based matrix");
    int best = -1;
    Filling cur;
    std::vector<bool> used(n + 1, false);
    std::function<void()> rec = [&] {
        if (best == 0) return;
        int i = 1;
        while (i <= n && used[i]) ++i;
        if (i > n) {
            int r = integer_rank(filled_matrix(t, cur));
            if (best < 0 || r < best) {
                best = r;
                if (witness) *witness = cur;
            }
            return;
        }
        used[i] = true;
        cur.push_back({i});
        rec();
        cur.pop_back();
        for (int j = i + 1; j <= n; ++j) {
            if (used[j]) continue;
            used[j] = true;
            cur.push_back({i, j});
            rec();
            cur.pop_back();
            used[j] = false;
        }
        used[i] = false;
    };
    rec();
    return best / 2;
}

std::string format_filling(const Filling& f) {
    std::string s = "[";
    for (size_t b = 0; b < f.size(); ++b) {
        if (b) s += ",";
        s += "(";
        for (size_t i = 0; i < f[b].size(); ++i) s += (i ? "," : "") + std::to_string(f[b][i]);
        s += ")";
    }
    return s + "]";
}

std::string format_matrix(const Matrix& m) {
    std::string s;
    for (const auto& row : m) {
        for (size_t j = 0; j < row.size(); ++j) s += (j ? " " : "") + std::to_string(row[j]);
        s += "\n";
    }
    return s;
}

// Entry (i, j) of a based matrix equals the signed count of third arrows with
// tail in the arc of i and head in the arc of j (minus the reverse), plus 1 if
// the ends read tail i, tail j, head i, head j from tail i, and -1 if they read
// tail i, head j, head i, tail j. Building the word left to right, every end
// still to come lies on the same side of a closed arc, so an entry is final as
// soon as both of its arrows are closed.
namespace {

struct Realizer {
    const Matrix& t;
    int n;
    size_t limit;
    std::vector<int> tail, head, word;
    std::vector<char> word_head;
    std::vector<GaussDiagram> out;
    static constexpr int far = 1 << 20;

    bool in_arc(int i, int x) const {
        int a = tail[i], b = head[i];
        return a < b ? (x > a && x < b) : (x > a || x < b);
    }
    int at(int p) const { return p < 0 ? far : p; }
    bool closed(int i) const { return tail[i] >= 0 && head[i] >= 0; }

    long long entry(int i, int j) const {
        long long c = 0;
        for (int g = 0; g < n; ++g) {
            if (g == i || g == j || (tail[g] < 0 && head[g] < 0)) continue;
            c += (in_arc(i, at(tail[g])) && in_arc(j, at(head[g]))) - (in_arc(i, at(head[g])) && in_arc(j, at(tail[g])));
        }
        auto rel = [&](int x) { return (x - tail[i] + 4 * n) % (4 * n); };
        int hi = rel(head[i]), tj = rel(tail[j]), hj = rel(head[j]);
        if (tj < hi && hi < hj) c += 1;
        else if (hj < hi && hi < tj) c -= 1;
        return c;
    }
    long long index(int i) const {
        long long c = 0;
        for (int g = 0; g < n; ++g) {
            if (g == i || (tail[g] < 0 && head[g] < 0)) continue;
            c += in_arc(i, at(tail[g]));
            c -= in_arc(i, at(head[g]));
        }
        return c;
    }
    void emit() {
        GaussDiagram d;
        for (int s = 0; s < 2 * n; ++s) d.circles[0].push_back({word[s], word_head[s] != 0});
        if (based_matrix(d) == t) out.push_back(std::move(d));
    }
    void place(int k, int g, bool is_head) {
        (is_head ? head : tail)[g] = k;
        word[k] = g;
        word_head[k] = is_head;
    }
    void dfs(int k, int next) {
        if (limit && out.size() >= limit) return;
        if (k == 2 * n) { emit(); return; }
        int open = 0;
        for (int g = 0; g < next; ++g) open += !closed(g);
        int left = 2 * n - k;
        if (open + 2 * (n - next) > left) return;
        if (next < n) {
            for (bool h : {false, true}) {
                place(k, next, h);
                dfs(k + 1, next + 1);
                tail[next] = head[next] = -1;
            }
        }
        for (int g = 0; g < next; ++g) {
            if (closed(g)) continue;
            bool h = tail[g] >= 0;
            place(k, g, h);
            bool ok = index(g) == -t[0][g + 1];
            for (int j = 0; j < n && ok; ++j)
                if (j != g && closed(j) && entry(g, j) != t[g + 1][j + 1]) ok = false;
            if (ok) dfs(k + 1, next);
            (h ? head : tail)[g] = -1;
        }
    }
};

}  // namespace

std::vector<GaussDiagram> realize_based_matrix(const Matrix& t, size_t limit) {
    if (t.empty() || !is_skew(t)) throw std::invalid_argument("based matrix must be square and skew-symmetric");
    int n = static_cast<int>(t.size()) - 1;
    Realizer r{t, n, limit, std::vector<int>(n, -1), std::vector<int>(n, -1), std::vector<int>(2 * n, 0),
               std::vector<char>(2 * n, 0), {}};
    if (n == 0) return {unknot()};
    r.dfs(0, 0);
    return r.out;
}

}  // namespace flatknot

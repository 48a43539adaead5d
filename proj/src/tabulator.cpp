#include "flatknot/tabulator.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "flatknot/polynomials.hpp"
#include "flatknot/surface.hpp"

namespace flatknot {

std::string filter_name(TableFilter f) {
    switch (f) {
        case TableFilter::all: return "all";
        case TableFilter::checkerboard: return "cc";
        case TableFilter::almost_classical: return "ac";
    }
    return "?";
}

TableFilter parse_filter(const std::string& s) {
    if (s == "all") return TableFilter::all;
    if (s == "cc" || s == "checkerboard") return TableFilter::checkerboard;
    if (s == "ac" || s == "almost_classical") return TableFilter::almost_classical;
    throw std::invalid_argument("unknown table class " + s);
}

std::vector<std::string> lyndon_words(int n) {
    if (n < 1) throw std::invalid_argument("lyndon_words needs n >= 1");
    int len = 2 * n;
    std::vector<std::string> out;
    std::vector<int> a(len + 1, 0);
    // Fredricksen-Kessler-Maiorana over {0=O, 1=U}, pruned by letter counts
    std::function<void(int, int, int)> gen = [&](int t, int p, int ones) {
        if (ones > n || (t - 1 - ones) > n) return;
        if (t > len) {
            if (len % p == 0 && ones == n) {
                std::string w(len, 'O');
                for (int i = 0; i < len; ++i)
                    if (a[i + 1]) w[i] = 'U';
                out.push_back(std::move(w));
            }
            return;
        }
        a[t] = a[t - p];
        gen(t + 1, p, ones + a[t]);
        if (a[t - p] == 0) {
            a[t] = 1;
            gen(t + 1, t, ones + 1);
        }
    };
    gen(1, 1, 0);
    return out;
}

uint64_t pack_key(const OUMatching& m) {
    size_t n = m.matching.size();
    if (n > 10 || m.ou_word.size() != 2 * n) throw std::invalid_argument("key too large to pack");
    uint64_t k = 0;
    for (char c : m.ou_word) k = (k << 1) | (c == 'U' ? 1u : 0u);
    for (int v : m.matching) k = (k << 4) | static_cast<uint64_t>(v);
    return k;
}

namespace {

bool passes(const GaussDiagram& d, TableFilter f) {
    switch (f) {
        case TableFilter::all: return true;
        case TableFilter::checkerboard: return checkerboard_colorable(d);
        case TableFilter::almost_classical: return almost_classical(d);
    }
    return false;
}

}  // namespace

std::vector<KnotClass> enumerate_classes(int n, const EnumerateOptions& opt) {
    std::unordered_set<uint64_t> visited;
    std::map<uint64_t, std::pair<OUMatching, GaussDiagram>> orbits;

    auto process = [&](const GaussDiagram& d) {
        if (visited.count(pack_key(ou_matching(d)))) return;
        bool minimal = true;
        OUMatching best;
        bool first = true;
        for (const auto& member : r3_closure(d)) {
            OUMatching k = ou_matching(member);
            visited.insert(pack_key(k));
            if (first || k < best) { best = k; first = false; }
            if (minimal && !find_removals(member).empty()) minimal = false;
        }
        if (!minimal || !passes(d, opt.filter)) return;
        orbits.emplace(pack_key(best), std::make_pair(best, d));
    };

    std::vector<int> perm(n);
    if (opt.parity_patterns) {
        // arrow i joins slot 2i with slot 2*perm[i]+1; bit i puts its tail on the odd slot
        std::iota(perm.begin(), perm.end(), 0);
        do {
            for (uint32_t bits = 0; bits < (1u << n); ++bits) {
                GaussDiagram d;
                d.circles[0].resize(2 * n);
                for (int i = 0; i < n; ++i) {
                    bool odd_tail = (bits >> i) & 1u;
                    d.circles[0][2 * i] = {i, odd_tail};
                    d.circles[0][2 * perm[i] + 1] = {i, !odd_tail};
                }
                process(d);
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
        auto words = lyndon_words(n);
        if (opt.word_limit && words.size() > opt.word_limit) words.resize(opt.word_limit);
        for (const auto& w : words) {
            std::iota(perm.begin(), perm.end(), 1);
            do process(from_ou_matching({w, perm}));
            while (std::next_permutation(perm.begin(), perm.end()));
        }
    }

    std::vector<KnotClass> out;
    for (const auto& [packed, entry] : orbits) {
        const auto& [key, d] = entry;
        CanonicalKey kr = orbit_key(symmetry_transform(d, Symmetry::reverse));
        CanonicalKey km = orbit_key(symmetry_transform(d, Symmetry::mirror));
        CanonicalKey krm = orbit_key(symmetry_transform(d, Symmetry::reverse_mirror));
        if (kr < key || km < key || krm < key) continue;  // listed under a sibling
        out.push_back({key, from_ou_matching(key), symmetry_type_from(kr == key, km == key, krm == key)});
    }
    return out;
}

std::string record_name(TableFilter f, int crossings, size_t rank) {
    std::string prefix = f == TableFilter::all ? "" : filter_name(f);
    return prefix + std::to_string(crossings) + "." + std::to_string(rank);
}

KnotRecord make_record(const std::string& name, const GaussDiagram& minimal, SymmetryType sym) {
    KnotRecord r;
    r.name = name;
    r.crossings = minimal.num_arrows();
    r.gauss_code = serialize_gauss_code(minimal);
    OUMatching k = ou_matching(minimal);
    r.ou_word = k.ou_word;
    r.matching = k.matching;
    r.genus = carter_surface(minimal).genus;
    r.symmetry_type = sym;
    r.checkerboard = checkerboard_colorable(minimal);
    r.almost_classical = almost_classical(minimal);
    r.u_poly = format_u_polynomial(u_polynomial(minimal));
    r.based_matrix = based_matrix(minimal);
    r.primitive_based_matrix = primitive_reduce(r.based_matrix);
    r.phi = phi_of_matrix(r.primitive_based_matrix);
    auto cp = characteristic_polynomials(r.primitive_based_matrix);
    r.inner_char = format_poly(cp.inner);
    r.outer_char = format_poly(cp.outer);
    r.algebraic_genus = algebraic_genus(r.based_matrix);
    return r;
}

std::string invariant_name(Invariant i) {
    switch (i) {
        case Invariant::phi: return "phi";
        case Invariant::arrow: return "arrow";
        case Invariant::arrow2: return "arrow2";
        case Invariant::arrow3_const: return "arrow3const";
        case Invariant::jk: return "jk";
        case Invariant::jk_enhanced: return "jken";
        case Invariant::u_poly: return "u";
    }
    return "?";
}

Invariant parse_invariant(const std::string& s) {
    for (auto i : {Invariant::phi, Invariant::arrow, Invariant::arrow2, Invariant::arrow3_const, Invariant::jk,
                   Invariant::jk_enhanced, Invariant::u_poly})
        if (s == invariant_name(i)) return i;
    throw std::invalid_argument("unknown invariant " + s);
}

namespace {

std::string join(const std::vector<long long>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

// Value of one invariant on a minimal diagram, as comparable text.
std::string invariant_value(const GaussDiagram& d, Invariant which) {
    switch (which) {
        case Invariant::phi: return join(phi_invariant(d));
        case Invariant::arrow: return arrow_polynomial(d, true).str();
        case Invariant::arrow2: return arrow_polynomial(cable(d, 2), true).str();
        case Invariant::arrow3_const: return std::to_string(arrow_constant_term(cable(d, 3), true));
        case Invariant::jk: return format_poly(jones_krushkal(d).j_normalized, "z");
        case Invariant::jk_enhanced: return format_wz(jones_krushkal(d).j_enhanced);
        case Invariant::u_poly: return format_u_polynomial(u_polynomial(d));
    }
    return {};
}

// Two independent 64-bit hashes of a value. Cable polynomials of 7-crossing
// knots are long enough that keeping the text of every colliding value does not
// fit in memory.
using Digest = std::pair<uint64_t, uint64_t>;

Digest digest(const std::string& s) {
    uint64_t fnv = 14695981039346656037ull;
    for (unsigned char ch : s) fnv = (fnv ^ ch) * 1099511628211ull;
    return {std::hash<std::string>{}(s), fnv};
}

std::optional<std::string> stored_value(const KnotRecord& r, Invariant which) {
    switch (which) {
        case Invariant::phi: return join(r.phi);
        case Invariant::arrow: return r.arrow_poly;
        case Invariant::arrow2: return r.arrow_cable2;
        case Invariant::arrow3_const:
            if (r.arrow_cable3_const) return std::to_string(*r.arrow_cable3_const);
            return std::nullopt;
        case Invariant::jk: return r.jk_normalized;
        case Invariant::jk_enhanced: return r.jk_enhanced;
        case Invariant::u_poly: return r.u_poly;
    }
    return std::nullopt;
}

}  // namespace

void compute_invariant(KnotRecord& r, Invariant which) {
    GaussDiagram d = parse_gauss_code(r.gauss_code);
    switch (which) {
        case Invariant::arrow: r.arrow_poly = arrow_polynomial(d, true).str(); break;
        case Invariant::arrow2: r.arrow_cable2 = arrow_polynomial(cable(d, 2), true).str(); break;
        case Invariant::arrow3_const: r.arrow_cable3_const = arrow_constant_term(cable(d, 3), true); break;
        case Invariant::jk:
        case Invariant::jk_enhanced: {
            JKResult j = jones_krushkal(d);
            r.jk = format_poly(j.j, "z");
            r.jk_normalized = format_poly(j.j_normalized, "z");
            r.jk_enhanced = format_wz(j.j_enhanced);
            break;
        }
        case Invariant::phi:
        case Invariant::u_poly: break;  // always present
    }
}

Table tabulate(int max_crossings, const TabulateOptions& opt) {
    Table t;
    t.max_crossings = max_crossings;
    t.filter = opt.filter;
    for (int n = std::max(1, opt.min_crossings); n <= max_crossings; ++n) {
        EnumerateOptions eo;
        eo.filter = opt.filter;
        eo.parity_patterns = opt.parity_patterns && opt.filter != TableFilter::all;
        auto classes = enumerate_classes(n, eo);
        if (opt.progress) opt.progress(n, classes.size());
        for (size_t i = 0; i < classes.size(); ++i) {
            KnotRecord r = make_record(record_name(opt.filter, n, i + 1), classes[i].diagram, classes[i].symmetry);
            for (Invariant inv : opt.extra) compute_invariant(r, inv);
            t.records.push_back(std::move(r));
        }
        if (!classes.empty()) t.counts[n] = static_cast<int>(classes.size());
    }
    return t;
}

DistinguishReport distinguish_report(const Table& t, const std::vector<Invariant>& battery) {
    static const std::vector<Invariant> cost_order = {Invariant::u_poly, Invariant::phi, Invariant::arrow,
                                                      Invariant::jk, Invariant::jk_enhanced, Invariant::arrow2,
                                                      Invariant::arrow3_const};
    size_t n = t.records.size();
    std::vector<GaussDiagram> diagrams(n);
    for (size_t i = 0; i < n; ++i) diagrams[i] = parse_gauss_code(t.records[i].gauss_code);

    // partition refinement, cheapest invariant first; only still-colliding records are evaluated
    std::vector<std::vector<size_t>> groups(1);
    groups[0].resize(n);
    std::iota(groups[0].begin(), groups[0].end(), size_t{0});
    for (Invariant inv : cost_order) {
        if (std::find(battery.begin(), battery.end(), inv) == battery.end()) continue;
        std::vector<std::vector<size_t>> next;
        for (const auto& g : groups) {
            if (g.size() < 2) { next.push_back(g); continue; }
            std::map<std::set<Digest>, std::vector<size_t>> split;
            for (size_t i : g) {
                std::set<Digest> values;
                auto own = stored_value(t.records[i], inv);
                values.insert(digest(own ? *own : invariant_value(diagrams[i], inv)));
                for (auto s : {Symmetry::reverse, Symmetry::mirror, Symmetry::reverse_mirror})
                    values.insert(digest(invariant_value(symmetry_transform(diagrams[i], s), inv)));
                split[values].push_back(i);
            }
            for (auto& [k, members] : split) next.push_back(std::move(members));
        }
        groups = std::move(next);
    }

    DistinguishReport rep;
    for (const auto& [c, cnt] : t.counts) rep.non_distinguished[c] = 0;
    for (const auto& g : groups) {
        if (g.size() < 2) continue;
        std::vector<std::string> names;
        int low = t.records[g[0]].crossings;
        for (size_t i : g) low = std::min(low, t.records[i].crossings);
        int at_low = 0;
        for (size_t i : g) at_low += t.records[i].crossings == low;
        for (size_t i : g) {
            names.push_back(t.records[i].name);
            const auto& r = t.records[i];
            if (r.crossings > low || at_low > 1) rep.non_distinguished[r.crossings]++;
        }
        rep.groups.push_back(std::move(names));
    }
    return rep;
}

// ---------------------------------------------------------------- JSONL

namespace {

using nlohmann::json;

json to_json(const KnotRecord& r) {
    json j;
    j["name"] = r.name;
    j["crossings"] = r.crossings;
    j["gauss_code"] = r.gauss_code;
    j["ou_word"] = r.ou_word;
    j["matching"] = r.matching;
    j["genus"] = r.genus;
    j["symmetry_type"] = symmetry_name(r.symmetry_type);
    j["checkerboard"] = r.checkerboard;
    j["almost_classical"] = r.almost_classical;
    j["u_poly"] = r.u_poly;
    j["phi"] = r.phi;
    j["based_matrix"] = r.based_matrix;
    j["primitive_based_matrix"] = r.primitive_based_matrix;
    j["inner_char"] = r.inner_char;
    j["outer_char"] = r.outer_char;
    j["algebraic_genus"] = r.algebraic_genus;
    if (r.arrow_poly) j["arrow_poly"] = *r.arrow_poly;
    if (r.arrow_cable2) j["arrow_cable2"] = *r.arrow_cable2;
    if (r.arrow_cable3_const) j["arrow_cable3_const"] = *r.arrow_cable3_const;
    if (r.jk) j["jk"] = *r.jk;
    if (r.jk_normalized) j["jk_normalized"] = *r.jk_normalized;
    if (r.jk_enhanced) j["jk_enhanced"] = *r.jk_enhanced;
    if (r.slice_status) j["slice_status"] = *r.slice_status;
    return j;
}

template <class T>
void opt_field(const json& j, const char* key, std::optional<T>& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

KnotRecord from_json(const json& j) {
    KnotRecord r;
    r.name = j.at("name").get<std::string>();
    try {
        r.crossings = j.at("crossings").get<int>();
        r.gauss_code = j.at("gauss_code").get<std::string>();
        r.ou_word = j.at("ou_word").get<std::string>();
        r.matching = j.at("matching").get<std::vector<int>>();
        r.genus = j.at("genus").get<int>();
        r.symmetry_type = parse_symmetry_name(j.at("symmetry_type").get<std::string>());
        r.checkerboard = j.at("checkerboard").get<bool>();
        r.almost_classical = j.at("almost_classical").get<bool>();
        r.u_poly = j.at("u_poly").get<std::string>();
        r.phi = j.at("phi").get<std::vector<long long>>();
        r.based_matrix = j.at("based_matrix").get<Matrix>();
        r.primitive_based_matrix = j.at("primitive_based_matrix").get<Matrix>();
        r.inner_char = j.at("inner_char").get<std::string>();
        r.outer_char = j.at("outer_char").get<std::string>();
        r.algebraic_genus = j.at("algebraic_genus").get<int>();
        opt_field(j, "arrow_poly", r.arrow_poly);
        opt_field(j, "arrow_cable2", r.arrow_cable2);
        opt_field(j, "arrow_cable3_const", r.arrow_cable3_const);
        opt_field(j, "jk", r.jk);
        opt_field(j, "jk_normalized", r.jk_normalized);
        opt_field(j, "jk_enhanced", r.jk_enhanced);
        opt_field(j, "slice_status", r.slice_status);
    } catch (const json::exception& e) {
        throw std::invalid_argument("record " + r.name + ": " + e.what());
    }
    return r;
}

}  // namespace

void validate_record(const KnotRecord& r) {
    auto fail = [&](const std::string& why) { throw std::invalid_argument("record " + r.name + ": " + why); };
    GaussDiagram d;
    try {
        d = parse_gauss_code(r.gauss_code);
    } catch (const std::exception& e) {
        fail(std::string("bad gauss_code: ") + e.what());
    }
    if (d.components() != 1) fail("gauss_code is not a knot");
    if (d.num_arrows() != r.crossings) fail("crossings differs from the arrow count");
    if (!find_removals(d).empty()) fail("stored diagram is not minimal");
    OUMatching key{r.ou_word, r.matching};
    if (orbit_key(d) != key) fail("ou_word/matching differ from the canonical key of gauss_code");
    if (checkerboard_colorable(d) != r.checkerboard) fail("checkerboard flag disagrees with the diagram");
    if (almost_classical(d) != r.almost_classical) fail("almost_classical flag disagrees with the diagram");
    if (r.based_matrix.size() != static_cast<size_t>(r.crossings) + 1) fail("based matrix has the wrong size");
    if (carter_surface(d).genus != r.genus) fail("genus disagrees with the diagram");
    if (format_u_polynomial(u_polynomial(d)) != r.u_poly) fail("u_poly disagrees with the diagram");
}

std::string record_json(const KnotRecord& r) { return to_json(r).dump(); }

std::string export_jsonl(const Table& t) {
    json header;
    header["schema_version"] = 1;
    header["version"] = t.version;
    header["max_crossings"] = t.max_crossings;
    header["filter"] = filter_name(t.filter);
    json counts = json::object();
    for (const auto& [c, n] : t.counts) counts[std::to_string(c)] = n;
    header["counts"] = counts;
    std::string out = header.dump() + "\n";
    for (const auto& r : t.records) out += to_json(r).dump() + "\n";
    return out;
}

void export_jsonl(const Table& t, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << export_jsonl(t);
}

Table import_jsonl_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Table t;
    bool header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": malformed JSON");
        }
        if (!header) {
            if (!j.contains("schema_version")) throw std::invalid_argument("missing schema_version header");
            if (j.at("schema_version").get<int>() != 1) throw std::invalid_argument("unsupported schema_version");
            t.version = j.value("version", std::string("1"));
            t.max_crossings = j.value("max_crossings", 0);
            t.filter = parse_filter(j.value("filter", std::string("all")));
            header = true;
            continue;
        }
        if (!j.is_object() || !j.contains("name")) throw std::invalid_argument("line " + std::to_string(lineno) + ": record without name");
        KnotRecord r = from_json(j);
        validate_record(r);
        t.counts[r.crossings]++;
        t.records.push_back(std::move(r));
    }
    if (!header) throw std::invalid_argument("empty table file");
    return t;
}

Table import_jsonl(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return import_jsonl_text(ss.str());
}

}  // namespace flatknot

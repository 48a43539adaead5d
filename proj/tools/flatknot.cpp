#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flatknot/based_matrix.hpp"
#include "flatknot/gauss.hpp"
#include "flatknot/moves.hpp"
#include "flatknot/polynomials.hpp"
#include "flatknot/slice.hpp"
#include "flatknot/surface.hpp"
#include "flatknot/tabulator.hpp"

using namespace flatknot;

namespace {

// Input that parsed but failed a consistency check (exit code 2).
struct ValidationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

GaussDiagram minimal_knot(const std::string& code) {
    GaussDiagram d = parse_gauss_code(code);
    if (d.components() != 1) throw std::invalid_argument("expected a knot (one component)");
    return from_ou_matching(canonical_key(d));
}

std::string join(const std::vector<long long>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

void print_matrix(const std::string& label, const Matrix& m) {
    std::cout << label << ":\n" << format_matrix(m);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flat knot tabulation and invariants"};
    app.require_subcommand(1);

    // tabulate
    auto* tab = app.add_subcommand("tabulate", "enumerate flat knots up to a crossing number, JSONL out");
    int max_crossings = 0;
    std::string cls = "all", out_path, extra;
    tab->add_option("--max-crossings", max_crossings)->required()->check(CLI::Range(0, 10));
    tab->add_option("--class", cls)->check(CLI::IsMember({"all", "cc", "ac"}));
    tab->add_option("--out", out_path, "output file (stdout if omitted)");
    tab->add_option("--extra", extra, "comma list of optional invariants: arrow,arrow2,arrow3const,jk");

    // invariants
    auto* inv = app.add_subcommand("invariants", "invariants of a knot given by a Gauss code");
    std::string code;
    bool all = false, want_arrow = false, want_jk = false, want_jken = false, want_json = false;
    int cable_n = 0, cable_const_n = 0;
    inv->add_option("code", code)->required();
    inv->add_flag("--all", all, "everything, including cable-2 and the cable-3 constant");
    inv->add_flag("--arrow", want_arrow, "normalized arrow polynomial");
    inv->add_option("--arrow-cable", cable_n, "arrow polynomial of the n-cable")->check(CLI::Range(2, 4));
    inv->add_option("--arrow-cable-const", cable_const_n, "constant term of the n-cable arrow polynomial")
        ->check(CLI::Range(2, 4));
    inv->add_flag("--jk", want_jk, "Jones-Krushkal polynomial and its normalization");
    inv->add_flag("--jk-enhanced", want_jken, "enhanced Jones-Krushkal polynomial");
    inv->add_flag("--json", want_json, "print the table record as JSON");

    // distinguish
    auto* dis = app.add_subcommand("distinguish", "count records a battery of invariants fails to separate");
    std::string table_path, battery = "phi";
    bool show_groups = false;
    dis->add_option("--table", table_path)->required();
    dis->add_option("--battery", battery, "comma list of phi,u,arrow,arrow2,arrow3const,jk,jken");
    dis->add_flag("--groups", show_groups, "list the colliding groups");

    // single-diagram commands
    auto* red = app.add_subcommand("reduce", "monotone reduction with the moves applied");
    red->add_option("code", code)->required();
    auto* can = app.add_subcommand("canon", "canonical key and minimal diagram");
    can->add_option("code", code)->required();
    auto* orb = app.add_subcommand("orbit", "R3 orbit of the minimal diagram");
    orb->add_option("code", code)->required();
    auto* sym = app.add_subcommand("symmetry", "symmetry type");
    sym->add_option("code", code)->required();
    auto* sur = app.add_subcommand("surface", "Carter surface data");
    sur->add_option("code", code)->required();

    auto* sli = app.add_subcommand("slice", "slice status with a movie, or replay a movie file");
    std::string replay_path;
    SliceBudget budget;
    int depth = 2;
    sli->add_option("code", code);
    sli->add_option("--max-saddles", budget.max_saddles)->check(CLI::Range(0, 8));
    sli->add_option("--budget", budget.max_states, "explored state limit");
    sli->add_option("--depth", depth, "covering recursion depth for obstructions")->check(CLI::Range(0, 4));
    sli->add_option("--replay", replay_path, "movie file to check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*tab) {
            TabulateOptions opt;
            opt.filter = parse_filter(cls);
            for (const auto& e : split_commas(extra)) opt.extra.push_back(parse_invariant(e));
            opt.progress = [](int n, size_t classes) { std::cerr << n << " crossings: " << classes << "\n"; };
            Table t = tabulate(max_crossings, opt);
            if (out_path.empty())
                std::cout << export_jsonl(t);
            else
                export_jsonl(t, out_path);
            return 0;
        }
        if (*inv) {
            GaussDiagram d = minimal_knot(code);
            SymmetryType st = symmetry_type(d);
            KnotRecord r = make_record("input", d, st);
            if (all || want_arrow) compute_invariant(r, Invariant::arrow);
            if (all || cable_n == 2) compute_invariant(r, Invariant::arrow2);
            if (all || cable_const_n == 3) compute_invariant(r, Invariant::arrow3_const);
            if (all || want_jk || want_jken) compute_invariant(r, Invariant::jk);
            if (want_json) {
                std::cout << record_json(r) << "\n";
                return 0;
            }
            std::cout << "minimal: " << r.gauss_code << "\n"
                      << "key: " << format_ou_matching({r.ou_word, r.matching}) << "\n"
                      << "crossings: " << r.crossings << "\n"
                      << "genus: " << r.genus << "\n"
                      << "symmetry: " << symmetry_name(r.symmetry_type) << "\n"
                      << "checkerboard: " << (r.checkerboard ? "yes" : "no") << "\n"
                      << "almost_classical: " << (r.almost_classical ? "yes" : "no") << "\n"
                      << "u: " << r.u_poly << "\n"
                      << "phi: " << join(r.phi) << "\n"
                      << "inner_char: " << r.inner_char << "\n"
                      << "outer_char: " << r.outer_char << "\n"
                      << "algebraic_genus: " << r.algebraic_genus << "\n";
            if (r.arrow_poly) std::cout << "arrow: " << *r.arrow_poly << "\n";
            if (r.arrow_cable2) std::cout << "arrow_cable2: " << *r.arrow_cable2 << "\n";
            if (cable_n > 2)
                std::cout << "arrow_cable" << cable_n << ": " << arrow_polynomial(cable(d, cable_n), true).str() << "\n";
            if (r.arrow_cable3_const) std::cout << "arrow_cable3_const: " << *r.arrow_cable3_const << "\n";
            if (cable_const_n && cable_const_n != 3)
                std::cout << "arrow_cable" << cable_const_n << "_const: "
                          << arrow_constant_term(cable(d, cable_const_n), true) << "\n";
            if (all || want_jk) std::cout << "jk: " << *r.jk << "\n" << "jk_normalized: " << *r.jk_normalized << "\n";
            if (all || want_jken) std::cout << "jk_enhanced: " << *r.jk_enhanced << "\n";
            if (all) {
                print_matrix("based_matrix", r.based_matrix);
                print_matrix("primitive_based_matrix", r.primitive_based_matrix);
            }
            return 0;
        }
        if (*dis) {
            Table t;
            try {
                t = import_jsonl(table_path);
            } catch (const std::invalid_argument& e) {
                throw ValidationFailure(e.what());
            }
            std::vector<Invariant> bat;
            for (const auto& b : split_commas(battery)) bat.push_back(parse_invariant(b));
            DistinguishReport rep = distinguish_report(t, bat);
            for (const auto& [n, c] : t.counts) {
                auto it = rep.non_distinguished.find(n);
                std::cout << n << " crossings: " << (it == rep.non_distinguished.end() ? 0 : it->second)
                          << " of " << c << " not distinguished\n";
            }
            if (show_groups)
                for (const auto& g : rep.groups) {
                    for (size_t i = 0; i < g.size(); ++i) std::cout << (i ? " " : "") << g[i];
                    std::cout << "\n";
                }
            return 0;
        }
        if (*red) {
            GaussDiagram d = parse_gauss_code(code);
            std::vector<ReduceStep> trace;
            GaussDiagram m = reduce_monotone(d, &trace);
            for (const auto& s : trace) std::cout << serialize_gauss_code(s.before) << "  " << describe(s.site) << "\n";
            std::cout << serialize_gauss_code(m) << "\n";
            return 0;
        }
        if (*can) {
            GaussDiagram d = parse_gauss_code(code);
            CanonicalKey k = canonical_key(d);
            std::cout << format_ou_matching(k) << "\n" << serialize_gauss_code(from_ou_matching(k)) << "\n";
            return 0;
        }
        if (*orb) {
            for (const auto& m : r3_orbit(minimal_knot(code))) std::cout << serialize_gauss_code(m) << "\n";
            return 0;
        }
        if (*sym) {
            std::cout << symmetry_name(symmetry_type(minimal_knot(code))) << "\n";
            return 0;
        }
        if (*sur) {
            CarterSurface s = carter_surface(parse_gauss_code(code));
            std::cout << "vertices: " << s.vertices << "\n"
                      << "edges: " << s.edges << "\n"
                      << "faces: " << s.faces << "\n"
                      << "genus: " << s.genus << "\n"
                      << "graph_components: " << s.graph_components << "\n"
                      << "free_circles: " << s.free_circles << "\n"
                      << "h1_rank: " << s.homology_dim() << "\n";
            return 0;
        }
        if (*sli) {
            if (!replay_path.empty()) {
                SliceMovie m;
                GaussDiagram end;
                try {
                    m = parse_movie(read_file(replay_path));
                    end = replay(m);
                } catch (const std::invalid_argument& e) {
                    throw ValidationFailure(e.what());
                }
                std::cout << "ok: " << m.saddles() << " saddles, " << m.births() << " births, " << m.deaths()
                          << " deaths" << (m.ribbon() ? ", ribbon" : "") << "\n";
                return 0;
            }
            if (code.empty()) throw std::invalid_argument("slice needs a Gauss code or --replay");
            GaussDiagram d = parse_gauss_code(code);
            SliceStatus st = slice_status(d, depth, budget);
            // status as comments so the whole output replays
            std::cout << "# " << slice_kind_name(st.kind) << "\n";
            if (!st.reason.empty()) std::cout << "# " << st.reason << "\n";
            if (st.movie) std::cout << format_movie(*st.movie);
            return 0;
        }
    } catch (const ValidationFailure& e) {
        std::cerr << "validation failed: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

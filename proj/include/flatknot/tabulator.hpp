#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flatknot/based_matrix.hpp"
#include "flatknot/gauss.hpp"
#include "flatknot/moves.hpp"

namespace flatknot {

enum class TableFilter { all, checkerboard, almost_classical };
std::string filter_name(TableFilter f);
TableFilter parse_filter(const std::string& s);

// Necklace representatives of length 2n with n O's and n U's (O < U), in
// lexicographic order. Periodic words are included.
std::vector<std::string> lyndon_words(int n);

// Key packed into 64 bits (n <= 10); numeric order equals key order.
uint64_t pack_key(const OUMatching& m);

struct KnotClass {
    CanonicalKey key;        // least key over the four siblings
    GaussDiagram diagram;    // minimal diagram in canonical rotation with that key
    SymmetryType symmetry = SymmetryType::chiral;
};

struct EnumerateOptions {
    TableFilter filter = TableFilter::all;
    // generate only diagrams whose arrows join slots of opposite parity
    bool parity_patterns = false;
    // stop after the first words of the word list (full enumeration if 0)
    size_t word_limit = 0;
};

// All flat knot classes with exactly n crossings, sorted by key.
std::vector<KnotClass> enumerate_classes(int n, const EnumerateOptions& opt = {});

struct KnotRecord {
    std::string name;
    int crossings = 0;
    std::string gauss_code;
    std::string ou_word;
    std::vector<int> matching;
    int genus = 0;
    SymmetryType symmetry_type = SymmetryType::chiral;
    bool checkerboard = false;
    bool almost_classical = false;
    std::string u_poly;
    std::vector<long long> phi;
    Matrix based_matrix;
    Matrix primitive_based_matrix;
    std::string inner_char;
    std::string outer_char;
    int algebraic_genus = 0;
    std::optional<std::string> arrow_poly;
    std::optional<std::string> arrow_cable2;
    std::optional<long long> arrow_cable3_const;
    std::optional<std::string> jk;
    std::optional<std::string> jk_normalized;
    std::optional<std::string> jk_enhanced;
    std::optional<std::string> slice_status;
    bool operator==(const KnotRecord&) const = default;
};

struct Table {
    std::vector<KnotRecord> records;
    std::map<int, int> counts;  // crossings -> records
    int max_crossings = 0;
    TableFilter filter = TableFilter::all;
    std::string version = "1";
    bool operator==(const Table&) const = default;
};

// Record with the cheap invariants filled in.
KnotRecord make_record(const std::string& name, const GaussDiagram& minimal, SymmetryType sym);

enum class Invariant { phi, arrow, arrow2, arrow3_const, jk, jk_enhanced, u_poly };
std::string invariant_name(Invariant i);
Invariant parse_invariant(const std::string& s);

// Fill an expensive optional field of the record from its diagram.
void compute_invariant(KnotRecord& r, Invariant which);

struct TabulateOptions {
    TableFilter filter = TableFilter::all;
    int min_crossings = 1;
    bool parity_patterns = true;  // fast path for the cc and ac filters
    std::vector<Invariant> extra;  // optional invariants computed for every record
    std::function<void(int crossings, size_t classes)> progress;
};

Table tabulate(int max_crossings, const TabulateOptions& opt = {});

std::string record_name(TableFilter f, int crossings, size_t rank);

struct DistinguishReport {
    std::map<int, int> non_distinguished;          // crossings -> count
    std::vector<std::vector<std::string>> groups;  // names sharing a battery value
};

// Records are knot types: each invariant is compared as the set of its values
// over the four symmetry siblings. A record counts as non-distinguished when a
// record of at most its crossing number has the same values for the whole battery.
// Values missing from a record are computed from its diagram.
DistinguishReport distinguish_report(const Table& t, const std::vector<Invariant>& battery);

std::string export_jsonl(const Table& t);
void export_jsonl(const Table& t, const std::string& path);
Table import_jsonl_text(const std::string& text);
Table import_jsonl(const std::string& path);

// One JSONL record line, without the newline.
std::string record_json(const KnotRecord& r);

// Throws std::invalid_argument naming the record if its fields disagree.
void validate_record(const KnotRecord& r);

}  // namespace flatknot

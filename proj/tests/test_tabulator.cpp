#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "flatknot/tabulator.hpp"
#include "oracles.hpp"

using namespace flatknot;

namespace {

const Table& table5() {
    static const Table t = tabulate(5);
    return t;
}

CanonicalKey class_key(const GaussDiagram& d) {
    GaussDiagram m = from_ou_matching(canonical_key(d));
    CanonicalKey k = orbit_key(m);
    for (auto s : {Symmetry::reverse, Symmetry::mirror, Symmetry::reverse_mirror})
        k = std::min(k, orbit_key(symmetry_transform(m, s)));
    return k;
}

}  // namespace

TEST_SUITE("tabulator") {

TEST_CASE("necklace words agree with brute force") {
    for (int n = 1; n <= 6; ++n) {
        std::set<std::string> brute;
        std::string w(n, 'O');
        w += std::string(n, 'U');
        std::sort(w.begin(), w.end());
        do {
            std::string best = w;
            for (int r = 1; r < 2 * n; ++r) best = std::min(best, w.substr(r) + w.substr(0, r));
            brute.insert(best);
        } while (std::next_permutation(w.begin(), w.end()));
        auto words = lyndon_words(n);
        CHECK(std::is_sorted(words.begin(), words.end()));
        CHECK(std::set<std::string>(words.begin(), words.end()) == brute);
        CHECK(words.size() == brute.size());
    }
}

TEST_CASE("packed keys sort like keys") {
    std::mt19937 rng(61);
    std::vector<OUMatching> keys;
    for (int i = 0; i < 200; ++i) keys.push_back(ou_matching(oracle::random_knot_diagram(5, rng)));
    for (size_t i = 0; i + 1 < keys.size(); ++i)
        CHECK((keys[i] < keys[i + 1]) == (pack_key(keys[i]) < pack_key(keys[i + 1])));
}

TEST_CASE("counts through 5 crossings and names") {
    const Table& t = table5();
    CHECK(t.counts.at(3) == 1);
    CHECK(t.counts.at(4) == 11);
    CHECK(t.counts.at(5) == 120);
    CHECK(t.records.size() == 132);
    CHECK(t.records.front().name == "3.1");
    CHECK(t.records.front().gauss_code == "O1O2O3U1U3U2");
    CHECK(t.records.back().name == "5.120");
    CHECK(record_name(TableFilter::almost_classical, 8, 19) == "ac8.19");
    CHECK(record_name(TableFilter::checkerboard, 4, 1) == "cc4.1");
    // 5.1 has the least word among 5-crossing knots
    CHECK(t.records[12].name == "5.1");
    CHECK(t.records[12].gauss_code == "O1O2O3O4O5U1U2U3U5U4");
}

TEST_CASE("naming is stable across runs") { CHECK(tabulate(5) == table5()); }

TEST_CASE("every record is internally consistent") {
    for (const auto& r : table5().records) CHECK_NOTHROW(validate_record(r));
}

TEST_CASE("random diagrams reduce into the table") {
    std::set<CanonicalKey> keys;
    for (const auto& r : table5().records) keys.insert({r.ou_word, r.matching});
    std::mt19937 rng(67);
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        GaussDiagram d = oracle::random_knot_diagram(1 + trial % 7, rng);
        CanonicalKey k = canonical_key(d);
        int cr = static_cast<int>(k.matching.size());
        if (cr < 3 || cr > 5) continue;
        ++checked;
        CHECK(keys.count(class_key(d)) == 1);
    }
    CHECK(checked > 50);
}

TEST_CASE("checkerboard and almost classical tables are subsets of the full table") {
    Table full = tabulate(6);
    std::map<CanonicalKey, const KnotRecord*> by_key;
    for (const auto& r : full.records) by_key[{r.ou_word, r.matching}] = &r;
    for (TableFilter f : {TableFilter::checkerboard, TableFilter::almost_classical}) {
        TabulateOptions fast, slow;
        fast.filter = slow.filter = f;
        slow.parity_patterns = false;
        Table a = tabulate(6, fast), b = tabulate(6, slow);
        CHECK(a == b);
        for (const auto& r : a.records) {
            auto it = by_key.find({r.ou_word, r.matching});
            REQUIRE(it != by_key.end());
            CHECK(it->second->checkerboard);
            if (f == TableFilter::almost_classical) CHECK(it->second->almost_classical);
        }
        int expected = 0;
        for (const auto& r : full.records)
            expected += f == TableFilter::checkerboard ? r.checkerboard : r.almost_classical;
        CHECK(static_cast<int>(a.records.size()) == expected);
    }
}

TEST_CASE("JSONL round trip") {
    Table t = tabulate(4);
    compute_invariant(t.records[0], Invariant::arrow);
    compute_invariant(t.records[0], Invariant::jk);
    t.records[0].slice_status = "not_slice";
    std::string text = export_jsonl(t);
    CHECK(std::count(text.begin(), text.end(), '\n') == 13);
    CHECK(text.rfind("{", 0) == 0);
    CHECK(text.find("\"schema_version\":1") < text.find('\n'));
    CHECK(import_jsonl_text(text) == t);
}

TEST_CASE("export of the 5-crossing table has 132 records") {
    std::string text = export_jsonl(table5());
    CHECK(std::count(text.begin(), text.end(), '\n') == 133);
}

TEST_CASE("import rejects bad records with the record name") {
    Table t = tabulate(4);
    KnotRecord bad = t.records[3];
    bad.crossings = 5;
    Table t2 = t;
    t2.records[3] = bad;
    std::string msg;
    try {
        import_jsonl_text(export_jsonl(t2));
    } catch (const std::invalid_argument& e) {
        msg = e.what();
    }
    CHECK(msg.find(bad.name) != std::string::npos);
    CHECK(msg.find("crossings") != std::string::npos);

    Table t3 = t;
    t3.records[1].u_poly = "t";
    CHECK_THROWS_WITH_AS(import_jsonl_text(export_jsonl(t3)), doctest::Contains(t.records[1].name.c_str()),
                         std::invalid_argument);
    Table t4 = t;
    t4.records[2].checkerboard = !t4.records[2].checkerboard;
    CHECK_THROWS_AS(import_jsonl_text(export_jsonl(t4)), std::invalid_argument);
}

TEST_CASE("import rejects malformed input") {
    CHECK_THROWS_AS(import_jsonl_text(""), std::invalid_argument);
    CHECK_THROWS_AS(import_jsonl_text("{\"name\":\"3.1\"}\n"), std::invalid_argument);
    std::string head = export_jsonl(Table{});
    CHECK_THROWS_WITH_AS(import_jsonl_text(head + "{not json\n"), doctest::Contains("line 2"), std::invalid_argument);
    CHECK_THROWS_AS(import_jsonl_text(head + "{\"name\":\"x\",\"crossings\":3}\n"), std::invalid_argument);
}

TEST_CASE("invariant names") {
    for (auto i : {Invariant::phi, Invariant::arrow, Invariant::arrow2, Invariant::arrow3_const, Invariant::jk,
                   Invariant::jk_enhanced, Invariant::u_poly})
        CHECK(parse_invariant(invariant_name(i)) == i);
    CHECK_THROWS(parse_invariant("bogus"));
    CHECK(parse_filter(filter_name(TableFilter::checkerboard)) == TableFilter::checkerboard);
}

TEST_CASE("phi leaves the two printed 5-crossing pairs") {
    DistinguishReport r = distinguish_report(table5(), {Invariant::phi});
    CHECK(r.non_distinguished[3] == 0);
    CHECK(r.non_distinguished[4] == 0);
    CHECK(r.non_distinguished[5] == 8);
    auto has = [&](std::vector<std::string> g) {
        return std::find(r.groups.begin(), r.groups.end(), g) != r.groups.end();
    };
    CHECK(has({"5.47", "5.65"}));
    CHECK(has({"5.89", "5.104"}));
}

}

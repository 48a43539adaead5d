#pragma once

#include <map>
#include <string>
#include <vector>

namespace flatknot {

// One arrow end on the skeleton. Tails are written O, heads U.
struct Endpoint {
    int arrow = 0;
    bool head = false;
    bool operator==(const Endpoint&) const = default;
};

struct Slot {
    int circle = 0;
    int pos = 0;
    bool operator==(const Slot&) const = default;
};

// Skeleton circles, each a cyclic list of endpoints read counterclockwise
// from 12 o'clock. Arrow ids are 0..n-1.
struct GaussDiagram {
    std::vector<std::vector<Endpoint>> circles{{}};

    int components() const { return static_cast<int>(circles.size()); }
    int num_arrows() const;
    int num_slots() const;
    bool operator==(const GaussDiagram&) const = default;

    // tail/head slot of every arrow; throws if the diagram is malformed
    std::vector<Slot> tails() const;
    std::vector<Slot> heads() const;
    void validate() const;
};

GaussDiagram unknot();

GaussDiagram parse_gauss_code(const std::string& text);
std::string serialize_gauss_code(const GaussDiagram& d);

// Renumber arrows by order of first appearance.
GaussDiagram normalize_labels(const GaussDiagram& d);

// Rotate circle c so that slot k becomes slot 0.
GaussDiagram rotate(const GaussDiagram& d, int k, int circle = 0);

struct OUMatching {
    std::string ou_word;
    std::vector<int> matching;  // matching[i] = number of the O paired with the (i+1)-th U
    bool operator==(const OUMatching&) const = default;
    auto operator<=>(const OUMatching&) const = default;
};

std::string ou_word(const GaussDiagram& d);
// Matching read from slot 0 without rotating.
OUMatching ou_matching_raw(const GaussDiagram& d);
// Matching read from the rotation giving the least (word, matching).
OUMatching ou_matching(const GaussDiagram& d);
GaussDiagram from_ou_matching(const OUMatching& m);
std::string format_ou_matching(const OUMatching& m);
OUMatching parse_ou_matching(const std::string& text);

// Rotation of a knot diagram achieving the least (word, matching), labels normalized.
GaussDiagram canonical_rotation(const GaussDiagram& d);

enum class Symmetry { reverse, mirror, reverse_mirror };
GaussDiagram symmetry_transform(const GaussDiagram& d, Symmetry kind);

std::vector<int> arrow_indices(const GaussDiagram& d);
bool mod_p_numberable(const GaussDiagram& d, int p);
bool almost_classical(const GaussDiagram& d);
bool checkerboard_colorable(const GaussDiagram& d);

// degree -> coefficient, zero coefficients never stored
using UPolynomial = std::map<int, long long>;
UPolynomial u_polynomial(const GaussDiagram& d);
std::string format_u_polynomial(const UPolynomial& u);

GaussDiagram delete_arrows(const GaussDiagram& d, const std::vector<bool>& drop);
GaussDiagram covering(const GaussDiagram& d, int r);
GaussDiagram cable(const GaussDiagram& d, int n);
// Splice the two knots at the gaps just before slot1 of d1 and slot2 of d2.
GaussDiagram connected_sum(const GaussDiagram& d1, int slot1, const GaussDiagram& d2, int slot2);
bool is_alternating_pattern(const GaussDiagram& d);

}  // namespace flatknot

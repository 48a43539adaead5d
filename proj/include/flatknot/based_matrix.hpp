#pragma once

#include <string>
#include <vector>

#include "flatknot/gauss.hpp"

namespace flatknot {

// Square integer matrix; for based matrices row/column 0 is the core element.
using Matrix = std::vector<std::vector<long long>>;

// Univariate integer polynomial, coefficient of t^k at index k.
using IntPoly = std::vector<long long>;

Matrix based_matrix(const GaussDiagram& d);
bool is_skew(const Matrix& m);
Matrix submatrix(const Matrix& m, const std::vector<int>& keep);

struct ReductionStep {
    enum Kind { annihilating, core, complementary } kind;
    std::vector<int> removed;  // indices in the matrix at the time of removal
};

Matrix primitive_reduce(const Matrix& t, std::vector<ReductionStep>* steps = nullptr);
bool is_primitive(const Matrix& t);

// Subdiagonal entries read column by column.
std::vector<long long> phi_reading(const Matrix& m);
// Least reading over simultaneous permutations of rows/columns 1..n.
std::vector<long long> phi_of_matrix(const Matrix& primitive);
std::vector<long long> phi_invariant(const GaussDiagram& d);

IntPoly poly_trim(IntPoly p);
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
IntPoly poly_sub(const IntPoly& a, const IntPoly& b);
// Exact division; throws if the remainder is nonzero.
IntPoly poly_div_exact(const IntPoly& a, const IntPoly& b);
std::string format_poly(const IntPoly& p, const std::string& var = "t");

// det(tI - M) by fraction-free elimination over Z[t].
IntPoly char_poly_bareiss(const Matrix& m);
// det(tI - M) by cofactor expansion, memoized over column subsets.
IntPoly char_poly_cofactor(const Matrix& m);

struct CharPolyPair {
    IntPoly inner;  // det(tI - T) with the core row and column removed
    IntPoly outer;  // det(tI - T)
    bool operator==(const CharPolyPair&) const = default;
};
CharPolyPair characteristic_polynomials(const Matrix& primitive);

long long det_bareiss(const Matrix& m);
int integer_rank(const Matrix& m);

using Filling = std::vector<std::vector<int>>;  // blocks of 1-based arrow indices
Matrix filled_matrix(const Matrix& t, const Filling& f);
// Half the least rank over all fillings; witness receives a minimizing filling.
int algebraic_genus(const Matrix& t, Filling* witness = nullptr);
std::string format_filling(const Filling& f);

std::string format_matrix(const Matrix& m);

// Knot diagrams, labelled by first appearance from slot 0, whose based matrix
// is exactly t. Stops after limit solutions when limit > 0.
std::vector<GaussDiagram> realize_based_matrix(const Matrix& t, size_t limit = 0);

}  // namespace flatknot

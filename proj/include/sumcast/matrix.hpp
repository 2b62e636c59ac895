#ifndef SUMCAST_MATRIX_HPP
#define SUMCAST_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "sumcast/field.hpp"

namespace sumcast {

// Dense row-major matrix of canonical field elements.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<FieldElem> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
    static Matrix from_rows(const std::vector<std::vector<FieldElem>>& rs);

    FieldElem& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    FieldElem at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
    void append_row(const std::vector<FieldElem>& row);
};

// Rank by row reduction: first-nonzero pivot per column, row order as tiebreak.
std::size_t mat_rank(const Field& f, Matrix m);

// Determinant of a square matrix, by elimination.
FieldElem mat_det(const Field& f, Matrix m);

struct SpanResult {
    bool in_span = false;
    std::vector<FieldElem> coeffs; // per row of the generating matrix, valid iff in_span
    std::size_t rank_rows = 0;     // rank of the generators
    std::size_t rank_aug = 0;      // rank with the target stacked on top
};

// Is target a linear combination of the rows?  Yes: coefficients reproducing it
// exactly; no: certified by rank_aug > rank_rows.
SpanResult in_span(const Field& f, const std::vector<FieldElem>& target, const Matrix& rows);

std::vector<FieldElem> vec_add(const Field& f, std::vector<FieldElem> a, const std::vector<FieldElem>& b);
std::vector<FieldElem> vec_scale(const Field& f, FieldElem c, std::vector<FieldElem> v);
bool vec_is_zero(const std::vector<FieldElem>& v);

} // namespace sumcast

#endif

#include "sumcast/matrix.hpp"

#include <stdexcept>

namespace sumcast {

Matrix Matrix::from_rows(const std::vector<std::vector<FieldElem>>& rs) {
    Matrix m;
    for (const auto& r : rs) m.append_row(r);
    return m;
}

void Matrix::append_row(const std::vector<FieldElem>& row) {
    if (rows == 0 && cols == 0) cols = row.size();
    if (row.size() != cols) throw std::invalid_argument("row length mismatch");
    a.insert(a.end(), row.begin(), row.end());
    ++rows;
}

namespace {

// In-place forward elimination; returns rank. Pivot choice: scan columns left
// to right, take the first row (current order) with a nonzero entry.
std::size_t eliminate(const Field& f, Matrix& m) {
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < m.cols && pivot_row < m.rows; ++col) {
        std::size_t sel = pivot_row;
        while (sel < m.rows && m.at(sel, col) == 0) ++sel;
        if (sel == m.rows) continue;
        if (sel != pivot_row)
            for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(sel, c), m.at(pivot_row, c));
        FieldElem pinv = f.inv(m.at(pivot_row, col));
        for (std::size_t r = pivot_row + 1; r < m.rows; ++r) {
            FieldElem factor = f.mul(m.at(r, col), pinv);
            if (factor == 0) continue;
            for (std::size_t c = col; c < m.cols; ++c)
                m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(pivot_row, c)));
        }
        ++pivot_row;
    }
    return pivot_row;
}

} // namespace

std::size_t mat_rank(const Field& f, Matrix m) { return eliminate(f, m); }

FieldElem mat_det(const Field& f, Matrix m) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square matrix");
    FieldElem det = f.one();
    std::size_t n = m.rows;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && m.at(sel, col) == 0) ++sel;
        if (sel == n) return f.zero();
        if (sel != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m.at(sel, c), m.at(col, c));
            det = f.neg(det);
        }
        det = f.mul(det, m.at(col, col));
        FieldElem pinv = f.inv(m.at(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            FieldElem factor = f.mul(m.at(r, col), pinv);
            if (factor == 0) continue;
            for (std::size_t c = col; c < n; ++c)
                m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(col, c)));
        }
    }
    return det;
}

SpanResult in_span(const Field& f, const std::vector<FieldElem>& target, const Matrix& rows) {
    if (rows.rows > 0 && target.size() != rows.cols)
        throw std::invalid_argument("target length does not match row width");
    SpanResult res;
    res.rank_rows = mat_rank(f, rows);
    {
        Matrix aug = rows;
        if (aug.cols == 0) aug.cols = target.size();
        aug.append_row(target);
        res.rank_aug = mat_rank(f, aug);
    }
    if (res.rank_aug > res.rank_rows) {
        res.in_span = false;
        return res;
    }
    // Solve M x = target where column i of M is row i of the generators.
    std::size_t n = target.size(), k = rows.rows;
    Matrix sys(n, k + 1);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < k; ++i) sys.at(j, i) = rows.at(i, j);
        sys.at(j, k) = target[j];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t pr = 0;
    for (std::size_t col = 0; col < k && pr < n; ++col) {
        std::size_t sel = pr;
        while (sel < n && sys.at(sel, col) == 0) ++sel;
        if (sel == n) continue;
        if (sel != pr)
            for (std::size_t c = 0; c <= k; ++c) std::swap(sys.at(sel, c), sys.at(pr, c));
        FieldElem pinv = f.inv(sys.at(pr, col));
        for (std::size_t c = col; c <= k; ++c) sys.at(pr, c) = f.mul(sys.at(pr, c), pinv);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == pr) continue;
            FieldElem factor = sys.at(r, col);
            if (factor == 0) continue;
            for (std::size_t c = col; c <= k; ++c)
                sys.at(r, c) = f.sub(sys.at(r, c), f.mul(factor, sys.at(pr, c)));
        }
        pivot_col.push_back(col);
        ++pr;
    }
    // consistency was certified by the rank comparison; free variables stay 0
    res.coeffs.assign(k, 0);
    for (std::size_t r = 0; r < pivot_col.size(); ++r) res.coeffs[pivot_col[r]] = sys.at(r, k);
    res.in_span = true;
    return res;
}

std::vector<FieldElem> vec_add(const Field& f, std::vector<FieldElem> a, const std::vector<FieldElem>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = f.add(a[i], b[i]);
    return a;
}

std::vector<FieldElem> vec_scale(const Field& f, FieldElem c, std::vector<FieldElem> v) {
    for (auto& x : v) x = f.mul(c, x);
    return v;
}

bool vec_is_zero(const std::vector<FieldElem>& v) {
    for (auto x : v)
        if (x != 0) return false;
    return true;
}

} // namespace sumcast

#include "penalfd/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "penalfd/errors.hpp"

namespace penalfd {

SparseMatrix SparseMatrix::from_triplets(std::size_t dim, std::vector<Triplet> triplets) {
    for (const Triplet& t : triplets)
        if (t.row >= dim || t.col >= dim)
            throw InvalidArgument("triplet (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                                  ") outside a matrix of order " + std::to_string(dim));
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    SparseMatrix m;
    m.dim_ = dim;
    m.row_offsets_.assign(dim + 1, 0);
    m.col_indices_.reserve(triplets.size());
    m.values_.reserve(triplets.size());
    for (std::size_t k = 0; k < triplets.size();) {
        const std::size_t row = triplets[k].row;
        const std::size_t col = triplets[k].col;
        double sum = 0.0;
        for (; k < triplets.size() && triplets[k].row == row && triplets[k].col == col; ++k) sum += triplets[k].value;
        if (sum == 0.0) continue;
        m.col_indices_.push_back(col);
        m.values_.push_back(sum);
        ++m.row_offsets_[row + 1];
    }
    for (std::size_t r = 0; r < dim; ++r) m.row_offsets_[r + 1] += m.row_offsets_[r];
    return m;
}

SparseMatrix SparseMatrix::from_csr(std::size_t dim, std::vector<std::size_t> row_offsets,
                                    std::vector<std::size_t> col_indices, std::vector<double> values) {
    if (row_offsets.size() != dim + 1 || row_offsets.front() != 0 || row_offsets.back() != col_indices.size() ||
        col_indices.size() != values.size())
        throw InvalidArgument("inconsistent CSR array sizes");
    for (std::size_t r = 0; r < dim; ++r) {
        if (row_offsets[r] > row_offsets[r + 1]) throw InvalidArgument("CSR row offsets must be non-decreasing");
        for (std::size_t k = row_offsets[r]; k < row_offsets[r + 1]; ++k) {
            if (col_indices[k] >= dim) throw InvalidArgument("CSR column index out of range");
            if (k > row_offsets[r] && col_indices[k] <= col_indices[k - 1])
                throw InvalidArgument("CSR columns must be strictly increasing within a row");
        }
    }
    SparseMatrix m;
    m.dim_ = dim;
    m.row_offsets_ = std::move(row_offsets);
    m.col_indices_ = std::move(col_indices);
    m.values_ = std::move(values);
    return m;
}

SparseMatrix SparseMatrix::identity(std::size_t dim) {
    std::vector<std::size_t> offsets(dim + 1);
    std::vector<std::size_t> cols(dim);
    for (std::size_t r = 0; r <= dim; ++r) offsets[r] = r;
    for (std::size_t r = 0; r < dim; ++r) cols[r] = r;
    return from_csr(dim, std::move(offsets), std::move(cols), std::vector<double>(dim, 1.0));
}

std::span<const std::size_t> SparseMatrix::row_cols(std::size_t row) const {
    return std::span<const std::size_t>(col_indices_).subspan(row_offsets_[row], row_offsets_[row + 1] - row_offsets_[row]);
}

std::span<const double> SparseMatrix::row_values(std::size_t row) const {
    return std::span<const double>(values_).subspan(row_offsets_[row], row_offsets_[row + 1] - row_offsets_[row]);
}

double SparseMatrix::at(std::size_t row, std::size_t col) const {
    const auto cols = row_cols(row);
    const auto it = std::lower_bound(cols.begin(), cols.end(), col);
    if (it == cols.end() || *it != col) return 0.0;
    return values_[row_offsets_[row] + static_cast<std::size_t>(it - cols.begin())];
}

std::vector<double> SparseMatrix::diagonal() const {
    std::vector<double> d(dim_);
    for (std::size_t r = 0; r < dim_; ++r) d[r] = at(r, r);
    return d;
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    if (x.size() != dim_ || y.size() != dim_) throw InvalidArgument("matrix-vector size mismatch");
    for (std::size_t r = 0; r < dim_; ++r) {
        double s = 0.0;
        for (std::size_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) s += values_[k] * x[col_indices_[k]];
        y[r] = s;
    }
}

std::vector<double> SparseMatrix::multiply(std::span<const double> x) const {
    std::vector<double> y(dim_);
    multiply(x, y);
    return y;
}

void SparseMatrix::multiply_transpose(std::span<const double> x, std::span<double> y) const {
    if (x.size() != dim_ || y.size() != dim_) throw InvalidArgument("matrix-vector size mismatch");
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) y[col_indices_[k]] += values_[k] * x[r];
}

double SparseMatrix::norm_inf() const {
    double best = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        double s = 0.0;
        for (std::size_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) s += std::abs(values_[k]);
        best = std::max(best, s);
    }
    return best;
}

SparseMatrix SparseMatrix::scale_rows(std::span<const double> scale) const {
    if (scale.size() != dim_) throw InvalidArgument("row scaling size mismatch");
    SparseMatrix m = *this;
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) m.values_[k] *= scale[r];
    return m;
}

double norm_inf(std::span<const double> v) {
    double best = 0.0;
    for (double x : v) best = std::max(best, std::abs(x));
    return best;
}

}  // namespace penalfd

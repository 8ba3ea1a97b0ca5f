#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace penalfd {

struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
};

// Compressed sparse row matrix. Columns are strictly increasing within a row
// and exact zeros are not stored.
class SparseMatrix {
public:
    SparseMatrix() = default;

    // Duplicates are summed; entries that sum to exactly zero are dropped.
    static SparseMatrix from_triplets(std::size_t dim, std::vector<Triplet> triplets);
    // Takes CSR arrays as-is after checking the invariants.
    static SparseMatrix from_csr(std::size_t dim, std::vector<std::size_t> row_offsets,
                                 std::vector<std::size_t> col_indices, std::vector<double> values);
    static SparseMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    std::size_t nnz() const { return values_.size(); }

    std::span<const std::size_t> row_offsets() const { return row_offsets_; }
    std::span<const std::size_t> col_indices() const { return col_indices_; }
    std::span<const double> values() const { return values_; }

    std::span<const std::size_t> row_cols(std::size_t row) const;
    std::span<const double> row_values(std::size_t row) const;

    // Stored value or 0.
    double at(std::size_t row, std::size_t col) const;
    std::vector<double> diagonal() const;

    void multiply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> multiply(std::span<const double> x) const;
    void multiply_transpose(std::span<const double> x, std::span<double> y) const;

    // Max absolute row sum.
    double norm_inf() const;

    // Left scaling: row r multiplied by scale[r].
    SparseMatrix scale_rows(std::span<const double> scale) const;

    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<std::size_t> row_offsets_{0};
    std::vector<std::size_t> col_indices_;
    std::vector<double> values_;
};

double norm_inf(std::span<const double> v);

// Sparse LU with partial pivoting; one factorization answers solves with A
// and with its transpose.
class LuFactorization {
public:
    explicit LuFactorization(const SparseMatrix& a);
    ~LuFactorization();
    LuFactorization(LuFactorization&&) noexcept;
    LuFactorization& operator=(LuFactorization&&) noexcept;
    LuFactorization(const LuFactorization&) = delete;
    LuFactorization& operator=(const LuFactorization&) = delete;

    std::size_t dim() const;
    std::vector<double> solve(std::span<const double> b) const;
    std::vector<double> solve_transpose(std::span<const double> b) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// MatrixMarket coordinate real general.
void write_matrix_market(std::ostream& out, const SparseMatrix& a);
void write_matrix_market(const std::string& path, const SparseMatrix& a);
SparseMatrix read_matrix_market(std::istream& in);
SparseMatrix read_matrix_market(const std::string& path);

}  // namespace penalfd

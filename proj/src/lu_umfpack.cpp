#include <umfpack.h>

#include <string>
#include <vector>

#include "penalfd/errors.hpp"
#include "penalfd/sparse.hpp"

namespace penalfd {

// The CSR arrays of A are the CSC arrays of A^T, so UMFPACK factors A^T.
// Solving with UMFPACK_At then answers A x = b and UMFPACK_A answers A^T x = b.
struct LuFactorization::Impl {
    std::vector<SuiteSparse_long> cols_ptr;
    std::vector<SuiteSparse_long> row_idx;
    std::vector<double> vals;
    void* numeric = nullptr;
    double control[UMFPACK_CONTROL];

    ~Impl() {
        if (numeric) umfpack_dl_free_numeric(&numeric);
    }

    std::vector<double> run(int sys, std::span<const double> b) const {
        if (b.size() + 1 != cols_ptr.size()) throw InvalidArgument("LU solve: right-hand side size mismatch");
        std::vector<double> x(b.size());
        double info[UMFPACK_INFO];
        const SuiteSparse_long status = umfpack_dl_solve(sys, cols_ptr.data(), row_idx.data(), vals.data(), x.data(),
                                                         b.data(), numeric, control, info);
        if (status != UMFPACK_OK && status != UMFPACK_WARNING_singular_matrix)
            throw SolverError("UMFPACK solve failed with status " + std::to_string(status), 0, 0.0);
        return x;
    }
};

LuFactorization::LuFactorization(const SparseMatrix& a) : impl_(std::make_unique<Impl>()) {
    Impl& m = *impl_;
    m.cols_ptr.assign(a.row_offsets().begin(), a.row_offsets().end());
    m.row_idx.assign(a.col_indices().begin(), a.col_indices().end());
    m.vals.assign(a.values().begin(), a.values().end());
    umfpack_dl_defaults(m.control);

    const auto n = static_cast<SuiteSparse_long>(a.dim());
    void* symbolic = nullptr;
    double info[UMFPACK_INFO];
    SuiteSparse_long status =
        umfpack_dl_symbolic(n, n, m.cols_ptr.data(), m.row_idx.data(), m.vals.data(), &symbolic, m.control, info);
    if (status != UMFPACK_OK) {
        if (symbolic) umfpack_dl_free_symbolic(&symbolic);
        throw SolverError("UMFPACK symbolic factorization failed with status " + std::to_string(status), 0, 0.0);
    }
    status = umfpack_dl_numeric(m.cols_ptr.data(), m.row_idx.data(), m.vals.data(), symbolic, &m.numeric, m.control, info);
    umfpack_dl_free_symbolic(&symbolic);
    if (status == UMFPACK_WARNING_singular_matrix)
        throw SolverError("LU factorization hit a zero pivot (matrix is singular)", 0, 0.0);
    if (status != UMFPACK_OK)
        throw SolverError("UMFPACK numeric factorization failed with status " + std::to_string(status), 0, 0.0);
}

LuFactorization::~LuFactorization() = default;
LuFactorization::LuFactorization(LuFactorization&&) noexcept = default;
LuFactorization& LuFactorization::operator=(LuFactorization&&) noexcept = default;

std::size_t LuFactorization::dim() const { return impl_->cols_ptr.size() - 1; }

std::vector<double> LuFactorization::solve(std::span<const double> b) const { return impl_->run(UMFPACK_At, b); }

std::vector<double> LuFactorization::solve_transpose(std::span<const double> b) const {
    return impl_->run(UMFPACK_A, b);
}

}  // namespace penalfd

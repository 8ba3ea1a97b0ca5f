#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "penalfd/sparse.hpp"

namespace penalfd {

// A_h X_h = B_h.
struct AssembledSystem {
    SparseMatrix matrix;
    std::vector<double> rhs;
};

enum class SolveMethod { Auto, DirectLU, BiCGStab };

struct SolverOptions {
    SolveMethod method = SolveMethod::Auto;
    double tol = 1e-10;
    // 0 selects 20 * dim.
    std::size_t max_iter = 0;
    // Auto picks DirectLU up to this matrix order, BiCGStab with Jacobi above.
    std::size_t direct_max_dim = 1001 * 1001;
    bool jacobi = true;
};

struct SolveReport {
    std::vector<double> solution;
    SolveMethod method = SolveMethod::DirectLU;
    std::size_t iterations = 0;
    // ||AX - B||_inf / max(1, ||B||_inf)
    double final_residual = 0.0;
    bool preconditioned = false;
};

// Relative residual used for every acceptance test on a solve.
double relative_residual(const AssembledSystem& system, std::span<const double> x);

SolveReport solve(const AssembledSystem& system, const SolverOptions& options = {});

// Jacobi-preconditioned BiCGStab on the raw system.
SolveReport solve_bicgstab(const AssembledSystem& system, double tol, std::size_t max_iter, bool jacobi);
SolveReport solve_direct(const AssembledSystem& system, double tol);

// (D^-1 A, D^-1 B) with D = diag(A). Throws on a zero diagonal entry.
AssembledSystem jacobi_precondition(const AssembledSystem& system);

// ||A||_inf: an upper bound on kappa_inf(A) when ||A^-1||_inf <= 1, which
// holds for the first-order upwind scheme.
double cond_inf_bound(const SparseMatrix& a);

struct Cond2Estimate {
    double kappa = 0.0;
    double sigma_max = 0.0;
    double sigma_min = 0.0;
    std::size_t iterations = 0;
    // false when the power iterations stopped on the iteration budget
    bool converged = false;
};

// Matrices above this order are refused (a fresh LU is needed for sigma_min).
inline constexpr std::size_t kCond2MaxDim = 151 * 151;

// kappa_2 from power iteration on A^T A (sigma_max) and inverse power
// iteration through the LU factors (sigma_min).
Cond2Estimate cond2_estimate(const SparseMatrix& a, std::size_t iters = 500, double rel_tol = 1e-8);

}  // namespace penalfd

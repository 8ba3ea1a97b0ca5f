#include "penalfd/linear_solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "penalfd/errors.hpp"

namespace penalfd {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void check_square(const AssembledSystem& system) {
    if (system.rhs.size() != system.matrix.dim())
        throw InvalidArgument("right-hand side has " + std::to_string(system.rhs.size()) +
                              " entries for a matrix of order " + std::to_string(system.matrix.dim()));
}

double residual_scale(const AssembledSystem& system) { return std::max(1.0, norm_inf(system.rhs)); }

std::vector<double> residual(const AssembledSystem& system, std::span<const double> x) {
    std::vector<double> r = system.matrix.multiply(x);
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = system.rhs[k] - r[k];
    return r;
}

// Deterministic start vector for the power iterations.
std::vector<double> start_vector(std::size_t n) {
    std::mt19937_64 gen(0x5eedULL);
    std::vector<double> v(n);
    for (double& x : v) x = 0.5 + static_cast<double>(gen() >> 11) * 0x1.0p-53;
    const double nv = norm2(v);
    for (double& x : v) x /= nv;
    return v;
}

}  // namespace

double relative_residual(const AssembledSystem& system, std::span<const double> x) {
    check_square(system);
    const std::vector<double> r = residual(system, x);
    return norm_inf(r) / residual_scale(system);
}

SolveReport solve_direct(const AssembledSystem& system, double tol) {
    check_square(system);
    SolveReport rep;
    rep.method = SolveMethod::DirectLU;
    const LuFactorization lu(system.matrix);
    rep.solution = lu.solve(system.rhs);
    rep.final_residual = relative_residual(system, rep.solution);
    // a few refinement sweeps for badly scaled systems
    for (int sweep = 0; sweep < 3 && rep.final_residual > tol; ++sweep) {
        const std::vector<double> r = residual(system, rep.solution);
        const std::vector<double> dx = lu.solve(r);
        std::vector<double> x = rep.solution;
        for (std::size_t k = 0; k < x.size(); ++k) x[k] += dx[k];
        const double res = relative_residual(system, x);
        if (!(res < rep.final_residual)) break;
        rep.solution = std::move(x);
        rep.final_residual = res;
    }
    if (!(rep.final_residual <= tol))
        throw SolverError("direct solve residual " + std::to_string(rep.final_residual) + " exceeds tolerance", 0,
                          rep.final_residual);
    return rep;
}

SolveReport solve_bicgstab(const AssembledSystem& system, double tol, std::size_t max_iter, bool jacobi) {
    check_square(system);
    if (!(tol > 0.0)) throw InvalidArgument("iterative solve needs tol > 0");
    const std::size_t n = system.matrix.dim();
    if (max_iter == 0) max_iter = 20 * n;

    std::vector<double> inv_diag(n, 1.0);
    if (jacobi) {
        const std::vector<double> d = system.matrix.diagonal();
        for (std::size_t k = 0; k < n; ++k) {
            if (d[k] == 0.0) throw InvalidArgument("Jacobi preconditioner: zero diagonal at row " + std::to_string(k));
            inv_diag[k] = 1.0 / d[k];
        }
    }
    const SparseMatrix& a = system.matrix;
    const double target = tol * residual_scale(system);

    SolveReport rep;
    rep.method = SolveMethod::BiCGStab;
    rep.preconditioned = jacobi;
    rep.solution.assign(n, 0.0);
    std::vector<double>& x = rep.solution;

    std::vector<double> r = residual(system, x);
    std::vector<double> r_hat, p(n), v(n), y(n), s(n), z(n), t(n);
    std::size_t it = 0;
    while (it < max_iter) {
        // (re)start
        if (norm_inf(r) <= target) break;
        r_hat = r;
        std::fill(p.begin(), p.end(), 0.0);
        std::fill(v.begin(), v.end(), 0.0);
        double rho = 1.0, alpha = 1.0, omega = 1.0;
        bool restart = false;
        while (it < max_iter && !restart) {
            ++it;
            const double rho_new = dot(r_hat, r);
            if (rho_new == 0.0 || !std::isfinite(rho_new)) {
                restart = true;
                break;
            }
            const double beta = (rho_new / rho) * (alpha / omega);
            rho = rho_new;
            for (std::size_t k = 0; k < n; ++k) p[k] = r[k] + beta * (p[k] - omega * v[k]);
            for (std::size_t k = 0; k < n; ++k) y[k] = inv_diag[k] * p[k];
            a.multiply(y, v);
            const double rv = dot(r_hat, v);
            if (rv == 0.0) {
                restart = true;
                break;
            }
            alpha = rho / rv;
            for (std::size_t k = 0; k < n; ++k) s[k] = r[k] - alpha * v[k];
            if (norm_inf(s) <= target) {
                for (std::size_t k = 0; k < n; ++k) x[k] += alpha * y[k];
                r = residual(system, x);
                restart = true;
                break;
            }
            for (std::size_t k = 0; k < n; ++k) z[k] = inv_diag[k] * s[k];
            a.multiply(z, t);
            const double tt = dot(t, t);
            omega = tt > 0.0 ? dot(t, s) / tt : 0.0;
            for (std::size_t k = 0; k < n; ++k) x[k] += alpha * y[k] + omega * z[k];
            for (std::size_t k = 0; k < n; ++k) r[k] = s[k] - omega * t[k];
            if (omega == 0.0) {
                r = residual(system, x);
                restart = true;
                break;
            }
            if (norm_inf(r) <= target) {
                // confirm on the true residual
                r = residual(system, x);
                restart = true;
            }
        }
    }
    rep.iterations = it;
    rep.final_residual = relative_residual(system, x);
    if (!(rep.final_residual <= tol))
        throw SolverError("BiCGStab did not converge in " + std::to_string(it) + " iterations (residual " +
                              std::to_string(rep.final_residual) + ")",
                          it, rep.final_residual);
    return rep;
}

SolveReport solve(const AssembledSystem& system, const SolverOptions& options) {
    check_square(system);
    SolveMethod method = options.method;
    if (method == SolveMethod::Auto)
        method = system.matrix.dim() <= options.direct_max_dim ? SolveMethod::DirectLU : SolveMethod::BiCGStab;
    if (method == SolveMethod::DirectLU) return solve_direct(system, options.tol);
    return solve_bicgstab(system, options.tol, options.max_iter, options.jacobi);
}

AssembledSystem jacobi_precondition(const AssembledSystem& system) {
    check_square(system);
    std::vector<double> scale = system.matrix.diagonal();
    for (std::size_t k = 0; k < scale.size(); ++k) {
        if (scale[k] == 0.0) throw InvalidArgument("zero diagonal entry at row " + std::to_string(k));
        scale[k] = 1.0 / scale[k];
    }
    AssembledSystem out{system.matrix.scale_rows(scale), system.rhs};
    for (std::size_t k = 0; k < scale.size(); ++k) out.rhs[k] *= scale[k];
    return out;
}

double cond_inf_bound(const SparseMatrix& a) { return a.norm_inf(); }

Cond2Estimate cond2_estimate(const SparseMatrix& a, std::size_t iters, double rel_tol) {
    const std::size_t n = a.dim();
    if (n == 0) throw InvalidArgument("empty matrix");
    if (n > kCond2MaxDim)
        throw InvalidArgument("kappa_2 estimation refused for matrix order " + std::to_string(n) + " (limit " +
                              std::to_string(kCond2MaxDim) + ")");
    Cond2Estimate est;
    bool max_done = false, min_done = false;

    std::vector<double> v = start_vector(n), w(n), z(n);
    double lambda = 0.0;
    std::size_t k = 0;
    for (; k < iters; ++k) {
        a.multiply(v, w);
        a.multiply_transpose(w, z);
        const double next = norm2(z);
        if (next == 0.0) throw SolverError("matrix annihilates the power-iteration vector", k, 0.0);
        for (std::size_t m = 0; m < n; ++m) v[m] = z[m] / next;
        const bool settled = std::abs(next - lambda) <= rel_tol * next;
        lambda = next;
        if (settled) {
            max_done = true;
            break;
        }
    }
    est.sigma_max = std::sqrt(lambda);
    est.iterations = k;

    const LuFactorization lu(a);
    v = start_vector(n);
    double mu = 0.0;
    for (k = 0; k < iters; ++k) {
        const std::vector<double> u = lu.solve_transpose(v);
        z = lu.solve(u);
        const double next = norm2(z);
        if (!std::isfinite(next) || next == 0.0) throw SolverError("inverse iteration broke down", k, 0.0);
        for (std::size_t m = 0; m < n; ++m) v[m] = z[m] / next;
        const bool settled = std::abs(next - mu) <= rel_tol * next;
        mu = next;
        if (settled) {
            min_done = true;
            break;
        }
    }
    est.sigma_min = 1.0 / std::sqrt(mu);
    est.iterations = std::max(est.iterations, k);
    est.kappa = est.sigma_max / est.sigma_min;
    est.converged = max_done && min_done;
    return est;
}

}  // namespace penalfd

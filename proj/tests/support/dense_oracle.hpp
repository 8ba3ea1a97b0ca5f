#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "penalfd/assembly.hpp"
#include "penalfd/geometry.hpp"
#include "penalfd/sparse.hpp"

namespace oracle {

using Dense = std::vector<std::vector<double>>;

struct DenseSystem {
    Dense a;
    std::vector<double> b;
};

inline Dense to_dense(const penalfd::SparseMatrix& m) {
    Dense d(m.dim(), std::vector<double>(m.dim(), 0.0));
    for (std::size_t r = 0; r < m.dim(); ++r) {
        const auto cols = m.row_cols(r);
        const auto vals = m.row_values(r);
        for (std::size_t k = 0; k < cols.size(); ++k) d[r][cols[k]] += vals[k];
    }
    return d;
}

// Dense assembly of the penalized operator, one finite-difference term at a
// time: -Lap U + U + chi/eps (n.grad U + alpha U) = (1-chi) f + chi g / eps.
// chi, n and g are read from the extension fields at each node.
inline DenseSystem assemble(int N, const penalfd::PenalConfig& cfg, const penalfd::ExtensionFields& fields) {
    const int M = N + 1;
    const double h = 1.0 / N;
    const std::size_t dim = static_cast<std::size_t>(M) * M;
    DenseSystem s{Dense(dim, std::vector<double>(dim, 0.0)), std::vector<double>(dim, 0.0)};
    auto idx = [M](int i, int j) { return static_cast<std::size_t>(M * i + j); };
    const double R = cfg.domain.radius;
    const double tol = 1e-9 * h;

    for (int i = 0; i <= N; ++i) {
        for (int j = 0; j <= N; ++j) {
            const std::size_t n = idx(i, j);
            auto& row = s.a[n];
            if (i == 0 || j == 0 || i == N || j == N) {
                row[n] = 1.0;
                continue;
            }
            const double x = static_cast<double>(i) / N;
            const double y = static_cast<double>(j) / N;

            // -Lap U + U
            row[n] += 4.0 / (h * h) + 1.0;
            row[idx(i - 1, j)] -= 1.0 / (h * h);
            row[idx(i + 1, j)] -= 1.0 / (h * h);
            row[idx(i, j - 1)] -= 1.0 / (h * h);
            row[idx(i, j + 1)] -= 1.0 / (h * h);

            const int chi = fields.chi({x, y});
            if (chi == 0) {
                s.b[n] = cfg.source.f({x, y});
                continue;
            }
            const penalfd::Vec2 nv = fields.normal({x, y});
            const double cx = chi * nv.x / cfg.eps;
            const double cy = chi * nv.y / cfg.eps;

            // decide the one-sided direction: +1 forward, -1 backward
            int dir_x, dir_y;
            if (cfg.scheme == penalfd::Scheme::Upwind1) {
                dir_x = i <= N / 2 ? +1 : -1;
                dir_y = j <= N / 2 ? +1 : -1;
            } else if (cfg.domain.kind == penalfd::DomainKind::SquareInSquare) {
                if (x >= 0.5 + R - tol && y > 0.5 - R + tol) {
                    dir_x = -1;
                    dir_y = -1;
                } else if (x <= 0.5 - R + tol && y < 0.5 + R - tol) {
                    dir_x = +1;
                    dir_y = +1;
                } else if (x > 0.5 - R + tol && y <= 0.5 - R + tol) {
                    dir_x = -1;
                    dir_y = +1;
                } else {
                    dir_x = +1;
                    dir_y = -1;
                }
            } else {
                dir_x = nv.x >= 0.0 ? -1 : +1;
                dir_y = nv.y >= 0.0 ? -1 : +1;
            }

            auto one_sided = [&](double coef, int dir, bool along_x) {
                if (coef == 0.0) return;
                auto at = [&](int k) { return along_x ? idx(i + k * dir, j) : idx(i, j + k * dir); };
                const int pos = along_x ? i : j;
                const bool second = cfg.scheme == penalfd::Scheme::Upwind2 && pos + 2 * dir >= 0 && pos + 2 * dir <= N;
                if (second) {
                    // dU ~ dir * (-3 U0 + 4 U1 - U2) / (2h)
                    row[at(0)] += coef * dir * (-3.0) / (2.0 * h);
                    row[at(1)] += coef * dir * 4.0 / (2.0 * h);
                    row[at(2)] += coef * dir * (-1.0) / (2.0 * h);
                } else {
                    row[at(0)] += coef * dir * (-1.0) / h;
                    row[at(1)] += coef * dir / h;
                }
            };
            one_sided(cx, dir_x, true);
            one_sided(cy, dir_y, false);
            row[n] += chi * cfg.alpha / cfg.eps;
            s.b[n] = chi * fields.gdata({x, y}) / cfg.eps;
        }
    }
    return s;
}

// Gaussian elimination with partial pivoting.
inline std::vector<double> gauss_solve(Dense a, std::vector<double> b) {
    const std::size_t n = a.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::abs(a[r][k]) > std::abs(a[p][k])) p = r;
        if (a[p][k] == 0.0) throw std::runtime_error("singular matrix");
        std::swap(a[p], a[k]);
        std::swap(b[p], b[k]);
        for (std::size_t r = k + 1; r < n; ++r) {
            const double f = a[r][k] / a[k][k];
            if (f == 0.0) continue;
            for (std::size_t c = k; c < n; ++c) a[r][c] -= f * a[k][c];
            b[r] -= f * b[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        for (std::size_t c = k + 1; c < n; ++c) s -= a[k][c] * x[c];
        x[k] = s / a[k][k];
    }
    return x;
}

// Inverse by Gauss-Jordan with partial pivoting.
inline Dense invert(Dense a) {
    const std::size_t n = a.size();
    Dense inv(n, std::vector<double>(n, 0.0));
    for (std::size_t k = 0; k < n; ++k) inv[k][k] = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::abs(a[r][k]) > std::abs(a[p][k])) p = r;
        std::swap(a[p], a[k]);
        std::swap(inv[p], inv[k]);
        const double d = a[k][k];
        for (std::size_t c = 0; c < n; ++c) {
            a[k][c] /= d;
            inv[k][c] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == k || a[r][k] == 0.0) continue;
            const double f = a[r][k];
            for (std::size_t c = 0; c < n; ++c) {
                a[r][c] -= f * a[k][c];
                inv[r][c] -= f * inv[k][c];
            }
        }
    }
    return inv;
}

inline double norm_inf(const Dense& a) {
    double m = 0.0;
    for (const auto& row : a) {
        double s = 0.0;
        for (double v : row) s += std::abs(v);
        m = std::max(m, s);
    }
    return m;
}

}  // namespace oracle

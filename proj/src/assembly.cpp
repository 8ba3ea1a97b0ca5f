#include "penalfd/assembly.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "penalfd/errors.hpp"
#include "penalfd/parallel.hpp"

namespace penalfd {

void PenalConfig::validate() const {
    if (!(eps > 0.0)) throw InvalidArgument("eps must be > 0");
    if (!(alpha >= 0.0)) throw InvalidArgument("alpha must be >= 0");
    domain.validate();
    if (!source.f || !source.gtilde) throw InvalidArgument("problem data needs both f and g~");
    if (scheme == Scheme::Upwind2 && domain.kind == DomainKind::DiskInSquare && !allow_upwind2_disk)
        throw InvalidArgument("upwind2 requires the square obstacle unless explicitly overridden");
}

ExtensionFields make_fields(const Grid& grid, const PenalConfig& cfg) {
    return ExtensionFields(cfg.domain, cfg.source.gtilde, cfg.corner_rule, grid.h() * 1e-9);
}

namespace {

constexpr std::size_t kMaxRow = 9;

struct RowEntries {
    std::array<std::size_t, kMaxRow> cols{};
    std::array<double, kMaxRow> vals{};
    std::size_t count = 0;

    void add(std::size_t col, double v) {
        for (std::size_t k = 0; k < count; ++k)
            if (cols[k] == col) {
                vals[k] += v;
                return;
            }
        cols[count] = col;
        vals[count] = v;
        ++count;
    }
};

// Which one-sided difference approximates d/dx (resp. d/dy) at a node.
enum class Upwind { Backward, Forward };

struct NodeCoeffs {
    int chi = 0;
    Vec2 n{};
    double g = 0.0;
};

NodeCoeffs sample(const ExtensionFields& fields, Point p) {
    NodeCoeffs c;
    c.chi = fields.chi(p);
    if (c.chi) {
        c.n = fields.normal(p);
        c.g = fields.gdata(p);
    }
    return c;
}

template <class RowFn>
AssembledSystem build(const Grid& grid, const PenalConfig& cfg, RowFn&& row_fn) {
    cfg.validate();
    const std::size_t dim = grid.size();
    std::vector<RowEntries> rows(dim);
    std::vector<double> rhs(dim, 0.0);

    parallel_for(dim, default_jobs(), [&](std::size_t node) {
        if (grid.is_box_boundary(node)) {
            rows[node].add(node, 1.0);
            return;
        }
        rhs[node] = row_fn(node, rows[node]);
    });

    std::vector<std::size_t> offsets(dim + 1, 0);
    std::vector<std::size_t> cols;
    std::vector<double> vals;
    cols.reserve(dim * 5);
    vals.reserve(dim * 5);
    std::array<std::size_t, kMaxRow> order{};
    for (std::size_t r = 0; r < dim; ++r) {
        RowEntries& e = rows[r];
        for (std::size_t k = 0; k < e.count; ++k) order[k] = k;
        std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(e.count),
                  [&](std::size_t a, std::size_t b) { return e.cols[a] < e.cols[b]; });
        for (std::size_t k = 0; k < e.count; ++k) {
            const double v = e.vals[order[k]];
            if (v == 0.0) continue;
            cols.push_back(e.cols[order[k]]);
            vals.push_back(v);
        }
        offsets[r + 1] = cols.size();
    }
    return {SparseMatrix::from_csr(dim, std::move(offsets), std::move(cols), std::move(vals)), std::move(rhs)};
}

void add_laplacian_and_reaction(const Grid& grid, std::size_t node, RowEntries& row) {
    const double inv_h2 = 1.0 / (grid.h() * grid.h());
    const std::size_t s = static_cast<std::size_t>(grid.stride());
    row.add(node, 4.0 * inv_h2 + 1.0);
    row.add(node - s, -inv_h2);
    row.add(node - 1, -inv_h2);
    row.add(node + 1, -inv_h2);
    row.add(node + s, -inv_h2);
}

// coef * d/dx_k approximated at `node` along a direction with neighbor
// offset `step` (stride for x, 1 for y). `second_order` selects the
// 3-point stencil, otherwise the 2-point one.
void add_advection(RowEntries& row, std::size_t node, std::size_t step, double coef, double h, Upwind side,
                   bool second_order) {
    if (coef == 0.0) return;
    const double a = coef / h;
    if (side == Upwind::Backward) {
        if (second_order) {
            row.add(node, 1.5 * a);
            row.add(node - step, -2.0 * a);
            row.add(node - 2 * step, 0.5 * a);
        } else {
            row.add(node, a);
            row.add(node - step, -a);
        }
    } else {
        if (second_order) {
            row.add(node, -1.5 * a);
            row.add(node + step, 2.0 * a);
            row.add(node + 2 * step, -0.5 * a);
        } else {
            row.add(node, -a);
            row.add(node + step, a);
        }
    }
}

}  // namespace

AssembledSystem assemble_upwind1(const Grid& grid, const PenalConfig& cfg, const ExtensionFields& fields) {
    if (cfg.scheme != Scheme::Upwind1) throw InvalidArgument("assemble_upwind1 called with a non-upwind1 config");
    const int N = grid.n();
    const double h = grid.h();
    const std::size_t s = static_cast<std::size_t>(grid.stride());
    return build(grid, cfg, [&](std::size_t node, RowEntries& row) {
        const auto [i, j] = grid.ij_of(node);
        const Point p = grid.point(i, j);
        const NodeCoeffs c = sample(fields, p);
        add_laplacian_and_reaction(grid, node, row);
        if (!c.chi) return cfg.source.f(p);

        const double pen = 1.0 / cfg.eps;
        add_advection(row, node, s, pen * c.n.x, h, 2 * i <= N ? Upwind::Forward : Upwind::Backward, false);
        add_advection(row, node, 1, pen * c.n.y, h, 2 * j <= N ? Upwind::Forward : Upwind::Backward, false);
        row.add(node, cfg.alpha * pen);
        return pen * c.g;
    });
}

AssembledSystem assemble_upwind2(const Grid& grid, const PenalConfig& cfg, const ExtensionFields& fields) {
    if (cfg.scheme != Scheme::Upwind2) throw InvalidArgument("assemble_upwind2 called with a non-upwind2 config");
    const int N = grid.n();
    const double h = grid.h();
    const double tol = h * 1e-9;
    const std::size_t s = static_cast<std::size_t>(grid.stride());
    const bool square = cfg.domain.kind == DomainKind::SquareInSquare;
    const double lo = cfg.domain.center.x - cfg.domain.radius;
    const double hi = cfg.domain.center.x + cfg.domain.radius;
    const double lo_y = cfg.domain.center.y - cfg.domain.radius;
    const double hi_y = cfg.domain.center.y + cfg.domain.radius;

    return build(grid, cfg, [&](std::size_t node, RowEntries& row) {
        const auto [i, j] = grid.ij_of(node);
        const Point p = grid.point(i, j);
        const NodeCoeffs c = sample(fields, p);
        add_laplacian_and_reaction(grid, node, row);
        if (!c.chi) return cfg.source.f(p);

        Upwind sx, sy;
        if (square) {
            const double x = p.x, y = p.y;
            if (x >= hi - tol && y > lo_y + tol) {
                sx = Upwind::Backward;
                sy = Upwind::Backward;
            } else if (x <= lo + tol && y < hi_y - tol) {
                sx = Upwind::Forward;
                sy = Upwind::Forward;
            } else if (x > lo + tol && y <= lo_y + tol) {
                sx = Upwind::Backward;
                sy = Upwind::Forward;
            } else {
                sx = Upwind::Forward;
                sy = Upwind::Backward;
            }
        } else {
            sx = c.n.x >= 0.0 ? Upwind::Backward : Upwind::Forward;
            sy = c.n.y >= 0.0 ? Upwind::Backward : Upwind::Forward;
        }
        const bool x2 = sx == Upwind::Backward ? i - 2 >= 0 : i + 2 <= N;
        const bool y2 = sy == Upwind::Backward ? j - 2 >= 0 : j + 2 <= N;

        const double pen = 1.0 / cfg.eps;
        add_advection(row, node, s, pen * c.n.x, h, sx, x2);
        add_advection(row, node, 1, pen * c.n.y, h, sy, y2);
        row.add(node, cfg.alpha * pen);
        return pen * c.g;
    });
}

AssembledSystem assemble(const Grid& grid, const PenalConfig& cfg, const ExtensionFields& fields) {
    return cfg.scheme == Scheme::Upwind1 ? assemble_upwind1(grid, cfg, fields) : assemble_upwind2(grid, cfg, fields);
}

}  // namespace penalfd

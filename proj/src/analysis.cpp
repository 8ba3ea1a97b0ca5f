#include "penalfd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "penalfd/csv.hpp"
#include "penalfd/errors.hpp"

namespace penalfd {

std::string Mask::name() const {
    switch (kind) {
        case Kind::FluidFull: return "full";
        case Kind::FluidNoBoundary: return "noboundary";
        case Kind::FluidInterior: return "interior:" + format_double(s);
        case Kind::ObstacleStrip:
            return "strip:" + format_double(x_lo) + ":" + format_double(x_hi) + ":" + format_double(y_lo) + ":" +
                   format_double(y_hi);
    }
    return {};
}

Mask Mask::parse(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.empty()) throw InvalidArgument("empty mask name");
    const std::string& head = parts[0];
    if (head == "full" && parts.size() == 1) return fluid_full();
    if (head == "noboundary" && parts.size() == 1) return fluid_no_boundary();
    if (head == "interior" && parts.size() == 2) {
        const double s = parse_double(parts[1]);
        if (!(s > 0.0)) throw InvalidArgument("interior mask margin must be > 0");
        return fluid_interior(s);
    }
    if (head == "strip" && parts.size() == 5) {
        Mask m = obstacle_strip(parse_double(parts[1]), parse_double(parts[2]), parse_double(parts[3]),
                                parse_double(parts[4]));
        if (m.x_lo > m.x_hi || m.y_lo > m.y_hi) throw InvalidArgument("strip mask bounds are reversed");
        return m;
    }
    throw InvalidArgument("unknown mask '" + text + "'");
}

bool Mask::contains(const ExtensionFields& fields, Point p, double h) const {
    const double psi = fields.psi(p);
    const double tol = fields.boundary_tol();
    switch (kind) {
        case Kind::FluidFull: return psi <= tol;
        case Kind::FluidNoBoundary: return psi < -tol;
        case Kind::FluidInterior: return psi <= -s + tol;
        case Kind::ObstacleStrip: {
            const double w = 1e-9 * h;
            return fields.chi(p) == 1 && p.x >= x_lo - w && p.x <= x_hi + w && p.y >= y_lo - w && p.y <= y_hi + w;
        }
    }
    return false;
}

bool Mask::in_support(const ExtensionFields& fields, Point p) const {
    if (kind == Kind::ObstacleStrip) return fields.chi(p) == 1;
    return fields.psi(p) <= fields.boundary_tol();
}

Vec2 discrete_gradient(const Grid& grid, std::span<const double> u, int i, int j,
                       const std::function<bool(int, int)>& support) {
    const double h = grid.h();
    const int n = grid.n();
    auto axis = [&](bool along_x) {
        auto at = [&](int k) { return along_x ? std::pair{i + k, j} : std::pair{i, j + k}; };
        auto ok = [&](int k) {
            const auto [ii, jj] = at(k);
            return ii >= 0 && jj >= 0 && ii <= n && jj <= n && support(ii, jj);
        };
        auto val = [&](int k) {
            const auto [ii, jj] = at(k);
            return u[grid.node_of(ii, jj)];
        };
        if (ok(-1) && ok(1)) return (val(1) - val(-1)) / (2.0 * h);
        if (ok(1) && ok(2)) return (-3.0 * val(0) + 4.0 * val(1) - val(2)) / (2.0 * h);
        if (ok(-1) && ok(-2)) return (3.0 * val(0) - 4.0 * val(-1) + val(-2)) / (2.0 * h);
        if (ok(1)) return (val(1) - val(0)) / h;
        if (ok(-1)) return (val(0) - val(-1)) / h;
        // Isolated along this axis (extremal points of a curved boundary).
        auto inside = [&](int k) {
            const auto [ii, jj] = at(k);
            return ii >= 0 && jj >= 0 && ii <= n && jj <= n;
        };
        if (inside(-1) && inside(1)) return (val(1) - val(-1)) / (2.0 * h);
        throw DomainError("no neighbor available for a gradient stencil at node (" + std::to_string(i) + "," +
                          std::to_string(j) + ")");
    };
    return {axis(true), axis(false)};
}

ErrorReport error_norms(const Grid& grid, std::span<const double> numerical, const ExtensionFields& fields,
                        const ReferenceField& reference, const Mask& mask, bool keep_gradients) {
    if (numerical.size() != grid.size()) throw InvalidArgument("grid field size does not match the grid");
    if (!reference.value || !reference.gradient) throw InvalidArgument("reference field closures are empty");
    const double h = grid.h();
    const double h2 = h * h;
    auto support = [&](int i, int j) { return mask.in_support(fields, grid.point(i, j)); };

    ErrorReport rep;
    rep.mask = mask;
    for (int i = 0; i <= grid.n(); ++i) {
        for (int j = 0; j <= grid.n(); ++j) {
            const Point p = grid.point(i, j);
            if (!mask.contains(fields, p, h)) continue;
            const double e = std::abs(reference.value(p) - numerical[grid.node_of(i, j)]);
            const Vec2 gd = discrete_gradient(grid, numerical, i, j, support);
            const Vec2 gr = reference.gradient(p);
            const double ex = gr.x - gd.x, ey = gr.y - gd.y;
            rep.l_inf = std::max(rep.l_inf, e);
            rep.l2_sum += h2 * e * e;
            rep.h1_sum += h2 * (e * e + ex * ex + ey * ey);
            ++rep.nodes;
            if (keep_gradients) {
                rep.ux.push_back(gd.x);
                rep.uy.push_back(gd.y);
            }
        }
    }
    if (rep.nodes == 0) throw InvalidArgument("mask '" + mask.name() + "' selects no grid node");
    rep.l2 = std::sqrt(rep.l2_sum);
    rep.h1 = std::sqrt(rep.h1_sum);
    return rep;
}

std::vector<double> convergence_order(std::span<const std::pair<double, double>> values) {
    if (values.size() < 2) throw InvalidArgument("convergence order needs at least two entries");
    for (const auto& [p, e] : values) {
        if (!(p > 0.0)) throw InvalidArgument("convergence order parameters must be > 0");
        if (!(e > 0.0)) throw InvalidArgument("convergence order errors must be > 0");
    }
    std::vector<double> orders;
    for (std::size_t k = 1; k < values.size(); ++k) {
        if (values[k].first == values[k - 1].first) throw InvalidArgument("repeated convergence order parameter");
        orders.push_back(std::log(values[k].second / values[k - 1].second) /
                         std::log(values[k].first / values[k - 1].first));
    }
    return orders;
}

BlThickness bl_thickness(const Grid& grid, std::span<const double> u_eps,
                         const std::function<double(Point)>& u_lim, double cut_y) {
    if (u_eps.size() != grid.size()) throw InvalidArgument("grid field size does not match the grid");
    const int j = grid.index_of(cut_y);
    const Point p = grid.point(1, j);
    const double lim = u_lim(p);
    if (lim == 0.0) throw EstimatorDomainError("u_lim vanishes at the first interior node", 0.0);
    BlThickness out;
    out.ru = u_eps[grid.node_of(1, j)] / lim;
    if (!(out.ru > 0.0 && out.ru < 1.0))
        throw EstimatorDomainError("ratio RU(h) = " + format_double(out.ru) + " lies outside (0,1)", out.ru);
    const double h = grid.h();
    out.bl1 = h / out.ru;
    out.bl2 = -h / std::log1p(-out.ru);
    return out;
}

RatioProfile ratio_profile(const Grid& grid, std::span<const double> u_eps,
                           const std::function<double(Point)>& u_lim, double cut_y) {
    if (u_eps.size() != grid.size()) throw InvalidArgument("grid field size does not match the grid");
    const int j = grid.index_of(cut_y);
    RatioProfile out;
    for (int i = 0; i <= grid.n(); ++i) {
        const Point p = grid.point(i, j);
        const double lim = u_lim(p);
        if (std::abs(lim) <= 1e-12) {
            out.skipped_x.push_back(p.x);
            continue;
        }
        out.points.emplace_back(p.x, u_eps[grid.node_of(i, j)] / lim);
    }
    if (out.points.empty()) throw DomainError("u_lim vanishes at every node of the cut line");
    return out;
}

}  // namespace penalfd

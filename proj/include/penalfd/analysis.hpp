#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "penalfd/geometry.hpp"
#include "penalfd/grid.hpp"

namespace penalfd {

struct Mask {
    enum class Kind { FluidFull, FluidNoBoundary, FluidInterior, ObstacleStrip };

    Kind kind = Kind::FluidFull;
    double s = 0.0;  // FluidInterior margin
    double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;

    static Mask fluid_full() { return {}; }
    static Mask fluid_no_boundary() { return {Kind::FluidNoBoundary}; }
    static Mask fluid_interior(double s) { return {Kind::FluidInterior, s}; }
    static Mask obstacle_strip(double x_lo, double x_hi, double y_lo, double y_hi) {
        return {Kind::ObstacleStrip, 0.0, x_lo, x_hi, y_lo, y_hi};
    }

    // "full", "noboundary", "interior:<S>", "strip:<xlo>:<xhi>:<ylo>:<yhi>"
    std::string name() const;
    static Mask parse(const std::string& text);

    // Rectangle bounds are widened by 1e-9 h so grid lines on the edges count.
    bool contains(const ExtensionFields& fields, Point p, double h) const;
    // Nodes whose values may enter the gradient stencils: closure(U) for the
    // fluid masks, chi = 1 for the obstacle strip.
    bool in_support(const ExtensionFields& fields, Point p) const;
};

struct ReferenceField {
    std::function<double(Point)> value;
    std::function<Vec2(Point)> gradient;
};

struct ErrorReport {
    Mask mask;
    double l_inf = 0.0;
    double l2_sum = 0.0;  // sum of h^2 (u - U)^2
    double l2 = 0.0;      // sqrt(l2_sum)
    double h1_sum = 0.0;  // l2_sum plus the gradient mismatches
    double h1 = 0.0;
    std::size_t nodes = 0;
    // Discrete gradients per masked node, in node order, when requested.
    std::vector<double> ux, uy;
};

// Second-order gradient of a grid field at (i,j) using only nodes for which
// `support` holds: central, else 3-point one-sided, else 2-point. A node with
// no support neighbor along an axis uses the central difference regardless.
Vec2 discrete_gradient(const Grid& grid, std::span<const double> u, int i, int j,
                       const std::function<bool(int, int)>& support);

ErrorReport error_norms(const Grid& grid, std::span<const double> numerical, const ExtensionFields& fields,
                        const ReferenceField& reference, const Mask& mask, bool keep_gradients = false);

// order_k = log(e_k / e_{k-1}) / log(p_k / p_{k-1}).
std::vector<double> convergence_order(std::span<const std::pair<double, double>> values);

struct BlThickness {
    double ru = 0.0;
    double bl1 = 0.0;
    double bl2 = 0.0;
};

// Estimators from the ratio RU(h) = u_eps(h, cut_y) / u_lim(h, cut_y).
// Throws EstimatorDomainError when RU is outside (0,1).
BlThickness bl_thickness(const Grid& grid, std::span<const double> u_eps,
                         const std::function<double(Point)>& u_lim, double cut_y);

struct RatioProfile {
    std::vector<std::pair<double, double>> points;  // (x, RU)
    std::vector<double> skipped_x;                  // |u_lim| <= 1e-12
};

RatioProfile ratio_profile(const Grid& grid, std::span<const double> u_eps,
                           const std::function<double(Point)>& u_lim, double cut_y);

}  // namespace penalfd

#include "penalfd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "penalfd/errors.hpp"

namespace penalfd {

DomainSpec DomainSpec::disk(double radius) {
    DomainSpec s;
    s.kind = DomainKind::DiskInSquare;
    s.radius = radius;
    s.validate();
    return s;
}

DomainSpec DomainSpec::square(double half_size) {
    DomainSpec s;
    s.kind = DomainKind::SquareInSquare;
    s.radius = half_size;
    s.validate();
    return s;
}

void DomainSpec::validate() const {
    if (!(radius > 0.0 && radius < 0.5))
        throw InvalidArgument("obstacle radius must lie in (0, 1/2), got " + std::to_string(radius));
}

double DomainSpec::level(Point p) const {
    const double dx = p.x - center.x;
    const double dy = p.y - center.y;
    if (kind == DomainKind::DiskInSquare) return std::hypot(dx, dy) - radius;
    return std::max(std::abs(dx), std::abs(dy)) - radius;
}

int chi_at(const DomainSpec& spec, double x, double y, double tol) {
    return spec.level({x, y}) >= -tol ? 1 : 0;
}

ExtensionFields::ExtensionFields(DomainSpec spec, BoundaryData gtilde, CornerRule corner_rule,
                                 double boundary_tol)
    : spec_(spec), gtilde_(std::move(gtilde)), corner_rule_(corner_rule), tol_(boundary_tol) {
    spec_.validate();
    if (!gtilde_) throw InvalidArgument("boundary data closure is empty");
}

bool ExtensionFields::on_obstacle_boundary(Point p) const { return std::abs(spec_.level(p)) <= tol_; }

ExtensionFields::SquareSelection ExtensionFields::select_square(Point p) const {
    const double dx = p.x - spec_.center.x;
    const double dy = p.y - spec_.center.y;
    const double ax = std::abs(dx);
    const double ay = std::abs(dy);
    const Side xs = dx < 0.0 ? Side::Left : Side::Right;
    const Side ys = dy < 0.0 ? Side::Bottom : Side::Top;

    const double r = spec_.radius;
    if (std::abs(ax - r) <= tol_ && std::abs(ay - r) <= tol_)
        return {SquareRegion::Corner, xs, xs, ys};
    if (ax > ay + tol_) return {SquareRegion::Side, xs, xs, ys};
    if (ay > ax + tol_) return {SquareRegion::Side, ys, xs, ys};
    // diagonal seam
    return {SquareRegion::Side, corner_rule_ == CornerRule::MinusY ? xs : ys, xs, ys};
}

Vec2 ExtensionFields::side_normal(Side s) const {
    switch (s) {
        case Side::Left: return {-1.0, 0.0};
        case Side::Right: return {1.0, 0.0};
        case Side::Bottom: return {0.0, -1.0};
        case Side::Top: return {0.0, 1.0};
    }
    return {};
}

Point ExtensionFields::project_on_side(Point p, Side s) const {
    const double lo_x = spec_.center.x - spec_.radius;
    const double hi_x = spec_.center.x + spec_.radius;
    const double lo_y = spec_.center.y - spec_.radius;
    const double hi_y = spec_.center.y + spec_.radius;
    switch (s) {
        case Side::Left: return {lo_x, std::clamp(p.y, lo_y, hi_y)};
        case Side::Right: return {hi_x, std::clamp(p.y, lo_y, hi_y)};
        case Side::Bottom: return {std::clamp(p.x, lo_x, hi_x), lo_y};
        case Side::Top: return {std::clamp(p.x, lo_x, hi_x), hi_y};
    }
    return p;
}

Vec2 ExtensionFields::normal(Point p) const {
    if (spec_.kind == DomainKind::DiskInSquare) {
        const double dx = p.x - spec_.center.x;
        const double dy = p.y - spec_.center.y;
        const double r = std::hypot(dx, dy);
        if (r == 0.0) throw DomainError("extended normal is undefined at the disk center");
        return {dx / r, dy / r};
    }
    const SquareSelection sel = select_square(p);
    if (sel.region == SquareRegion::Side) return side_normal(sel.side);
    switch (corner_rule_) {
        case CornerRule::PlusX: return side_normal(sel.y_side);
        case CornerRule::MinusY: return side_normal(sel.x_side);
        case CornerRule::Mean: {
            const Vec2 a = side_normal(sel.x_side);
            const Vec2 b = side_normal(sel.y_side);
            return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
        }
    }
    return {};
}

Point ExtensionFields::foot(Point p) const {
    if (spec_.kind == DomainKind::DiskInSquare) {
        const Vec2 n = normal(p);
        return {spec_.center.x + spec_.radius * n.x, spec_.center.y + spec_.radius * n.y};
    }
    const SquareSelection sel = select_square(p);
    if (sel.region == SquareRegion::Corner)
        return project_on_side(project_on_side(p, sel.x_side), sel.y_side);
    return project_on_side(p, sel.side);
}

double ExtensionFields::gdata(Point p) const {
    if (spec_.kind == DomainKind::DiskInSquare) {
        const Vec2 n = normal(p);
        return gtilde_(foot(p), n);
    }
    const SquareSelection sel = select_square(p);
    if (sel.region == SquareRegion::Side) return gtilde_(project_on_side(p, sel.side), side_normal(sel.side));

    const Point c = foot(p);
    const double along_horizontal = gtilde_(c, side_normal(sel.y_side));
    const double along_vertical = gtilde_(c, side_normal(sel.x_side));
    switch (corner_rule_) {
        case CornerRule::PlusX: return along_horizontal;
        case CornerRule::MinusY: return along_vertical;
        case CornerRule::Mean: return 0.5 * (along_horizontal + along_vertical);
    }
    return 0.0;
}

double ExtensionFields::laplacian_psi(Point p) const {
    if (spec_.kind == DomainKind::DiskInSquare) {
        const double r = std::hypot(p.x - spec_.center.x, p.y - spec_.center.y);
        if (r == 0.0) throw DomainError("laplacian of psi is undefined at the disk center");
        return 1.0 / r;
    }
    return 0.0;
}

}  // namespace penalfd

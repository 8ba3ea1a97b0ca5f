#include "penalfd/characteristics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "penalfd/errors.hpp"

namespace penalfd {

namespace {

constexpr double kSurfaceTol = 1e-10;

std::size_t step_budget(const FlowField& field, double dt) {
    return static_cast<std::size_t>(std::ceil(4.0 * field.diameter() / dt)) + 100;
}

Point rk4_position(const FlowField& field, Point x, double dt, double sign) {
    auto f = [&](Point p) {
        const Vec2 n = field.direction(p);
        return Vec2{sign * n.x, sign * n.y};
    };
    const Vec2 k1 = f(x);
    const Vec2 k2 = f({x.x + 0.5 * dt * k1.x, x.y + 0.5 * dt * k1.y});
    const Vec2 k3 = f({x.x + 0.5 * dt * k2.x, x.y + 0.5 * dt * k2.y});
    const Vec2 k4 = f({x.x + dt * k3.x, x.y + dt * k3.y});
    return {x.x + dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
            x.y + dt / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y)};
}

// Largest s in (0, dt] such that crossing(step(s)) lies within tolerance of
// zero, given crossing(step(0)) > 0 >= crossing(step(dt)).
template <class Step, class Crossing>
double bisect_step(double dt, Step&& step, Crossing&& crossing) {
    double lo = 0.0, hi = dt;
    for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        const double c = crossing(step(mid));
        if (std::abs(c) <= kSurfaceTol) return mid;
        if (c > 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-16) break;
    }
    return hi;
}

// State of the backward trace: position, B = int beta, J = int g e^{-B}.
struct BackState {
    Point x;
    double b;
    double j;
};

struct BackwardTracer {
    const FlowField& field;
    const ScalarFn& beta;
    const ScalarFn& gsrc;

    std::array<double, 4> rhs(const BackState& s) const {
        const Vec2 n = field.direction(s.x);
        return {-n.x, -n.y, beta(s.x), gsrc(s.x) * std::exp(-s.b)};
    }

    BackState step(const BackState& s, double dt) const {
        auto shifted = [&](const std::array<double, 4>& k, double a) {
            return BackState{{s.x.x + a * k[0], s.x.y + a * k[1]}, s.b + a * k[2], s.j + a * k[3]};
        };
        const auto k1 = rhs(s);
        const auto k2 = rhs(shifted(k1, 0.5 * dt));
        const auto k3 = rhs(shifted(k2, 0.5 * dt));
        const auto k4 = rhs(shifted(k3, dt));
        std::array<double, 4> inc;
        for (int m = 0; m < 4; ++m) inc[m] = (k1[m] + 2.0 * k2[m] + 2.0 * k3[m] + k4[m]) / 6.0;
        return shifted(inc, dt);
    }

    BackState run(Point query, double dt) const {
        BackState s{query, 0.0, 0.0};
        if (field.level(query) <= kSurfaceTol) return s;
        const std::size_t budget = step_budget(field, dt);
        for (std::size_t k = 0; k < budget; ++k) {
            const BackState next = step(s, dt);
            if (field.level(next.x) > kSurfaceTol) {
                s = next;
                continue;
            }
            const double part = bisect_step(
                dt, [&](double h) { return step(s, h).x; }, [&](Point p) { return field.level(p); });
            return step(s, part);
        }
        throw DomainError("backward characteristic did not reach the obstacle boundary within " +
                          std::to_string(budget) + " steps");
    }
};

void check_dt(double dt) {
    if (!(dt > 0.0)) throw InvalidArgument("characteristic step dt must be > 0");
}

}  // namespace

double ExtensionFlow::exit_distance(Point p) const { return std::min({p.x, 1.0 - p.x, p.y, 1.0 - p.y}); }

void ExtensionFlow::check_query(Point p) const {
    const DomainSpec& d = fields_.domain();
    if (d.kind != DomainKind::SquareInSquare) return;
    const double tol = fields_.boundary_tol();
    if (std::abs(p.x - d.center.x) > d.radius + tol && std::abs(p.y - d.center.y) > d.radius + tol)
        throw DomainError("characteristics of the square obstacle are not traced in the corner sectors");
}

Point boundary_point(const DomainSpec& spec, double xi) {
    if (!(xi >= 0.0 && xi < 1.0)) throw InvalidArgument("boundary parameter must lie in [0,1)");
    const double r = spec.radius;
    if (spec.kind == DomainKind::DiskInSquare) {
        const double theta = 2.0 * std::numbers::pi * xi;
        return {spec.center.x + r * std::cos(theta), spec.center.y + r * std::sin(theta)};
    }
    const double s = 4.0 * xi;  // side index + fraction
    const double side = 2.0 * r;
    const double lo_x = spec.center.x - r, lo_y = spec.center.y - r;
    if (s < 1.0) return {lo_x + side * s, lo_y};
    if (s < 2.0) return {lo_x + side, lo_y + side * (s - 1.0)};
    if (s < 3.0) return {lo_x + side * (3.0 - s), lo_y + side};
    return {lo_x, lo_y + side * (4.0 - s)};
}

CharTrace trace_from_boundary(const FlowField& field, Point start, double dt) {
    check_dt(dt);
    if (std::abs(field.level(start)) > 1e-9) throw InvalidArgument("trace start point is not on the obstacle boundary");
    CharTrace trace;
    trace.start = start;
    trace.samples.push_back({0.0, start});
    Point x = start;
    double t = 0.0;
    const std::size_t budget = step_budget(field, dt);
    for (std::size_t k = 0; k < budget; ++k) {
        const Point next = rk4_position(field, x, dt, 1.0);
        if (field.exit_distance(next) > kSurfaceTol) {
            x = next;
            t += dt;
            trace.samples.push_back({t, x});
            continue;
        }
        const double part = bisect_step(
            dt, [&](double h) { return rk4_position(field, x, h, 1.0); },
            [&](Point p) { return field.exit_distance(p); });
        x = rk4_position(field, x, part, 1.0);
        t += part;
        trace.samples.push_back({t, x});
        trace.exit_time = t;
        return trace;
    }
    throw DomainError("characteristic did not leave the box within " + std::to_string(budget) +
                      " steps (degenerate direction field?)");
}

double solve_advection_reaction(const FlowField& field, const ScalarFn& beta, const ScalarFn& gsrc,
                                const ScalarFn& boundary_value, Point query, double dt) {
    check_dt(dt);
    if (field.level(query) < -kSurfaceTol) throw InvalidArgument("query point lies inside the obstacle");
    field.check_query(query);
    const BackwardTracer tracer{field, beta, gsrc};
    const BackState end = tracer.run(query, dt);
    return boundary_value(end.x) * std::exp(-end.b) + end.j;
}

double qbar0(const FlowField& field, double boundary_value, const ScalarFn& b_neg1, Point query, double dt) {
    const ScalarFn beta = [&field](Point p) { return field.level_laplacian(p); };
    const ScalarFn src = [&b_neg1](Point p) { return -b_neg1(p); };
    return solve_advection_reaction(
        field, beta, src, [boundary_value](Point) { return boundary_value; }, query, dt);
}

}  // namespace penalfd

#pragma once

#include <functional>
#include <vector>

#include "penalfd/geometry.hpp"

namespace penalfd {

// Vector field n = grad(psi)/|grad(psi)| between the obstacle (psi <= 0) and
// an outer boundary.
class FlowField {
public:
    virtual ~FlowField() = default;
    virtual Vec2 direction(Point p) const = 0;
    virtual double level(Point p) const = 0;
    virtual double level_laplacian(Point p) const = 0;
    // Positive strictly inside the outer boundary, zero on it.
    virtual double exit_distance(Point p) const = 0;
    // Largest distance a trace can travel; bounds the step budget.
    virtual double diameter() const = 0;
    // Throws DomainError for query points the tracer cannot handle.
    virtual void check_query(Point) const {}
};

// The extension fields on the unit box.
class ExtensionFlow final : public FlowField {
public:
    explicit ExtensionFlow(const ExtensionFields& fields) : fields_(fields) {}

    Vec2 direction(Point p) const override { return fields_.normal(p); }
    double level(Point p) const override { return fields_.psi(p); }
    double level_laplacian(Point p) const override { return fields_.laplacian_psi(p); }
    double exit_distance(Point p) const override;
    double diameter() const override { return 1.5; }
    void check_query(Point p) const override;

private:
    const ExtensionFields& fields_;
};

struct TraceSample {
    double t = 0.0;
    Point point{};
};

struct CharTrace {
    Point start{};
    std::vector<TraceSample> samples;  // samples.front() is the start, samples.back() the exit point
    double exit_time = 0.0;
};

// Point of dU for a parameter xi in [0,1): angle 2 pi xi for the disk,
// counter-clockwise arc length fraction from the bottom-left corner for the square.
Point boundary_point(const DomainSpec& spec, double xi);

// Integrates dX/dt = n(X) with classical RK4 from a point of dU until the
// trace leaves the outer boundary; the last step is bisected so the exit
// point lies on the boundary to 1e-10.
CharTrace trace_from_boundary(const FlowField& field, Point start, double dt);

using ScalarFn = std::function<double(Point)>;

// Solves grad(W).n + beta W = g in omega with W = V on dU at one query
// point by tracing the characteristic back to dU.
double solve_advection_reaction(const FlowField& field, const ScalarFn& beta, const ScalarFn& gsrc,
                                const ScalarFn& boundary_value, Point query, double dt);

// Qbar0 solving grad(Q).n + Lap(psi) Q = -b_neg1 with Q = const on dU.
double qbar0(const FlowField& field, double boundary_value, const ScalarFn& b_neg1, Point query, double dt);

}  // namespace penalfd

#pragma once

#include "penalfd/assembly.hpp"
#include "penalfd/geometry.hpp"

namespace penalfd {

enum class CaseId { DiskSin, SquareSin5 };

// u = sin(c (x + y - 1)) with f = -Lap u + u and g~ = grad(u).n + alpha u.
struct ManufacturedCase {
    CaseId id = CaseId::SquareSin5;
    double c = 5.0;

    static ManufacturedCase disk_sin(double c);
    static ManufacturedCase square_sin5();

    DomainKind domain_kind() const;

    double exact(Point p) const;
    double f(Point p) const;
    Vec2 gradient(Point p) const;
    // Hessian is c^2 u [[-1,-1],[-1,-1]]; returns the common entry.
    double hessian_entry(Point p) const;
    double gtilde(Point p, Vec2 n, double alpha) const;

    ProblemData data(double alpha) const;
};

// u_lim = u in U and the advection-reaction limit W in omega.
class LimitSolution {
public:
    // dt is the characteristic step; dt <= 0 picks 1/400.
    LimitSolution(ManufacturedCase mc, const PenalConfig& cfg, double dt = 0.0);

    double value(Point p) const;
    Vec2 gradient(Point p) const;

    // Limit field in omega evaluated by characteristics, bypassing the
    // closed strip form.
    double value_by_characteristics(Point p) const;

    const ExtensionFields& fields() const { return fields_; }
    double dt() const { return dt_; }

private:
    bool uses_closed_form() const;
    double strip_closed_form(Point p, Vec2* grad) const;

    ManufacturedCase case_;
    double alpha_;
    ExtensionFields fields_;
    double dt_;
};

// First-order boundary-layer model u_lim (1 - exp(-c phi / eps)), phi the
// distance to the box and c = n.(-grad phi) for the nearest box side (ties
// go to the x-side).
double bl_profile(const LimitSolution& limit, double eps, Point p);

}  // namespace penalfd

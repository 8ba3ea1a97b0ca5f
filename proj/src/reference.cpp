#include "penalfd/reference.hpp"

#include <cmath>

#include "penalfd/characteristics.hpp"
#include "penalfd/errors.hpp"

namespace penalfd {

ManufacturedCase ManufacturedCase::disk_sin(double c) { return {CaseId::DiskSin, c}; }

ManufacturedCase ManufacturedCase::square_sin5() { return {CaseId::SquareSin5, 5.0}; }

DomainKind ManufacturedCase::domain_kind() const {
    return id == CaseId::DiskSin ? DomainKind::DiskInSquare : DomainKind::SquareInSquare;
}

double ManufacturedCase::exact(Point p) const { return std::sin(c * (p.x + p.y - 1.0)); }

double ManufacturedCase::f(Point p) const { return (2.0 * c * c + 1.0) * exact(p); }

Vec2 ManufacturedCase::gradient(Point p) const {
    const double d = c * std::cos(c * (p.x + p.y - 1.0));
    return {d, d};
}

double ManufacturedCase::hessian_entry(Point p) const { return -c * c * exact(p); }

double ManufacturedCase::gtilde(Point p, Vec2 n, double alpha) const {
    return dot(gradient(p), n) + alpha * exact(p);
}

ProblemData ManufacturedCase::data(double alpha) const {
    const ManufacturedCase self = *this;
    return {[self](Point p) { return self.f(p); },
            [self, alpha](Point p, Vec2 n) { return self.gtilde(p, n, alpha); }};
}

namespace {

ExtensionFields limit_fields(const ManufacturedCase& mc, const PenalConfig& cfg) {
    if (mc.domain_kind() != cfg.domain.kind) throw InvalidArgument("manufactured case does not match the obstacle kind");
    const ManufacturedCase copy = mc;
    const double alpha = cfg.alpha;
    return ExtensionFields(cfg.domain, [copy, alpha](Point p, Vec2 n) { return copy.gtilde(p, n, alpha); },
                           cfg.corner_rule, 1e-12);
}

}  // namespace

LimitSolution::LimitSolution(ManufacturedCase mc, const PenalConfig& cfg, double dt)
    : case_(mc), alpha_(cfg.alpha), fields_(limit_fields(mc, cfg)), dt_(dt > 0.0 ? dt : 1.0 / 400.0) {
    if (alpha_ < 0.0) throw InvalidArgument("alpha must be >= 0");
}

bool LimitSolution::uses_closed_form() const {
    return fields_.domain().kind == DomainKind::SquareInSquare && alpha_ > 0.0;
}

double LimitSolution::strip_closed_form(Point p, Vec2* grad) const {
    const DomainSpec& d = fields_.domain();
    const double dx = p.x - d.center.x, dy = p.y - d.center.y;
    const double tol = fields_.boundary_tol();
    if (std::abs(dx) > d.radius + tol && std::abs(dy) > d.radius + tol)
        throw DomainError("closed strip form is not available in the corner sectors of the square");
    const Vec2 n = fields_.normal(p);
    const Point ft = fields_.foot(p);
    const Vec2 tau{-n.y, n.x};
    const double t = (p.x - ft.x) * n.x + (p.y - ft.y) * n.y;
    const double u = case_.exact(ft);
    const Vec2 gu = case_.gradient(ft);
    const double g = dot(gu, n) + alpha_ * u;
    const double decay = std::exp(-alpha_ * t);
    const double w = (u - g / alpha_) * decay + g / alpha_;
    if (grad) {
        const double hxy = case_.hessian_entry(ft);
        const double u_s = dot(gu, tau);
        // Hessian times n, projected on tau: all four entries equal hxy.
        const double g_s = hxy * (n.x + n.y) * (tau.x + tau.y) + alpha_ * u_s;
        const double w_t = -alpha_ * (u - g / alpha_) * decay;
        const double w_s = (u_s - g_s / alpha_) * decay + g_s / alpha_;
        *grad = {w_t * n.x + w_s * tau.x, w_t * n.y + w_s * tau.y};
    }
    return w;
}

double LimitSolution::value_by_characteristics(Point p) const {
    const ExtensionFlow flow(fields_);
    const double a = alpha_;
    const ManufacturedCase mc = case_;
    const ExtensionFields& fl = fields_;
    return solve_advection_reaction(
        flow, [a](Point) { return a; }, [&fl](Point q) { return fl.gdata(q); },
        [&mc](Point q) { return mc.exact(q); }, p, dt_);
}

double LimitSolution::value(Point p) const {
    if (fields_.chi(p) == 0) return case_.exact(p);
    if (uses_closed_form()) return strip_closed_form(p, nullptr);
    return value_by_characteristics(p);
}

Vec2 LimitSolution::gradient(Point p) const {
    if (fields_.chi(p) == 0) return case_.gradient(p);
    if (uses_closed_form()) {
        Vec2 g;
        strip_closed_form(p, &g);
        return g;
    }
    constexpr double d = 1e-5;
    auto diff = [&](Vec2 e) {
        auto at = [&](double s) { return value({p.x + s * e.x, p.y + s * e.y}); };
        return (-at(2 * d) + 8.0 * at(d) - 8.0 * at(-d) + at(-2 * d)) / (12.0 * d);
    };
    return {diff({1.0, 0.0}), diff({0.0, 1.0})};
}

double bl_profile(const LimitSolution& limit, double eps, Point p) {
    if (!(eps > 0.0)) throw InvalidArgument("eps must be > 0");
    const double dist_x = std::min(p.x, 1.0 - p.x);
    const double dist_y = std::min(p.y, 1.0 - p.y);
    Vec2 inward;
    double phi;
    if (dist_x <= dist_y) {
        phi = dist_x;
        inward = {p.x <= 1.0 - p.x ? 1.0 : -1.0, 0.0};
    } else {
        phi = dist_y;
        inward = {0.0, p.y <= 1.0 - p.y ? 1.0 : -1.0};
    }
    if (phi <= 0.0) return 0.0;
    const Vec2 n = limit.fields().normal(p);
    const double c = -dot(n, inward);
    return limit.value(p) * (1.0 - std::exp(-c * phi / eps));
}

}  // namespace penalfd

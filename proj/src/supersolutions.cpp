#include "penalfd/supersolutions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "penalfd/errors.hpp"

namespace penalfd {

namespace {

// sum_k (x/2)^{2k} / (k! (k+nu)!)
double bessel_series_core(int nu, double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    for (int k = 1; k <= nu; ++k) term /= k;
    double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * (k + nu));
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

void check_bessel_arg(double x) {
    if (!(x >= 0.0 && x <= 4.0)) throw DomainError("Bessel series is evaluated on [0,4] only");
}

void check_inputs(double eps, double eps_max, std::size_t m) {
    if (!(eps > 0.0 && eps < eps_max)) throw InvalidArgument("eps out of range for the supersolution check");
    if (m < 100) throw InvalidArgument("supersolution check needs M >= 100");
}

double node(double a, double b, std::size_t k, std::size_t m) {
    return a + (b - a) * static_cast<double>(k) / static_cast<double>(m);
}

}  // namespace

double bessel_i(int nu, double x) {
    if (nu != 0 && nu != 1) throw InvalidArgument("bessel_i supports nu = 0 and nu = 1");
    check_bessel_arg(x);
    const double core = bessel_series_core(nu, x);
    return nu == 0 ? core : 0.5 * x * core;
}

double bessel_i1_over_x(double x) {
    check_bessel_arg(x);
    return 0.5 * bessel_series_core(1, x);
}

SupersolReport check_1d(double eps, std::size_t m) {
    check_inputs(eps, 1.0, m);
    SupersolReport r;
    r.kind = "1d";
    r.eps = eps;
    r.grid_pts = m + 1;
    r.beta = 0.5;
    r.tol = 1e-12;

    const double tail = std::exp(-1.0 / eps) / eps;
    auto q = [&](double x) { return 1.0 + std::exp((x - 1.0) / eps) / eps - tail; };
    auto dq = [&](double x) { return std::exp((x - 1.0) / eps) / (eps * eps); };
    auto d2q = [&](double x) { return std::exp((x - 1.0) / eps) / (eps * eps * eps); };
    const double q1 = q(1.0);
    const double slope = dq(1.0) - q1 / eps;
    auto p = [&](double x) { return q1 + slope * (x - 1.0); };

    const double delta = 0.5;
    r.min_p = r.min_q = r.min_residual_p = r.min_residual_q = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k <= m; ++k) {
        const double x = node(0.0, 1.0, k, m);
        const double qx = q(x);
        r.min_q = std::min(r.min_q, qx);
        r.min_residual_q = std::min(r.min_residual_q, -d2q(x) + dq(x) / eps + qx);
        if (x <= delta)
            r.linf_far = std::max(r.linf_far, std::abs(qx));
        else
            r.linf_near = std::max(r.linf_near, std::abs(qx));

        const double y = node(1.0, 2.0, k, m);
        const double py = p(y);
        r.min_p = std::min(r.min_p, py);
        r.min_residual_p = std::min(r.min_residual_p, py);  // p'' = 0
    }
    r.value_interface = q1;
    r.value_end = p(2.0);
    r.gap_value = std::abs(p(1.0) - q1);
    r.gap_derivative = std::abs(slope - (dq(1.0) - q1 / eps));
    r.pass = r.min_p >= r.beta && r.min_q >= r.beta && r.min_residual_p >= -r.tol && r.min_residual_q >= -r.tol &&
             r.gap_value <= r.tol && r.gap_derivative <= r.tol;
    return r;
}

SupersolReport check_spherical(double eps, std::size_t m) {
    check_inputs(eps, 0.5, m);
    SupersolReport r;
    r.kind = "spherical";
    r.eps = eps;
    r.grid_pts = m + 1;
    r.beta = 0.25;
    r.tol = 1e-10;

    const double i0_1 = bessel_i(0, 1.0);
    const double i1_1 = bessel_i(1, 1.0);
    const double d = i1_1 / (1.0 - eps);
    const double e = i0_1 - eps * d;

    auto p = [&](double x) { return bessel_i(0, x) / eps; };
    auto dp = [&](double x) { return bessel_i(1, x) / eps; };
    // I1' = I0 - I1/x
    auto d2p = [&](double x) { return (bessel_i(0, x) - bessel_i1_over_x(x)) / eps; };

    auto layer = [&](double x) { return std::exp(-(x - 1.0) / eps); };
    auto q = [&](double x) { return d / x + e / eps * layer(x); };
    auto dq = [&](double x) { return -d / (x * x) - e / (eps * eps) * layer(x); };
    auto d2q = [&](double x) { return 2.0 * d / (x * x * x) + e / (eps * eps * eps) * layer(x); };

    const double delta = 0.5;
    r.min_p = r.min_q = r.min_residual_p = r.min_residual_q = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k <= m; ++k) {
        const double x = node(0.0, 1.0, k, m);
        const double px = p(x);
        r.min_p = std::min(r.min_p, px);
        // -p'' - p'/r + p, with p'/r = I1(r)/(r eps)
        r.min_residual_p = std::min(r.min_residual_p, -d2p(x) - bessel_i1_over_x(x) / eps + px);

        const double y = node(1.0, 2.0, k, m);
        const double qy = q(y);
        r.min_q = std::min(r.min_q, qy);
        r.min_residual_q =
            std::min(r.min_residual_q, -d2q(y) - (1.0 / y + 1.0 / eps) * dq(y) + (1.0 - 1.0 / (eps * y)) * qy);
        if (y < 1.0 + delta)
            r.linf_near = std::max(r.linf_near, std::abs(qy));
        else
            r.linf_far = std::max(r.linf_far, std::abs(qy));
    }
    r.p_prime_origin = std::abs(dp(0.0));
    r.value_interface = q(1.0);
    r.value_end = q(2.0);
    r.gap_value = std::abs(p(1.0) - q(1.0));
    r.gap_derivative = std::abs(dp(1.0) - (dq(1.0) + q(1.0) / eps));
    r.pass = r.min_p >= r.beta && r.min_q >= r.beta && r.min_residual_p >= -r.tol && r.min_residual_q >= -r.tol &&
             r.gap_value <= r.tol && r.gap_derivative <= r.tol && r.p_prime_origin <= r.tol;
    return r;
}

}  // namespace penalfd

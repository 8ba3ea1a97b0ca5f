#pragma once

#include <cstddef>
#include <string>

namespace penalfd {

// Modified Bessel function I_nu, nu in {0,1}, by its Taylor series on [0,4].
double bessel_i(int nu, double x);
// I_1(x)/x, finite at x = 0.
double bessel_i1_over_x(double x);

struct SupersolReport {
    std::string kind;  // "1d" or "spherical"
    double eps = 0.0;
    std::size_t grid_pts = 0;
    double beta = 0.0;
    double tol = 0.0;
    double min_p = 0.0;
    double min_q = 0.0;
    double min_residual_p = 0.0;
    double min_residual_q = 0.0;
    double gap_value = 0.0;       // |p(1) - q(1)|
    double gap_derivative = 0.0;  // mismatch of the flux condition at the interface
    double p_prime_origin = 0.0;  // spherical only
    double linf_near = 0.0;       // sup of q over the band next to the interface
    double linf_far = 0.0;        // sup of q over the band away from it
    double value_interface = 0.0;  // q(1)
    double value_end = 0.0;        // outer function at x = 2: p for 1d, q for spherical
    bool pass = false;
};

// q on ]0,1[ and affine p on ]1,2[, interface at x = 1, delta = 1/2,
// beta = 1/2, tolerance 1e-12. Requires 0 < eps < 1 and M >= 100.
SupersolReport check_1d(double eps, std::size_t m);

// p = I0(r)/eps on ]0,1[, q = d/r + (e/eps) exp(-(r-1)/eps) on ]1,2[ with
// d = I1(1)/(1-eps), e = I0(1) - eps d. delta = 1/2, beta = 1/4, tolerance
// 1e-10. Requires 0 < eps < 1/2 and M >= 100.
SupersolReport check_spherical(double eps, std::size_t m);

}  // namespace penalfd

#include <gtest/gtest.h>

#include <cmath>

#include "penalfd/errors.hpp"
#include "penalfd/supersolutions.hpp"

using namespace penalfd;

namespace {

// Power series summed in extended precision until the terms vanish.
long double series_oracle(int nu, long double x) {
    long double sum = 0.0L;
    long double fact_k = 1.0L;
    for (int k = 0; k < 60; ++k) {
        if (k > 0) fact_k *= k;
        long double fact_knu = fact_k;
        for (int m = 1; m <= nu; ++m) fact_knu *= (k + m);
        sum += std::pow(x / 2.0L, 2 * k + nu) / (fact_k * fact_knu);
    }
    return sum;
}

}  // namespace

TEST(Bessel, SeriesValues) {
    EXPECT_EQ(bessel_i(0, 0.0), 1.0);
    EXPECT_EQ(bessel_i(1, 0.0), 0.0);
    EXPECT_NEAR(bessel_i(0, 1.0), 1.26606588, 5e-9);
    EXPECT_NEAR(bessel_i(1, 1.0), 0.56515910, 5e-9);
    for (double x : {0.01, 0.5, 1.0, 1.7, 2.5, 3.3, 4.0}) {
        for (int nu : {0, 1}) {
            const double ref = static_cast<double>(series_oracle(nu, x));
            EXPECT_NEAR(bessel_i(nu, x), ref, 1e-14 * ref) << nu << " " << x;
        }
        EXPECT_NEAR(bessel_i1_over_x(x), bessel_i(1, x) / x, 1e-15 * bessel_i(1, x) / x);
    }
    EXPECT_EQ(bessel_i1_over_x(0.0), 0.5);
}

TEST(Bessel, DerivativeIdentity) {
    const double h = 1e-5;
    EXPECT_NEAR((bessel_i(0, 1.0 + h) - bessel_i(0, 1.0 - h)) / (2 * h), bessel_i(1, 1.0), 1e-9);
}

TEST(Bessel, DomainChecked) {
    EXPECT_THROW(bessel_i(0, -0.1), DomainError);
    EXPECT_THROW(bessel_i(0, 4.5), DomainError);
    EXPECT_THROW(bessel_i(2, 1.0), InvalidArgument);
}

TEST(Supersol1d, ValuesAtTheInterfaceAndEnd) {
    const SupersolReport r = check_1d(0.1, 1000);
    EXPECT_NEAR(r.value_interface, 1.0 + 10.0 - 10.0 * std::exp(-10.0), 1e-13);
    EXPECT_NEAR(r.value_interface, 10.999546, 5e-7);
    // p(2) = q(1) + q'(1) - q(1)/eps with q'(1) = 1/eps^2.
    const double q1 = r.value_interface;
    EXPECT_NEAR(r.value_end, q1 + 100.0 - q1 / 0.1, 1e-12);
    EXPECT_NEAR(r.value_end, 1.0 + std::exp(-10.0) * (100.0 - 10.0), 1e-12);
}

TEST(Supersol1d, PassesOverEpsRange) {
    double ratio_near = 0.0, ratio_far = 0.0;
    for (double eps : {1e-1, 1e-2, 1e-3}) {
        const SupersolReport r = check_1d(eps, 1000);
        EXPECT_TRUE(r.pass) << eps;
        EXPECT_GE(r.min_q, 1.0 - std::exp(-1.0 / eps) / eps - 1e-12);
        EXPECT_GE(r.min_residual_p, -1e-12);
        EXPECT_GE(r.min_residual_q, -1e-12);
        EXPECT_LE(r.gap_value, 1e-12);
        EXPECT_LE(r.gap_derivative, 1e-12);
        EXPECT_EQ(r.grid_pts, 1001u);
        const double near = r.linf_near * eps, far = r.linf_far;
        if (ratio_near > 0.0) {
            EXPECT_LE(near / ratio_near, 3.0);
            EXPECT_GE(near / ratio_near, 1.0 / 3.0);
            EXPECT_LE(far / ratio_far, 3.0);
            EXPECT_GE(far / ratio_far, 1.0 / 3.0);
        }
        ratio_near = near;
        ratio_far = far;
    }
}

TEST(SupersolSpherical, PassesOverEpsRange) {
    const double i0 = static_cast<double>(series_oracle(0, 1.0L));
    const double i1 = static_cast<double>(series_oracle(1, 1.0L));
    double ratio_near = 0.0, ratio_far = 0.0;
    for (double eps : {1e-1, 1e-2}) {
        const SupersolReport r = check_spherical(eps, 1000);
        EXPECT_TRUE(r.pass) << eps;
        EXPECT_GE(r.min_p, 1.0 / eps - 1e-9);
        EXPECT_LE(r.gap_value, 1e-10);
        EXPECT_LE(r.gap_derivative, 1e-10);
        EXPECT_LE(r.p_prime_origin, 1e-10);
        const double d = i1 / (1.0 - eps);
        const double e = i0 - eps * d;
        EXPECT_NEAR(r.value_interface, d + e / eps, 1e-12 / eps);
        EXPECT_NEAR(r.value_end, d / 2.0 + e / eps * std::exp(-1.0 / eps), 1e-12);
        const double near = r.linf_near * eps, far = r.linf_far;
        if (ratio_near > 0.0) {
            EXPECT_LE(near / ratio_near, 3.0);
            EXPECT_GE(near / ratio_near, 1.0 / 3.0);
            EXPECT_LE(far / ratio_far, 3.0);
            EXPECT_GE(far / ratio_far, 1.0 / 3.0);
        }
        ratio_near = near;
        ratio_far = far;
    }
}

TEST(SupersolSpherical, RadialResidualOfQ) {
    // Independent evaluation of e/eps exp(-(r-1)/eps) + d (r^2-1)/r^3 on ]1,2[.
    const double eps = 0.1;
    const double d = 0.56515910399248502 / (1.0 - eps);
    const double e = 1.2660658777520082 - eps * d;
    for (double r = 1.0; r <= 2.0; r += 0.01)
        EXPECT_GE(e / eps * std::exp(-(r - 1.0) / eps) + d * (r * r - 1.0) / (r * r * r), 0.0);
    EXPECT_GE(check_spherical(eps, 1000).min_residual_q, -1e-10);
}

TEST(Supersol, InputRanges) {
    EXPECT_THROW(check_1d(0.0, 1000), InvalidArgument);
    EXPECT_THROW(check_1d(1.0, 1000), InvalidArgument);
    EXPECT_THROW(check_1d(0.1, 99), InvalidArgument);
    EXPECT_THROW(check_spherical(0.5, 1000), InvalidArgument);
}

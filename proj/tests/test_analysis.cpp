#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "penalfd/analysis.hpp"
#include "penalfd/errors.hpp"

using namespace penalfd;

namespace {

ExtensionFields square_fields(double tol) {
    return ExtensionFields(DomainSpec::square(0.3), [](Point, Vec2) { return 0.0; }, CornerRule::PlusX, tol);
}

ExtensionFields disk_fields(double tol) {
    return ExtensionFields(DomainSpec::disk(0.3), [](Point, Vec2) { return 0.0; }, CornerRule::PlusX, tol);
}

std::vector<double> sample(const Grid& g, const std::function<double(Point)>& f) {
    std::vector<double> u(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) u[k] = f(g.point(k));
    return u;
}

// Nodes of the mask counted by brute force from its definition.
std::size_t count_nodes(const Grid& g, const ExtensionFields& f, const std::function<bool(Point)>& in) {
    std::size_t m = 0;
    for (std::size_t k = 0; k < g.size(); ++k)
        if (in(g.point(k))) ++m;
    (void)f;
    return m;
}

const ReferenceField kLinear{[](Point p) { return p.x + p.y; }, [](Point) { return Vec2{1.0, 1.0}; }};

}  // namespace

TEST(Mask, NamesRoundTrip) {
    for (const char* s : {"full", "noboundary", "interior:0.1", "strip:0.1:0.2:0.5:0.501"}) {
        EXPECT_EQ(Mask::parse(s).name(), s);
    }
    EXPECT_EQ(Mask::parse("interior:0.1").kind, Mask::Kind::FluidInterior);
    EXPECT_THROW(Mask::parse("bogus"), InvalidArgument);
    EXPECT_THROW(Mask::parse("interior:0"), InvalidArgument);
    EXPECT_THROW(Mask::parse("strip:0.2:0.1:0:1"), InvalidArgument);
}

TEST(Mask, NodeCountsOnSquare) {
    const Grid g(10);
    const ExtensionFields f = square_fields(g.h() * 1e-9);
    // Nodes 2..8 form closure(U), 3..7 its interior.
    auto count = [&](const Mask& m) {
        return count_nodes(g, f, [&](Point p) { return m.contains(f, p, g.h()); });
    };
    EXPECT_EQ(count(Mask::fluid_full()), 49u);
    EXPECT_EQ(count(Mask::fluid_no_boundary()), 25u);
    EXPECT_EQ(count(Mask::fluid_interior(0.1)), 25u);
    EXPECT_EQ(count(Mask::fluid_interior(0.25)), 1u);
    EXPECT_EQ(count(Mask::obstacle_strip(0.1, 0.2, 0.5, 0.5)), 2u);
}

TEST(ErrorNorms, ZeroWhenFieldsAgree) {
    const Grid g(20);
    const ExtensionFields f = disk_fields(g.h() * 1e-9);
    const std::vector<double> u = sample(g, kLinear.value);
    for (const char* m : {"full", "noboundary", "interior:0.1"}) {
        const ErrorReport r = error_norms(g, u, f, kLinear, Mask::parse(m));
        EXPECT_EQ(r.l_inf, 0.0);
        EXPECT_EQ(r.l2_sum, 0.0);
        EXPECT_LE(r.h1_sum, 1e-24) << m;
        EXPECT_GT(r.nodes, 0u);
    }
}

TEST(ErrorNorms, ConstantMismatch) {
    const Grid g(20);
    const double h = g.h();
    const ExtensionFields f = square_fields(h * 1e-9);
    const double delta = 0.125;
    std::vector<double> u = sample(g, kLinear.value);
    for (double& v : u) v += delta;
    const ErrorReport r = error_norms(g, u, f, kLinear, Mask::fluid_full());
    const double m = static_cast<double>(r.nodes);
    EXPECT_EQ(r.nodes, 13u * 13u);
    EXPECT_NEAR(r.l_inf, delta, 1e-15);
    EXPECT_NEAR(r.l2_sum, m * h * h * delta * delta, 1e-14);
    EXPECT_NEAR(r.l2, std::sqrt(m * h * h * delta * delta), 1e-14);
    EXPECT_NEAR(r.h1_sum, r.l2_sum, 1e-12);
}

TEST(ErrorNorms, LinearGradientsExact) {
    const Grid g(10);
    for (const ExtensionFields& f : {square_fields(1e-10), disk_fields(1e-10)}) {
        const std::vector<double> u = sample(g, kLinear.value);
        for (const char* m : {"full", "noboundary"}) {
            const ErrorReport r = error_norms(g, u, f, kLinear, Mask::parse(m), true);
            ASSERT_EQ(r.ux.size(), r.nodes);
            for (std::size_t k = 0; k < r.nodes; ++k) {
                EXPECT_NEAR(r.ux[k], 1.0, 1e-12);
                EXPECT_NEAR(r.uy[k], 1.0, 1e-12);
            }
        }
    }
}

TEST(DiscreteGradient, OneSidedStencilIsSecondOrder) {
    const Grid g(10);
    const double h = g.h();
    const std::vector<double> u = sample(g, [](Point p) { return p.x * p.x; });
    // Support restricted to i >= 3: node (3, j) must use (3u0 - 4u1 + u2)/2h style differences.
    const auto support = [](int i, int) { return i >= 3; };
    const Vec2 d = discrete_gradient(g, u, 3, 5, support);
    EXPECT_NEAR(d.x, 2.0 * 3 * h, 1e-12);
    const std::vector<double> cube = sample(g, [](Point p) { return p.x * p.x * p.x; });
    const Vec2 c = discrete_gradient(g, cube, 3, 5, support);
    const double x0 = 3 * h;
    const double one_sided = (-3 * x0 * x0 * x0 + 4 * std::pow(x0 + h, 3) - std::pow(x0 + 2 * h, 3)) / (2 * h);
    EXPECT_NEAR(c.x, one_sided, 1e-13);
    const Vec2 central = discrete_gradient(g, cube, 5, 5, support);
    EXPECT_NEAR(central.x, (std::pow(6 * h, 3) - std::pow(4 * h, 3)) / (2 * h), 1e-13);
}

TEST(ErrorNorms, LinfMonotoneUnderMaskInclusion) {
    const Grid g(40);
    const ExtensionFields f = disk_fields(g.h() * 1e-9);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> noise(-1.0, 1.0);
    std::vector<double> u = sample(g, kLinear.value);
    for (double& v : u) v += 1e-3 * noise(rng);
    const double full = error_norms(g, u, f, kLinear, Mask::fluid_full()).l_inf;
    const double nob = error_norms(g, u, f, kLinear, Mask::fluid_no_boundary()).l_inf;
    const double in1 = error_norms(g, u, f, kLinear, Mask::fluid_interior(0.1)).l_inf;
    const double in2 = error_norms(g, u, f, kLinear, Mask::fluid_interior(0.2)).l_inf;
    EXPECT_LE(nob, full);
    EXPECT_LE(in1, nob);
    EXPECT_LE(in2, in1);
}

TEST(ErrorNorms, EmptyMaskRejected) {
    const Grid g(10);
    const ExtensionFields f = square_fields(1e-10);
    const std::vector<double> u(g.size(), 0.0);
    EXPECT_THROW(error_norms(g, u, f, kLinear, Mask::obstacle_strip(0.01, 0.02, 0.5, 0.6)), InvalidArgument);
    EXPECT_THROW(error_norms(g, std::vector<double>(3), f, kLinear, Mask::fluid_full()), InvalidArgument);
}

TEST(ConvergenceOrder, PowerLaws) {
    const std::vector<std::pair<double, double>> h{{50, 1.0}, {100, 0.25}};
    EXPECT_EQ(convergence_order(h).at(0), -2.0);
    const std::vector<std::pair<double, double>> e{{1e-1, 1.0}, {1e-2, 0.1}};
    EXPECT_NEAR(convergence_order(e).at(0), 1.0, 1e-15);
    std::vector<std::pair<double, double>> law;
    for (double n : {50.0, 100.0, 150.0, 200.0}) law.push_back({n, 3.7 * std::pow(n, -1.37)});
    for (double o : convergence_order(law)) EXPECT_NEAR(o, -1.37, 1e-12);
    const std::vector<std::pair<double, double>> bad{{1.0, 0.0}, {2.0, 1.0}};
    EXPECT_THROW(convergence_order(bad), InvalidArgument);
    const std::vector<std::pair<double, double>> one{{1.0, 1.0}};
    EXPECT_THROW(convergence_order(one), InvalidArgument);
}

TEST(BlThickness, RecoversSyntheticLayer) {
    const auto ulim = [](Point p) { return 1.0 + p.y * p.x; };
    for (double eps : {1e-1, 1e-2}) {
        for (int n : {50, 1000}) {
            const Grid g(n);
            const std::vector<double> u =
                sample(g, [&](Point p) { return ulim(p) * (1.0 - std::exp(-p.x / eps)); });
            const BlThickness b = bl_thickness(g, u, ulim, 0.5);
            EXPECT_NEAR(b.bl2, eps, 4e-15 * eps / g.h()) << eps << " " << n;
            EXPECT_NEAR(b.ru, 1.0 - std::exp(-g.h() / eps), 1e-15);
            EXPECT_NEAR(b.bl1, g.h() / b.ru, 1e-15);
        }
    }
}

TEST(BlThickness, RatioOutsideUnitIntervalRejected) {
    const Grid g(10);
    const auto ulim = [](Point) { return 1.0; };
    const std::vector<double> over(g.size(), 1.5);
    EXPECT_THROW(bl_thickness(g, over, ulim, 0.5), EstimatorDomainError);
    const std::vector<double> neg(g.size(), -0.5);
    EXPECT_THROW(bl_thickness(g, neg, ulim, 0.5), EstimatorDomainError);
}

TEST(RatioProfile, CutLine) {
    const Grid g(20);
    const auto ulim = [](Point p) { return p.x - 0.5; };
    const std::vector<double> same = sample(g, ulim);
    const RatioProfile r = ratio_profile(g, same, ulim, 0.5);
    ASSERT_EQ(r.skipped_x.size(), 1u);
    EXPECT_NEAR(r.skipped_x[0], 0.5, 1e-15);
    EXPECT_EQ(r.points.size(), 20u);
    for (const auto& [x, ru] : r.points) EXPECT_NEAR(ru, 1.0, 1e-14);

    const double eps = 0.01;
    const auto one = [](Point) { return 1.0; };
    const std::vector<double> layer = sample(g, [&](Point p) { return 1.0 - std::exp(-p.x / eps); });
    const RatioProfile l = ratio_profile(g, layer, one, 0.5);
    EXPECT_EQ(l.points.front().second, 0.0);
    for (const auto& [x, ru] : l.points)
        if (x >= 10 * eps) {
            EXPECT_GE(ru, 0.99);
            EXPECT_LE(ru, 1.01);
        }
    const auto zero = [](Point) { return 0.0; };
    EXPECT_THROW(ratio_profile(g, layer, zero, 0.5), DomainError);
}

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "penalfd/assembly.hpp"
#include "penalfd/errors.hpp"
#include "penalfd/reference.hpp"
#include "support/dense_oracle.hpp"

using namespace penalfd;

namespace {

PenalConfig disk_config(double eps, Scheme scheme = Scheme::Upwind1) {
    PenalConfig c;
    c.eps = eps;
    c.alpha = 2.0;
    c.scheme = scheme;
    c.domain = DomainSpec::disk(0.3);
    c.allow_upwind2_disk = scheme == Scheme::Upwind2;
    c.source = ManufacturedCase::disk_sin(5.0).data(2.0);
    return c;
}

PenalConfig square_config(double eps, Scheme scheme = Scheme::Upwind2, CornerRule rule = CornerRule::PlusX) {
    PenalConfig c;
    c.eps = eps;
    c.alpha = 2.0;
    c.scheme = scheme;
    c.domain = DomainSpec::square(0.3);
    c.corner_rule = rule;
    c.source = ManufacturedCase::square_sin5().data(2.0);
    return c;
}

void expect_matches_oracle(int n, const PenalConfig& cfg) {
    const Grid g(n);
    const ExtensionFields f = make_fields(g, cfg);
    const AssembledSystem sys = assemble(g, cfg, f);
    const oracle::DenseSystem ref = oracle::assemble(n, cfg, f);
    const oracle::Dense got = oracle::to_dense(sys.matrix);
    for (std::size_t r = 0; r < got.size(); ++r) {
        // each oracle term is rounded separately; allow a few ulps of the row scale
        double scale = 0.0;
        for (double v : ref.a[r]) scale = std::max(scale, std::abs(v));
        for (std::size_t c = 0; c < got.size(); ++c)
            ASSERT_NEAR(got[r][c], ref.a[r][c], 4.0 * std::numeric_limits<double>::epsilon() * scale)
                << "row " << r << " col " << c;
        ASSERT_NEAR(sys.rhs[r], ref.b[r], 2.0 * std::numeric_limits<double>::epsilon() * std::abs(ref.b[r]))
            << "rhs row " << r;
    }
}

}  // namespace

TEST(AssembleUpwind1, DiskExampleEntries) {
    const Grid g(10);
    const PenalConfig cfg = disk_config(0.1);
    const AssembledSystem sys = assemble_upwind1(g, cfg, make_fields(g, cfg));
    const std::size_t n = g.node_of(1, 1);
    EXPECT_NEAR(sys.matrix.at(n, n), 400.0 + 1.0 + 100.0 * std::sqrt(2.0) + 20.0, 1e-10);
    EXPECT_NEAR(sys.matrix.at(n, n), 562.42135, 1e-5);
    EXPECT_NEAR(sys.matrix.at(n, n + 1), -100.0 - 50.0 * std::sqrt(2.0), 1e-10);
    EXPECT_NEAR(sys.matrix.at(n, n + 1), -170.7107, 1e-4);
}

TEST(AssembleUpwind1, BoxBoundaryRowsAreIdentity) {
    const Grid g(12);
    const PenalConfig cfg = disk_config(0.01);
    const AssembledSystem sys = assemble_upwind1(g, cfg, make_fields(g, cfg));
    for (std::size_t n = 0; n < g.size(); ++n) {
        if (!g.is_box_boundary(n)) continue;
        ASSERT_EQ(sys.matrix.row_cols(n).size(), 1u);
        EXPECT_EQ(sys.matrix.row_cols(n)[0], n);
        EXPECT_EQ(sys.matrix.row_values(n)[0], 1.0);
        EXPECT_EQ(sys.rhs[n], 0.0);
    }
}

TEST(AssembleUpwind2, SquareExampleDiagonal) {
    const Grid g(10);
    const PenalConfig cfg = square_config(0.1);
    const AssembledSystem sys = assemble_upwind2(g, cfg, make_fields(g, cfg));
    const std::size_t n = g.node_of(9, 5);  // right strip, n = (1,0)
    EXPECT_NEAR(sys.matrix.at(n, n), 571.0, 1e-10);
    // backward x stencil: A_{n,n-N-1} = -1/h^2 - 2 n_x/(eps h)
    EXPECT_NEAR(sys.matrix.at(n, n - 11), -100.0 - 200.0, 1e-10);
    EXPECT_NEAR(sys.matrix.at(n, n - 22), 50.0, 1e-10);
}

TEST(AssembleUpwind2, FluidRowsArePlainFivePoint) {
    const Grid g(20);
    const PenalConfig cfg = square_config(1e-3);
    const AssembledSystem sys = assemble_upwind2(g, cfg, make_fields(g, cfg));
    const std::vector<double> ones(g.size(), 1.0);
    const std::vector<double> y = sys.matrix.multiply(ones);
    const std::size_t n = g.node_of(10, 10);
    EXPECT_EQ(sys.matrix.row_cols(n).size(), 5u);
    EXPECT_NEAR(sys.matrix.at(n, n), 4.0 * 400.0 + 1.0, 1e-9);
    EXPECT_NEAR(sys.matrix.at(n, n + 1), -400.0, 1e-9);
    for (int i = 6; i <= 14; ++i)
        for (int j = 6; j <= 14; ++j) EXPECT_NEAR(y[g.node_of(i, j)], 1.0, 1e-9);
}

TEST(AssembleUpwind2, RegionEntriesFollowTableSigns) {
    const Grid g(10);
    const PenalConfig cfg = square_config(0.1);
    const AssembledSystem sys = assemble_upwind2(g, cfg, make_fields(g, cfg));
    const double h = 0.1, eps = 0.1;
    // top strip (0.5,0.9): n = (0,1), backward in y
    const std::size_t top = g.node_of(5, 9);
    EXPECT_NEAR(sys.matrix.at(top, top - 1), -1.0 / (h * h) - 2.0 / (eps * h), 1e-10);
    EXPECT_NEAR(sys.matrix.at(top, top - 2), 1.0 / (2.0 * eps * h), 1e-10);
    // left strip (0.1,0.5): n = (-1,0), forward in x
    const std::size_t left = g.node_of(1, 5);
    EXPECT_NEAR(sys.matrix.at(left, left + 11), -1.0 / (h * h) - 2.0 / (eps * h), 1e-10);
    EXPECT_NEAR(sys.matrix.at(left, left + 22), 1.0 / (2.0 * eps * h), 1e-10);
}

TEST(Assemble, SchemeMismatchAndValidation) {
    const Grid g(10);
    PenalConfig cfg = square_config(0.1, Scheme::Upwind2);
    EXPECT_THROW(assemble_upwind1(g, cfg, make_fields(g, cfg)), InvalidArgument);
    PenalConfig d = disk_config(0.1, Scheme::Upwind1);
    d.scheme = Scheme::Upwind2;
    EXPECT_THROW(assemble(g, d, make_fields(g, d)), InvalidArgument);
    d.allow_upwind2_disk = true;
    EXPECT_NO_THROW(assemble(g, d, make_fields(g, d)));
    PenalConfig z = square_config(0.0);
    EXPECT_THROW(z.validate(), InvalidArgument);
}

TEST(Assemble, MatchesDenseOracle) {
    for (int n : {4, 6, 8, 10, 12})
        for (double eps : {1.0, 0.1, 1e-3}) {
            SCOPED_TRACE("N=" + std::to_string(n) + " eps=" + std::to_string(eps));
            expect_matches_oracle(n, disk_config(eps));
            expect_matches_oracle(n, disk_config(eps, Scheme::Upwind2));
        }
    for (int n : {10})  // (1/2 - R) N integral
        for (double eps : {1.0, 0.1, 1e-3})
            for (CornerRule rule : {CornerRule::PlusX, CornerRule::MinusY, CornerRule::Mean}) {
                expect_matches_oracle(n, square_config(eps, Scheme::Upwind2, rule));
                expect_matches_oracle(n, square_config(eps, Scheme::Upwind1, rule));
            }
}

TEST(AssembleUpwind1, DiagonalDominanceMarginAtLeastOne) {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> log_eps(-4.0, 0.0);
    std::uniform_int_distribution<int> half_n(2, 20);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 * half_n(rng);
        const Grid g(n);
        PenalConfig cfg = disk_config(std::pow(10.0, log_eps(rng)));
        cfg.alpha = trial % 2 ? 0.0 : 2.0;
        const AssembledSystem sys = assemble_upwind1(g, cfg, make_fields(g, cfg));
        for (std::size_t r = 0; r < g.size(); ++r) {
            long double off = 0.0L, diag = 0.0L;
            const auto cols = sys.matrix.row_cols(r);
            const auto vals = sys.matrix.row_values(r);
            for (std::size_t k = 0; k < cols.size(); ++k) {
                if (cols[k] == r)
                    diag = std::abs(static_cast<long double>(vals[k]));
                else
                    off += std::abs(static_cast<long double>(vals[k]));
            }
            ASSERT_GE(static_cast<double>(diag - off), 1.0 - 1e-9) << "row " << r;
        }
    }
}

TEST(AssembleUpwind1, NormBoundForDisk) {
    const Grid g(100);
    for (double eps : {1e-1, 1e-3, 1e-5}) {
        const PenalConfig cfg = disk_config(eps);
        const AssembledSystem sys = assemble_upwind1(g, cfg, make_fields(g, cfg));
        const double h = g.h();
        const double bound = (2.0 + 4.0 / (0.3 * h)) / eps + 1.0 + 8.0 / (h * h);
        EXPECT_LE(sys.matrix.norm_inf(), bound);
        // 1000 (2 + 4/0.003) + 1 + 8e4
        if (eps == 1e-3) EXPECT_NEAR(bound, 1415334.3333333, 1e-6);
    }
}

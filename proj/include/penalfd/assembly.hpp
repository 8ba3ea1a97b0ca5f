#pragma once

#include <functional>

#include "penalfd/geometry.hpp"
#include "penalfd/grid.hpp"
#include "penalfd/linear_solve.hpp"

namespace penalfd {

enum class Scheme { Upwind1, Upwind2 };

// Right-hand side data of -Lap u + u = f in U, du/dnu + alpha u = g~ on dU.
struct ProblemData {
    std::function<double(Point)> f;
    BoundaryData gtilde;
};

struct PenalConfig {
    double eps = 1e-10;
    double alpha = 2.0;
    Scheme scheme = Scheme::Upwind1;
    DomainSpec domain{};
    CornerRule corner_rule = CornerRule::PlusX;
    // Upwind2 is defined for the square obstacle; this lifts the restriction.
    bool allow_upwind2_disk = false;
    ProblemData source;

    // Throws InvalidArgument on eps <= 0, alpha < 0, empty closures or an
    // unsupported scheme/domain pair.
    void validate() const;
};

// Extension fields of `cfg` with the dU classification tolerance h * 1e-9.
ExtensionFields make_fields(const Grid& grid, const PenalConfig& cfg);

// First-order upwind advection, centered Laplacian. Upwind side chosen by the
// index quadrant test (i <= N/2 means n_x <= 0, likewise for j).
AssembledSystem assemble_upwind1(const Grid& grid, const PenalConfig& cfg, const ExtensionFields& fields);

// Second-order one-sided advection stencils. Square obstacle: upwind side from
// the coordinate regions of the obstacle; disk (override): from the sign of n.
// A direction whose 3-point stencil would leave the grid degrades to first order.
AssembledSystem assemble_upwind2(const Grid& grid, const PenalConfig& cfg, const ExtensionFields& fields);

AssembledSystem assemble(const Grid& grid, const PenalConfig& cfg, const ExtensionFields& fields);

}  // namespace penalfd

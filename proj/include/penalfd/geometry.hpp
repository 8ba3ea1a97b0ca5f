#pragma once

#include <functional>

namespace penalfd {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

enum class DomainKind { DiskInSquare, SquareInSquare };

// Value taken by n and g on the corners of a square obstacle.
//   PlusX  - limit along the horizontal side through the corner
//   MinusY - limit along the vertical side through the corner
//   Mean   - average of the two one-sided limits
enum class CornerRule { PlusX, MinusY, Mean };

// Obstacle U inside the box ]0,1[^2. The fluid domain is U, the penalized
// region is omega = box \ closure(U).
struct DomainSpec {
    DomainKind kind = DomainKind::SquareInSquare;
    double radius = 0.3;
    Point center{0.5, 0.5};

    static DomainSpec disk(double radius);
    static DomainSpec square(double half_size);

    // psi: r - R for the disk, max(|x-x0|,|y-y0|) - R for the square.
    // Negative inside U, zero on its boundary.
    double level(Point p) const;

    void validate() const;
};

// Boundary datum g~ evaluated at a point of dU with the outward unit normal
// that applies there.
using BoundaryData = std::function<double(Point, Vec2)>;

// chi(x,y): 1 on closure(omega) including dU, 0 in open U. `tol` is the
// absolute tolerance on psi used to classify points as lying on dU.
int chi_at(const DomainSpec& spec, double x, double y, double tol = 1e-12);

// Extensions of the unit normal and the boundary data into omega.
//
// Disk: n is radial from the center, g is g~ at the radial projection.
// Square: n is the outward normal of the side nearest in the L-inf sense, so
// the four corner sectors are split along the diagonals; g is g~ at the
// orthogonal projection on that side, clamped to the side's closed segment.
// Obstacle corners follow `corner_rule`. Points on a diagonal seam beyond a
// corner take the horizontal side under PlusX and Mean, the vertical side
// under MinusY.
class ExtensionFields {
public:
    ExtensionFields(DomainSpec spec, BoundaryData gtilde,
                    CornerRule corner_rule = CornerRule::PlusX,
                    double boundary_tol = 1e-12);

    const DomainSpec& domain() const { return spec_; }
    CornerRule corner_rule() const { return corner_rule_; }
    double boundary_tol() const { return tol_; }

    int chi(Point p) const { return chi_at(spec_, p.x, p.y, tol_); }
    bool on_obstacle_boundary(Point p) const;

    // Throws DomainError at the disk center.
    Vec2 normal(Point p) const;
    double gdata(Point p) const;

    double psi(Point p) const { return spec_.level(p); }
    // Laplacian of psi: 1/r for the disk, 0 for the square off the seams.
    double laplacian_psi(Point p) const;

    // Point of dU reached by following the extension back from p (radial or
    // orthogonal projection).
    Point foot(Point p) const;

private:
    enum class Side { Left, Right, Bottom, Top };
    enum class SquareRegion { Side, Corner };

    struct SquareSelection {
        SquareRegion region;
        Side side;      // valid when region == Side
        Side x_side;    // corner: vertical side through the corner
        Side y_side;    // corner: horizontal side through the corner
    };

    SquareSelection select_square(Point p) const;
    Vec2 side_normal(Side s) const;
    Point project_on_side(Point p, Side s) const;

    DomainSpec spec_;
    BoundaryData gtilde_;
    CornerRule corner_rule_;
    double tol_;
};

}  // namespace penalfd

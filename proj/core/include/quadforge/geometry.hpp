#ifndef QUADFORGE_GEOMETRY_HPP
#define QUADFORGE_GEOMETRY_HPP

#include <iosfwd>

namespace quadforge {

struct Vec2 {
    double x, y;
};

/// Symmetric 2x2 matrix M of the central quadric x M x^t = 1.
struct Conic {
    double m11, m12, m22;

    double det() const { return m11 * m22 - m12 * m12; }
    double max_abs() const;
    /// Value of the quadric form at p.
    double value(Vec2 p) const;
};

std::ostream& operator<<(std::ostream& os, const Conic& m);

/// Coordinates (x, y) of c in the basis (a, b); a, b must be independent.
struct BasisCoords {
    double x, y;
};

BasisCoords solve_basis(Vec2 a, Vec2 b, Vec2 c);

/// Sector coefficient delta(a,b;c) = (1/(xy) - x/y - y/x)/2 for c = x a + y b.
/// Degenerate configurations (dependent a,b or a zero coordinate) are errors.
double sector_coefficient(Vec2 a, Vec2 b, Vec2 c);

/// Piecewise kernel arccos(x)/sqrt(1-x^2) | 1 | arcosh(x)/sqrt(x^2-1) for
/// |x|<1 | x=1 | x>1; a 3-term Taylor expansion bridges |x-1| < 1e-6.
/// x <= -1 (unbounded sector) is a domain error.
double f_kernel(double x);

/// Area of the conic sector between a and b: |det(a,b)|/2 * f(delta).
double sector_area(Vec2 a, Vec2 b, Vec2 c);

/// Generalised angle between a and b with respect to c: arccos(delta) for
/// |delta| < 1, arcosh(delta) for delta >= 1.
double angle(Vec2 a, Vec2 b, Vec2 c);

/// The unique central quadric through three pairwise independent points of
/// the plane: M = Phi^-t C Phi^-1 with Phi = (a b) and C the coefficient
/// matrix of x^2 + 2*delta*xy + y^2 = 1 in basis coordinates.
Conic conic_through(Vec2 a, Vec2 b, Vec2 c);

enum class ConicKind { ellipse, parallel_lines, hyperbola_branches };

struct ConicClass {
    double det;
    ConicKind kind;
};

/// Sign of the quadric determinant with zero threshold 1e-12 * ||M||_inf.
ConicClass conic_classify(const Conic& m);

} // namespace quadforge

#endif

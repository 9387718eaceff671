#include "quadforge/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace quadforge {

double Conic::max_abs() const
{
    return std::max({std::abs(m11), std::abs(m12), std::abs(m22)});
}

double Conic::value(Vec2 p) const
{
    return m11 * p.x * p.x + 2.0 * m12 * p.x * p.y + m22 * p.y * p.y;
}

std::ostream& operator<<(std::ostream& os, const Conic& m)
{
    return os << "((" << m.m11 << ',' << m.m12 << "),(" << m.m12 << ',' << m.m22 << "))";
}

namespace {

    double det2(Vec2 p, Vec2 q)
    {
        return p.x * q.y - p.y * q.x;
    }

    double config_scale(Vec2 a, Vec2 b, Vec2 c)
    {
        double s = 0.0;
        for (Vec2 v : {a, b, c})
            s = std::max({s, std::abs(v.x), std::abs(v.y)});
        return s * s;
    }

} // namespace

BasisCoords solve_basis(Vec2 a, Vec2 b, Vec2 c)
{
    double g = det2(a, b);
    if (std::abs(g) <= 1e-12 * config_scale(a, b, c))
        throw std::domain_error("solve_basis: a and b are linearly dependent");
    // Cramer: c = x a + y b.
    return {det2(c, b) / g, det2(a, c) / g};
}

double sector_coefficient(Vec2 a, Vec2 b, Vec2 c)
{
    auto [x, y] = solve_basis(a, b, c);
    if (x == 0.0 || y == 0.0)
        throw std::domain_error("sector_coefficient: c lies on a basis line");
    return 0.5 * (1.0 / (x * y) - x / y - y / x);
}

double f_kernel(double x)
{
    if (x <= -1.0)
        throw std::domain_error("f_kernel: x <= -1 names an unbounded sector");
    double h = x - 1.0;
    if (std::abs(h) < 1e-6) // both branches share this expansion at 1
        return 1.0 - h / 3.0 + 2.0 * h * h / 15.0;
    if (x < 1.0)
        return std::acos(x) / std::sqrt(1.0 - x * x);
    return std::acosh(x) / std::sqrt(x * x - 1.0);
}

double sector_area(Vec2 a, Vec2 b, Vec2 c)
{
    double delta = sector_coefficient(a, b, c);
    if (delta <= -1.0)
        throw std::domain_error("sector_area: sector is unbounded");
    return 0.5 * std::abs(det2(a, b)) * f_kernel(delta);
}

double angle(Vec2 a, Vec2 b, Vec2 c)
{
    double delta = sector_coefficient(a, b, c);
    if (delta <= -1.0)
        throw std::domain_error("angle: sector coefficient <= -1");
    if (delta < 1.0)
        return std::acos(delta);
    return std::acosh(delta);
}

Conic conic_through(Vec2 a, Vec2 b, Vec2 c)
{
    for (auto [p, q] : {std::pair{a, b}, std::pair{b, c}, std::pair{c, a}})
        if (std::abs(det2(p, q)) <= 1e-12 * config_scale(a, b, c))
            throw std::domain_error("conic_through: points are pairwise dependent");

    double delta = sector_coefficient(a, b, c);
    // C = ((1, delta), (delta, 1)) in the basis (a, b); pull back by Phi^-1.
    double g = det2(a, b);
    // Phi^-1 = ((b.y, -b.x), (-a.y, a.x)) / g, columns of Phi are a, b.
    double i11 = b.y / g, i12 = -b.x / g;
    double i21 = -a.y / g, i22 = a.x / g;
    // M = Phi^-t C Phi^-1 (rows of Phi^-1 are the covectors).
    Conic m;
    m.m11 = i11 * i11 + 2.0 * delta * i11 * i21 + i21 * i21;
    m.m12 = i11 * i12 + delta * (i11 * i22 + i12 * i21) + i21 * i22;
    m.m22 = i12 * i12 + 2.0 * delta * i12 * i22 + i22 * i22;
    return m;
}

ConicClass conic_classify(const Conic& m)
{
    double scale = m.max_abs();
    if (scale == 0.0)
        throw std::domain_error("conic_classify: zero matrix");
    double d = m.det();
    if (std::abs(d) <= 1e-12 * scale)
        return {d, ConicKind::parallel_lines};
    return {d, d > 0.0 ? ConicKind::ellipse : ConicKind::hyperbola_branches};
}

} // namespace quadforge

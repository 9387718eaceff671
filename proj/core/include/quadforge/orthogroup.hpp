#ifndef QUADFORGE_ORTHOGROUP_HPP
#define QUADFORGE_ORTHOGROUP_HPP

#include <vector>

#include "quadforge/classgroup.hpp"
#include "quadforge/forms.hpp"

namespace quadforge {

/// Integral solution of n_delta(x, y) = value, value = +-1, paired with the
/// equivalent Pell-type solution t^2 - delta*u^2 = 4*value via t = 2x + delta*y,
/// u = y.
struct NormSolution {
    Int x, y;
    int value;
    Int t, u;

    bool operator==(const NormSolution&) const = default;
};

/// The norm form n_delta = [1, delta, (delta^2 - delta)/4] of discriminant delta.
BinaryForm norm_form(const Int& delta);

/// All solutions of n_delta(x, y) = +-1 with |u| = |y| <= bound, sorted by
/// (u, t). The trivial units (x, y) = (+-1, 0) are listed unless
/// include_trivial is false. delta must not be a square.
std::vector<NormSolution> solve_norm_pm1(const Int& delta, const Int& bound,
                                         bool include_trivial = true);

/// The proper automorph of q attached to a norm-one solution:
///   ((x + y(delta-b)/2, -c*y), (a*y, x + y(delta+b)/2)),  determinant 1.
/// q must be primitive of non-square discriminant equal to the solution's.
IntMat2 automorph_from_solution(const BinaryForm& q, const NormSolution& s);

/// True when act(q, m) == q; m must have determinant +-1.
bool is_automorph(const BinaryForm& q, const IntMat2& m);

/// True when q has an automorph of determinant -1, i.e. the square of its
/// proper class is neutral.
bool has_improper_automorph(const ClassElement& f);

/// Unit composition in the quadratic order, ((t1+u1*sqrt(d))/2)*((t2+u2*sqrt(d))/2):
/// t3 = (t1*t2 + delta*u1*u2)/2, u3 = (t1*u2 + t2*u1)/2; values multiply.
NormSolution compose_units(const Int& delta, const NormSolution& s1, const NormSolution& s2);

} // namespace quadforge

#endif

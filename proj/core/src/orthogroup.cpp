#include "quadforge/orthogroup.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace quadforge {

BinaryForm norm_form(const Int& delta)
{
    Int m4 = mod_floor(delta, 4);
    if (m4 != 0 && m4 != 1)
        throw std::domain_error("norm_form: delta must be 0 or 1 mod 4");
    return {1, delta, (delta * delta - delta) / 4};
}

namespace {

    NormSolution solution_from_tu(const Int& delta, const Int& t, const Int& u, int value)
    {
        // t = 2x + delta*u always has matching parity here.
        return {(t - delta * u) / 2, u, value, t, u};
    }

} // namespace

std::vector<NormSolution> solve_norm_pm1(const Int& delta, const Int& bound,
                                         bool include_trivial)
{
    if (bound < 1)
        throw std::domain_error("solve_norm_pm1: bound must be >= 1");
    if (test_square(delta).is_square)
        throw std::domain_error("solve_norm_pm1: delta must not be a square");

    std::vector<NormSolution> out;
    for (Int u = -bound; u <= bound; ++u) {
        for (int value : {+1, -1}) {
            Int rhs = delta * u * u + 4 * value;
            auto sq = test_square(rhs);
            if (!sq.is_square)
                continue;
            if (sq.root == 0) {
                out.push_back(solution_from_tu(delta, 0, u, value));
            } else {
                out.push_back(solution_from_tu(delta, sq.root, u, value));
                out.push_back(solution_from_tu(delta, -sq.root, u, value));
            }
        }
    }
    if (!include_trivial)
        std::erase_if(out, [](const NormSolution& s) { return s.u == 0; });
    std::sort(out.begin(), out.end(), [](const NormSolution& a, const NormSolution& b) {
        return std::tie(a.u, a.t) < std::tie(b.u, b.t);
    });
    return out;
}

IntMat2 automorph_from_solution(const BinaryForm& q, const NormSolution& s)
{
    if (s.value != 1)
        throw std::domain_error("automorph_from_solution: solution must have norm +1");
    Int delta = discriminant(q);
    if (test_square(delta).is_square)
        throw std::domain_error("automorph_from_solution: discriminant must not be a square");
    if (!content(q).primitive)
        throw std::domain_error("automorph_from_solution: form must be primitive");
    if (evaluate(norm_form(delta), s.x, s.y) != s.value ||
        s.t != 2 * s.x + delta * s.y || s.u != s.y)
        throw std::domain_error("automorph_from_solution: solution does not match the discriminant");

    IntMat2 m{s.x + s.y * (delta - q.b) / 2, -q.c * s.y,
              q.a * s.y, s.x + s.y * (delta + q.b) / 2};
    return m;
}

bool is_automorph(const BinaryForm& q, const IntMat2& m)
{
    Int d = m.det();
    if (d != 1 && d != -1)
        throw std::domain_error("is_automorph: matrix must have determinant +-1");
    return act(q, m) == q;
}

bool has_improper_automorph(const ClassElement& f)
{
    return compose(f, f) == identity(f.delta());
}

NormSolution compose_units(const Int& delta, const NormSolution& s1, const NormSolution& s2)
{
    Int t = (s1.t * s2.t + delta * s1.u * s2.u) / 2;
    Int u = (s1.t * s2.u + s2.t * s1.u) / 2;
    return solution_from_tu(delta, t, u, s1.value * s2.value);
}

} // namespace quadforge

#include "quadforge/classgroup.hpp"
#include "quadforge/errors.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace quadforge {

ClassElement::ClassElement(BinaryForm reduced_form)
    : form_(std::move(reduced_form)), delta_(discriminant(form_))
{
    if (!content(form_).primitive)
        throw std::domain_error("ClassElement: form must be primitive");
    if (!is_reduced(form_))
        throw std::domain_error("ClassElement: form must be reduced");
}

std::ostream& operator<<(std::ostream& os, const ClassElement& f)
{
    return os << f.form();
}

ClassElement class_of(const BinaryForm& q)
{
    return ClassElement(reduce(q).form);
}

ClassElement identity(const Int& delta)
{
    if (delta >= 0)
        throw std::domain_error("identity: delta must be negative");
    Int m4 = mod_floor(delta, 4);
    if (m4 != 0 && m4 != 1)
        throw std::domain_error("identity: delta must be 0 or 1 mod 4");
    Int b = mod_floor(delta, 2);
    BinaryForm principal{1, b, (b - delta) / 4};
    return class_of(principal);
}

ClassElement inverse(const ClassElement& f)
{
    const BinaryForm& q = f.form();
    return class_of({q.a, -q.b, q.c});
}

namespace {

    // Primitive (x, y) with gcd(q(x,y), n) = 1, built from the coprime parts
    // of n with respect to c and a*x. Falls back to a bounded search should
    // the closed form ever miss (|delta| candidate pairs, then capacity_error).
    std::pair<Int, Int> coprime_value_vector(const BinaryForm& q, const Int& n)
    {
        Int x = coprime_part(n, q.c);
        Int y = coprime_part(n, q.a * x);
        if (boost::multiprecision::gcd(x, y) == 1 &&
            boost::multiprecision::gcd(evaluate(q, x, y), n) == 1)
            return {x, y};

        Int budget = boost::multiprecision::abs(discriminant(q));
        Int tried = 0;
        for (Int sum = 1; tried <= budget; ++sum) {
            for (Int ax = sum; ax >= 0; --ax) {
                Int ay = sum - ax;
                for (int sx : {+1, -1}) {
                    if (ax == 0 && sx < 0)
                        continue;
                    for (int sy : {+1, -1}) {
                        if (ay == 0 && sy < 0)
                            continue;
                        ++tried;
                        Int cx = sx * ax, cy = sy * ay;
                        if (boost::multiprecision::gcd(cx, cy) != 1)
                            continue;
                        if (boost::multiprecision::gcd(evaluate(q, cx, cy), n) == 1)
                            return {cx, cy};
                    }
                }
            }
        }
        throw capacity_error("compose: no coprime representation found within |delta| tries");
    }

    // SL2 matrix with prescribed coprime first column.
    IntMat2 complete_column(const Int& x, const Int& y)
    {
        auto g = ext_gcd(x, y);
        // x*g.x + y*g.y = 1, so ((x, -g.y), (y, g.x)) has determinant 1.
        return {x, -g.y, y, g.x};
    }

} // namespace

ClassElement compose(const ClassElement& f, const ClassElement& g)
{
    if (f.delta() != g.delta())
        throw std::domain_error("compose: discriminant mismatch");
    const Int delta = f.delta();

    // Move f to a representative whose leading coefficient is coprime with
    // the partner's leading coefficient.
    const BinaryForm& qg = g.form();
    auto [x, y] = coprime_value_vector(f.form(), qg.a);
    BinaryForm qf = act(f.form(), complete_column(x, y));

    // Common middle coefficient: beta = b_f mod 2a_f and beta = b_g mod 2a_g,
    // reachable because a_f, a_g are coprime and b_f, b_g share parity.
    auto e = ext_gcd(qf.a, qg.a);
    Int half_diff = (qg.b - qf.b) / 2;
    Int t = mod_floor(e.x * half_diff, qg.a); // e.x inverts a_f mod a_g
    Int beta = qf.b + 2 * qf.a * t;

    Int aa = qf.a * qg.a;
    BinaryForm composite{aa, beta, (beta * beta - delta) / (4 * aa)};
    return class_of(composite);
}

ClassElement pow(const ClassElement& f, const Int& n)
{
    if (n < 0)
        throw std::domain_error("pow: exponent must be >= 0");
    ClassElement acc = identity(f.delta());
    ClassElement base = f;
    Int e = n;
    while (e > 0) {
        if ((e & 1) != 0)
            acc = compose(acc, base);
        base = compose(base, base);
        e >>= 1;
    }
    return acc;
}

Int order_of(const ClassElement& f)
{
    ClassElement e = identity(f.delta());
    ClassElement cur = f;
    Int n = 1;
    while (!(cur == e)) {
        cur = compose(cur, f);
        ++n;
    }
    return n;
}

Int class_number_enum(const Int& delta)
{
    return Int(enumerate_reduced(delta).size());
}

Int class_number_formula(const Int& delta)
{
    if (delta >= -4)
        throw std::domain_error("class_number_formula: delta must be < -4");
    if (!is_fundamental(delta))
        throw std::domain_error("class_number_formula: delta must be fundamental");
    // The character sum has conductor |delta| only when delta is fundamental
    // in the strict sense; delta = 4m with squarefree m = 1 mod 4 (e.g. -12,
    // -28) slips through the squarefree test but breaks the formula.
    if (mod_floor(delta, 4) == 0 && mod_floor(delta / 4, 4) == 1)
        throw std::domain_error(
            "class_number_formula: delta/4 = 1 mod 4, character sum has smaller conductor");
    Int sum = 0;
    for (Int n = 1; n < -delta; ++n)
        sum += jacobi(delta, n) * n;
    if (sum % delta != 0)
        throw std::logic_error("class_number_formula: sum not divisible by delta");
    return sum / delta;
}

Int count_ambiguous(const Int& delta)
{
    Int count = 0;
    ClassElement e = identity(delta);
    for (const BinaryForm& q : enumerate_reduced(delta)) {
        ClassElement f(q);
        if (compose(f, f) == e)
            ++count;
    }
    return count;
}

Int classical_class_count(const Int& delta)
{
    Int h_proper = 2 * class_number_enum(delta);
    Int g_proper = 2 * count_ambiguous(delta);
    return (g_proper + h_proper) / 2;
}

GenusReport genus_numbers(const Int& delta)
{
    if (delta <= 0)
        throw std::domain_error("genus_numbers: delta must be positive");
    Int m4 = mod_floor(delta, 4);
    if (m4 != 0 && m4 != 1)
        throw std::domain_error("genus_numbers: delta must be 0 or 1 mod 4");
    if (test_square(delta).is_square)
        throw std::domain_error("genus_numbers: delta must not be a square");

    auto factors = factor_trial(delta);
    int m = 0;
    bool has_three_mod_four_divisor = false;
    for (const auto& pp : factors) {
        if (pp.prime == 2)
            continue;
        ++m;
        if (mod_floor(pp.prime, 4) == 3)
            has_three_mod_four_divisor = true;
    }

    bool odd = m4 == 1;
    bool quarter_is_one_mod_four = m4 == 0 && mod_floor(delta / 4, 4) == 1;

    Int g_plus;
    if (odd || quarter_is_one_mod_four)
        g_plus = Int(1) << (m - 1);
    else if (mod_floor(delta, 32) == 0)
        g_plus = Int(1) << (m + 1);
    else
        g_plus = Int(1) << m;

    // delta = 8*Pi with Pi equal to one or a product of primes p = 1 mod 4.
    bool eight_pi = false;
    if (delta % 8 == 0) {
        Int pi = delta / 8;
        eight_pi = pi % 2 != 0;
        if (eight_pi)
            for (const auto& pp : factor_trial(pi))
                if (mod_floor(pp.prime, 4) != 1)
                    eight_pi = false;
    }

    Int g_geom;
    if (has_three_mod_four_divisor && (odd || quarter_is_one_mod_four))
        g_geom = Int(1) << (m - 2);
    else if (eight_pi || mod_floor(delta, 32) == 0)
        g_geom = Int(1) << m;
    else
        g_geom = Int(1) << (m - 1);

    if (g_plus != g_geom && g_plus != 2 * g_geom)
        throw std::logic_error("genus_numbers: case formulas disagree, g+ not in {g, 2g}");
    return {g_plus, g_geom, m};
}

} // namespace quadforge

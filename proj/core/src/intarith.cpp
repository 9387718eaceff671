#include "quadforge/intarith.hpp"
#include "quadforge/errors.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include <boost/multiprecision/integer.hpp>

namespace quadforge {

ExtGcd ext_gcd(const Int& a, const Int& b)
{
    if (a == 0 && b == 0)
        return {0, 0, 0};
    // Iterative extended Euclid; invariants r0 = a*x0 + b*y0, r1 = a*x1 + b*y1.
    Int r0 = a, r1 = b;
    Int x0 = 1, x1 = 0;
    Int y0 = 0, y1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1; // truncated division keeps the invariants exact
        r0 -= q * r1;
        x0 -= q * x1;
        y0 -= q * y1;
        std::swap(r0, r1);
        std::swap(x0, x1);
        std::swap(y0, y1);
    }
    if (r0 < 0) {
        r0 = -r0;
        x0 = -x0;
        y0 = -y0;
    }
    return {r0, x0, y0};
}

Int mod_floor(const Int& a, const Int& m)
{
    if (m <= 0)
        throw std::domain_error("mod_floor: modulus must be positive");
    Int r = a % m;
    if (r < 0)
        r += m;
    return r;
}

Int div_floor(const Int& a, const Int& b)
{
    if (b == 0)
        throw std::domain_error("div_floor: division by zero");
    Int q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0)))
        --q;
    return q;
}

Int coprime_part(Int n, const Int& d)
{
    if (n <= 0)
        throw std::domain_error("coprime_part: n must be positive");
    Int g = boost::multiprecision::gcd(n, d);
    while (g > 1) {
        n /= g;
        g = boost::multiprecision::gcd(n, d);
    }
    return n;
}

namespace {

    int jacobi_odd_prime(const Int& delta, const Int& p)
    {
        Int d = mod_floor(delta, p);
        if (d == 0)
            return 0;
        // Euler criterion: delta^((p-1)/2) is 1 for residues, p-1 otherwise.
        Int e = boost::multiprecision::powm(d, (p - 1) / 2, p);
        return e == 1 ? 1 : -1;
    }

    int jacobi_two(const Int& delta)
    {
        Int m4 = mod_floor(delta, 4);
        if (m4 == 0)
            return 0;
        Int m8 = mod_floor(delta, 8);
        if (m8 == 1)
            return 1;
        if (m8 == 5)
            return -1;
        throw std::domain_error("jacobi: (delta/2) needs delta = 0 or 1 mod 4");
    }

} // namespace

int jacobi(const Int& delta, const Int& n)
{
    if (n < 1)
        throw std::domain_error("jacobi: n must be >= 1");
    int result = 1;
    for (const auto& [prime, exponent] : factor_trial(n)) {
        int base = prime == 2 ? jacobi_two(delta) : jacobi_odd_prime(delta, prime);
        if (base == 0)
            return 0;
        if (base == -1 && exponent % 2 == 1)
            result = -result;
    }
    return result;
}

Int crt_pair(const Int& a, const Int& p, const Int& b, const Int& q)
{
    if (p < 1 || q < 1)
        throw std::domain_error("crt_pair: moduli must be >= 1");
    auto g = ext_gcd(p, q);
    if (g.gcd != 1)
        throw std::domain_error("crt_pair: moduli are not coprime");
    // c := a + p*((b-a)*p^-1 mod q), reduced into [0, p*q).
    Int pinv = mod_floor(g.x, q);
    Int t = mod_floor((b - a) * pinv, q);
    return mod_floor(a + p * t, p * q);
}

SquareTest test_square(const Int& n)
{
    if (n < 0)
        return {false, 0};
    Int r = boost::multiprecision::sqrt(n);
    if (r * r == n)
        return {true, r};
    return {false, 0};
}

std::vector<PrimePower> factor_trial(const Int& n)
{
    if (n == 0)
        throw std::domain_error("factor_trial: zero has no factorization");
    static const Int divisor_cap = 10'000'000;

    std::vector<PrimePower> out;
    Int m = boost::multiprecision::abs(n);
    auto strip = [&](const Int& p) {
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e > 0)
            out.push_back({p, e});
    };
    strip(2);
    for (Int d = 3; d * d <= m && d <= divisor_cap; d += 2)
        strip(d);
    if (m > 1) {
        if (m > divisor_cap * divisor_cap)
            throw capacity_error("factor_trial: cofactor exceeds the 10^7 trial bound");
        out.push_back({m, 1}); // no divisor <= sqrt(m), hence prime
    }
    return out;
}

bool is_fundamental(const Int& delta)
{
    Int m4 = mod_floor(delta, 4);
    if (m4 != 0 && m4 != 1)
        throw std::domain_error("is_fundamental: delta must be 0 or 1 mod 4");
    if (test_square(delta).is_square)
        throw std::domain_error("is_fundamental: delta must not be a square");
    auto squarefree = [](const Int& v) {
        auto factors = factor_trial(v);
        return std::all_of(factors.begin(), factors.end(),
                           [](const PrimePower& f) { return f.exponent == 1; });
    };
    if (m4 == 1)
        return squarefree(delta);
    return squarefree(delta / 4);
}

IntMatN::IntMatN(std::size_t n, std::vector<Int> entries) : n_(n), e_(std::move(entries))
{
    if (e_.size() != n_ * n_)
        throw std::invalid_argument("IntMatN: entry count does not match dimension");
}

IntMatN IntMatN::identity(std::size_t n)
{
    IntMatN m(n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

IntMatN IntMatN::operator*(const IntMatN& o) const
{
    if (n_ != o.n_)
        throw std::domain_error("IntMatN: dimension mismatch");
    IntMatN r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k)
            for (std::size_t j = 0; j < n_; ++j)
                r.at(i, j) += at(i, k) * o.at(k, j);
    return r;
}

namespace {

    IntMatN delete_row_col(const IntMatN& a, std::size_t row, std::size_t col)
    {
        std::size_t n = a.size();
        IntMatN m(n - 1);
        for (std::size_t i = 0, mi = 0; i < n; ++i) {
            if (i == row)
                continue;
            for (std::size_t j = 0, mj = 0; j < n; ++j) {
                if (j == col)
                    continue;
                m.at(mi, mj) = a.at(i, j);
                ++mj;
            }
            ++mi;
        }
        return m;
    }

    Int laplace_det(const IntMatN& a)
    {
        std::size_t n = a.size();
        if (n == 0)
            return 1;
        if (n == 1)
            return a.at(0, 0);
        Int det = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (a.at(i, 0) == 0)
                continue;
            Int cof = laplace_det(delete_row_col(a, i, 0));
            if (i % 2 == 0)
                det += a.at(i, 0) * cof;
            else
                det -= a.at(i, 0) * cof;
        }
        return det;
    }

} // namespace

DetAdj int_det_adj(const IntMatN& a)
{
    std::size_t n = a.size();
    if (n == 0)
        throw std::domain_error("int_det_adj: empty matrix");
    IntMatN adj(n);
    // adj(A) = ((-1)^(i+j) |A_ij|)_{j,i} -- the transposed cofactor matrix.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Int cof = laplace_det(delete_row_col(a, i, j));
            adj.at(j, i) = ((i + j) % 2 == 0) ? cof : -cof;
        }
    return {laplace_det(a), adj};
}

} // namespace quadforge

#ifndef QUADFORGE_INTARITH_HPP
#define QUADFORGE_INTARITH_HPP

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace quadforge {

using Int = boost::multiprecision::cpp_int;

/// Bezout data: gcd = a*x + b*y with gcd >= 0, and ext_gcd(0,0) = (0,0,0).
struct ExtGcd {
    Int gcd, x, y;
};

ExtGcd ext_gcd(const Int& a, const Int& b);

/// Remainder in [0, m) for m > 0, independent of the sign of a.
Int mod_floor(const Int& a, const Int& m);

/// Floor division (rounds toward minus infinity), b != 0.
Int div_floor(const Int& a, const Int& b);

/// Largest divisor of n > 0 that is coprime with d.
Int coprime_part(Int n, const Int& d);

/// Jacobi symbol (delta/n), multiplicative in n >= 1, built from the base cases
///   (delta/2)  = 0 / +1 / -1  for delta = 0 mod 4 / 1 mod 8 / 5 mod 8
///   (delta/p)  = Euler criterion delta^((p-1)/2) mod p   (odd prime p)
/// Requires delta = 0 or 1 mod 4 whenever n is even.
int jacobi(const Int& delta, const Int& n);

/// Unique c in [0, p*q) with c = a mod p and c = b mod q; gcd(p,q) must be 1.
Int crt_pair(const Int& a, const Int& p, const Int& b, const Int& q);

struct SquareTest {
    bool is_square;
    Int root; // non-negative root when is_square, otherwise 0
};

SquareTest test_square(const Int& n);

struct PrimePower {
    Int prime;
    int exponent;
};

/// Factorization of |n| by trial division, primes strictly increasing.
/// Divisors are tried up to 10^7; a remaining cofactor above 10^14 raises
/// capacity_error (it could be composite), below that bound it is provably prime.
std::vector<PrimePower> factor_trial(const Int& n);

/// Fundamental discriminant test in the sense "delta or delta/4 is squarefree".
/// delta must be a non-square = 0 or 1 mod 4.
bool is_fundamental(const Int& delta);

/// Square integer matrix with exact entries, row-major.
class IntMatN {
  public:
    explicit IntMatN(std::size_t n) : n_(n), e_(n * n) {}
    IntMatN(std::size_t n, std::vector<Int> entries);

    static IntMatN identity(std::size_t n);

    std::size_t size() const { return n_; }
    Int& at(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

    bool operator==(const IntMatN& o) const = default;

    IntMatN operator*(const IntMatN& o) const;

  private:
    std::size_t n_;
    std::vector<Int> e_;
};

struct DetAdj {
    Int det;
    IntMatN adj;
};

/// Determinant by Laplace expansion together with the adjugate, so that
/// adj * A = A * adj = det * E holds exactly. Desk scale (n <= 6 or so).
DetAdj int_det_adj(const IntMatN& a);

} // namespace quadforge

#endif

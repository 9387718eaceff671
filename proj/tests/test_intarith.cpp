#include "doctest.h"
#include "testutil.hpp"

#include "quadforge/errors.hpp"
#include "quadforge/intarith.hpp"

using namespace quadforge;

TEST_CASE("ext_gcd basics")
{
    auto z = ext_gcd(0, 0);
    CHECK(z.gcd == 0);
    CHECK(z.x == 0);
    CHECK(z.y == 0);

    auto a = ext_gcd(12, 0);
    CHECK(a.gcd == 12);
    CHECK(a.x == 1);
    CHECK(a.y == 0);

    auto b = ext_gcd(3, 7);
    CHECK(b.gcd == 1);
    CHECK(3 * b.x + 7 * b.y == 1);
}

TEST_CASE("ext_gcd Bezout identity on random pairs")
{
    std::mt19937_64 g(11);
    for (int i = 0; i < 200; ++i) {
        Int a(qftest::rand_long(g, -999999, 999999));
        Int b(qftest::rand_long(g, -999999, 999999));
        auto r = ext_gcd(a, b);
        CHECK(r.gcd >= 0);
        CHECK(a * r.x + b * r.y == r.gcd);
        if (r.gcd != 0) {
            CHECK(a % r.gcd == 0);
            CHECK(b % r.gcd == 0);
        }
    }
}

TEST_CASE("jacobi base cases and examples")
{
    CHECK(jacobi(17, 2) == 1);   // 17 = 1 mod 8
    CHECK(jacobi(-7, 1) == 1);   // empty product
    CHECK(jacobi(-7, 3) == -1);  // -7 = 2 mod 3, non-residue
    CHECK(jacobi(5, 5) == 0);
    CHECK(jacobi(-20, 2) == 0);  // delta = 0 mod 4
    CHECK(jacobi(-7, 2) == 1);   // -7 = 1 mod 8
    CHECK(jacobi(13, 2) == -1);  // 13 = 5 mod 8
    CHECK_THROWS_AS(jacobi(-7, 0), std::domain_error);
    CHECK_THROWS_AS(jacobi(3, 2), std::domain_error); // (3/2) undefined
}

TEST_CASE("jacobi is multiplicative in n")
{
    std::mt19937_64 g(12);
    int done = 0;
    while (done < 100) {
        long d = qftest::rand_long(g, -400, 400);
        if (((d % 4) + 4) % 4 > 1)
            continue;
        Int delta(d);
        Int m(qftest::rand_long(g, 1, 300));
        Int n(qftest::rand_long(g, 1, 300));
        CHECK(jacobi(delta, m * n) == jacobi(delta, m) * jacobi(delta, n));
        ++done;
    }
}

TEST_CASE("crt_pair examples")
{
    CHECK(crt_pair(2, 3, 3, 5) == 8);
    CHECK(crt_pair(4, 3, 4, 5) == 4);
    CHECK(crt_pair(0, 2, 1, 3) == 4);
    CHECK_THROWS_AS(crt_pair(1, 4, 1, 6), std::domain_error);
}

TEST_CASE("crt_pair random verification by direct reduction")
{
    std::mt19937_64 g(13);
    int done = 0;
    while (done < 100) {
        Int p(qftest::rand_long(g, 1, 500));
        Int q(qftest::rand_long(g, 1, 500));
        if (ext_gcd(p, q).gcd != 1)
            continue;
        Int a(qftest::rand_long(g, -1000, 1000));
        Int b(qftest::rand_long(g, -1000, 1000));
        Int c = crt_pair(a, p, b, q);
        CHECK(c >= 0);
        CHECK(c < p * q);
        CHECK(mod_floor(c - a, p) == 0);
        CHECK(mod_floor(c - b, q) == 0);
        ++done;
    }
}

TEST_CASE("test_square")
{
    CHECK(test_square(0).is_square);
    CHECK(test_square(0).root == 0);
    CHECK_FALSE(test_square(12).is_square);
    CHECK(test_square(49).is_square);
    CHECK(test_square(49).root == 7);
    CHECK_FALSE(test_square(-4).is_square);
}

TEST_CASE("factor_trial examples and round-trip")
{
    auto f12 = factor_trial(12);
    REQUIRE(f12.size() == 2);
    CHECK(f12[0].prime == 2);
    CHECK(f12[0].exponent == 2);
    CHECK(f12[1].prime == 3);
    CHECK(f12[1].exponent == 1);

    CHECK(factor_trial(1).empty());

    auto fneg = factor_trial(-167);
    REQUIRE(fneg.size() == 1);
    CHECK(fneg[0].prime == 167);
    CHECK(fneg[0].exponent == 1);

    CHECK_THROWS_AS(factor_trial(0), std::domain_error);

    std::mt19937_64 g(14);
    for (int i = 0; i < 50; ++i) {
        Int n(qftest::rand_long(g, 1, 5'000'000));
        if (qftest::rand_long(g, 0, 1))
            n = -n;
        Int prod = 1;
        Int last = 1;
        for (const auto& [p, e] : factor_trial(n)) {
            CHECK(p > last); // strictly increasing primes
            last = p;
            for (int k = 0; k < e; ++k)
                prod *= p;
        }
        CHECK(prod == boost::multiprecision::abs(n));
    }
}

TEST_CASE("is_fundamental follows the delta-or-quarter-squarefree rule")
{
    CHECK(is_fundamental(-7));
    CHECK(is_fundamental(-167));
    CHECK(is_fundamental(12)); // 12/4 = 3 squarefree
    CHECK(is_fundamental(-20));
    CHECK(is_fundamental(20));  // admitted by the paper's rule, 20/4 = 5
    CHECK(is_fundamental(-12)); // likewise, -12/4 = -3
    CHECK_FALSE(is_fundamental(-48)); // -48/4 = -12 has a square factor
    CHECK_FALSE(is_fundamental(-27)); // = 1 mod 4 but not squarefree
    CHECK_THROWS_AS(is_fundamental(-6), std::domain_error);
    CHECK_THROWS_AS(is_fundamental(-9), std::domain_error); // 3 mod 4
}

TEST_CASE("int_det_adj examples")
{
    auto e2 = IntMatN::identity(2);
    auto [d1, a1] = int_det_adj(e2);
    CHECK(d1 == 1);
    CHECK(a1 == e2);

    IntMatN shear(2, {1, 1, 0, 1});
    auto [d2, a2] = int_det_adj(shear);
    CHECK(d2 == 1);
    CHECK(a2 == IntMatN(2, {1, -1, 0, 1}));

    IntMatN swap(2, {0, 1, 1, 0});
    auto [d3, a3] = int_det_adj(swap);
    CHECK(d3 == -1);
    CHECK(a3 == IntMatN(2, {0, -1, -1, 0}));
}

TEST_CASE("adjugate identity adj(A)*A = det(A)*E on random matrices")
{
    std::mt19937_64 g(15);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = static_cast<std::size_t>(qftest::rand_long(g, 2, 4));
        IntMatN a(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                a.at(i, j) = qftest::rand_long(g, -9, 9);
        auto [det, adj] = int_det_adj(a);
        IntMatN left = adj * a;
        IntMatN right = a * adj;
        IntMatN expect(n);
        for (std::size_t i = 0; i < n; ++i)
            expect.at(i, i) = det;
        CHECK(left == expect);
        CHECK(right == expect);
    }
}

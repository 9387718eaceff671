#include "doctest.h"
#include "testutil.hpp"

#include <cmath>

#include "quadforge/errors.hpp"
#include "quadforge/numlin.hpp"

using namespace quadforge;
using qftest::lu_inverse;
using qftest::lu_solve;
using qftest::random_matrix;
using qftest::random_symmetric;
using qftest::random_vector;

namespace {

const DenseMatrix lsf_matrix(3, 2, {-4, 1, 0, 1, 3, 1});
const DenseVector lsf_rhs{1, 2, 3};

double penrose_residual(const DenseMatrix& a, const DenseMatrix& p)
{
    double r = (a * p * a - a).max_abs();
    r = std::max(r, (p * a * p - p).max_abs());
    DenseMatrix ap = a * p;
    DenseMatrix pa = p * a;
    r = std::max(r, (ap - ap.transposed()).max_abs());
    r = std::max(r, (pa - pa.transposed()).max_abs());
    return r;
}

} // namespace

TEST_CASE("householder_qr on the worked 3x2 example")
{
    auto [q, r] = householder_qr(lsf_matrix);
    CHECK(r(0, 0) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(r(0, 1) == doctest::Approx(-0.2).epsilon(1e-12));
    CHECK(std::abs(r(1, 1)) == doctest::Approx(std::sqrt(74.0) / 5.0).epsilon(1e-12));
    CHECK(r(2, 0) == 0.0);
    CHECK(r(2, 1) == 0.0);
    CHECK((q * r - lsf_matrix).max_abs() < 1e-12);
    CHECK((q.transposed() * q - DenseMatrix::identity(3)).norm_inf() < 1e-10 * 3);
}

TEST_CASE("householder_qr of the identity and a column-gap matrix")
{
    auto [q, r] = householder_qr(DenseMatrix::identity(4));
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::abs(r(i, i)) == doctest::Approx(1.0));
    DenseMatrix a(3, 2, {-4, 1, 0, 0, 3, 2});
    auto [q2, r2] = householder_qr(a);
    CHECK((q2.transposed() * q2 - DenseMatrix::identity(3)).norm_inf() < 1e-10 * 3);
    CHECK(r2(1, 0) == 0.0);
    CHECK(r2(2, 0) == 0.0);
    CHECK(r2(2, 1) == 0.0);
    CHECK((q2 * r2 - a).max_abs() < 1e-12);
    CHECK_THROWS_AS(householder_qr(DenseMatrix(2, 3)), std::domain_error);
}

TEST_CASE("QR factorization properties on random shapes")
{
    std::mt19937_64 g(51);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = static_cast<std::size_t>(qftest::rand_long(g, 1, 10));
        std::size_t m = n + static_cast<std::size_t>(qftest::rand_long(g, 0, 10));
        DenseMatrix a = random_matrix(g, m, n);
        auto [q, r] = householder_qr(a);
        CHECK((q * r - a).norm_inf() <= 1e-9 * std::max(a.norm_inf(), 1.0));
        CHECK((q.transposed() * q - DenseMatrix::identity(m)).norm_inf() <=
              1e-10 * static_cast<double>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n && j < i; ++j)
                CHECK(r(i, j) == 0.0);
    }
}

TEST_CASE("householder reflections are involutions")
{
    std::mt19937_64 g(52);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = static_cast<std::size_t>(qftest::rand_long(g, 2, 8));
        DenseVector y = random_vector(g, n);
        double norm2 = y.norm2() * y.norm2();
        DenseMatrix s = DenseMatrix::identity(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                s(i, j) -= 2.0 * y[i] * y[j] / norm2;
        CHECK((s * s - DenseMatrix::identity(n)).norm_inf() < 1e-10);
    }
}

TEST_CASE("least_squares solves the fitting example exactly")
{
    auto [x, residual] = least_squares(lsf_matrix, lsf_rhs);
    CHECK(x[0] == doctest::Approx(21.0 / 74.0).epsilon(1e-12));
    CHECK(x[1] == doctest::Approx(155.0 / 74.0).epsilon(1e-12));
    CHECK(residual == doctest::Approx(1.0 / std::sqrt(74.0)).epsilon(1e-12));
}

TEST_CASE("least_squares trivial cases")
{
    DenseMatrix a(2, 2, {2, 1, 1, 3});
    DenseVector b{5, 10};
    auto r = least_squares(a, b);
    CHECK(r.residual == doctest::Approx(0.0));
    DenseVector oracle = lu_solve(a, b);
    CHECK((r.x - oracle).norm_inf() < 1e-12);

    // b inside the column space.
    DenseMatrix tall(4, 2, {1, 2, 0, 1, 3, -1, 2, 2});
    DenseVector ones{1, 1};
    DenseVector inb = tall * ones;
    auto fit = least_squares(tall, inb);
    CHECK(fit.residual <= 1e-10);
    CHECK(fit.x[0] == doctest::Approx(1.0));
    CHECK(fit.x[1] == doctest::Approx(1.0));

    DenseMatrix singular(3, 2, {1, 1, 1, 1, 1, 1});
    CHECK_THROWS_AS(least_squares(singular, lsf_rhs), rank_error);
    try {
        least_squares(singular, lsf_rhs);
    } catch (const rank_error& e) {
        CHECK(e.detected_rank() == 1);
    }
}

TEST_CASE("least_squares optimality and the normal-equation oracle")
{
    std::mt19937_64 g(53);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = static_cast<std::size_t>(qftest::rand_long(g, 1, 5));
        std::size_t m = n + static_cast<std::size_t>(qftest::rand_long(g, 1, 6));
        DenseMatrix a = random_matrix(g, m, n, -3.0, 3.0);
        DenseVector b = random_vector(g, m);
        LeastSquaresResult r = [&] {
            for (;;) {
                try {
                    return least_squares(a, b);
                } catch (const rank_error&) {
                    a = random_matrix(g, m, n, -3.0, 3.0);
                }
            }
        }();

        // Normal equations A^t A x = A^t b by dense LU.
        DenseMatrix ata = a.transposed() * a;
        DenseVector atb = a.transposed() * b;
        DenseVector oracle = lu_solve(ata, atb);
        CHECK((r.x - oracle).norm_inf() < 1e-8);

        double best = (a * r.x - b).norm2();
        CHECK(std::abs(best - r.residual) < 1e-9);
        for (int k = 0; k < 20; ++k) {
            DenseVector delta = random_vector(g, n, -0.5, 0.5);
            CHECK((a * (r.x + delta) - b).norm2() >= r.residual - 1e-10);
        }
    }
}

TEST_CASE("sor_solve: two classical sweeps match the hand iteration")
{
    DenseMatrix a(2, 2, {25, -1, -1, 3});
    DenseVector b{5, 6};
    DenseVector x0{0, 2};
    auto r = sor_solve(a, b, 1.0, x0, 3e-3, 2);
    CHECK(r.iterations == 2);
    CHECK(r.x[0] == doctest::Approx(0.2837333).epsilon(1e-6));
    CHECK(r.x[1] == doctest::Approx(2.0945778).epsilon(1e-6));
}

TEST_CASE("sor_solve converges for omega in (0,2) and stalls at 2.5")
{
    DenseMatrix a(2, 2, {25, -1, -1, 3});
    DenseVector b{5, 6};
    DenseVector x0{0, 2};
    DenseVector exact = lu_solve(a, b);

    for (double omega : {0.5, 1.0, 1.5}) {
        auto r = sor_solve(a, b, omega, x0, 1e-12, 100000);
        CHECK(r.omega_in_range);
        CHECK((r.x - exact).norm_inf() < 1e-10);
    }

    CHECK_THROWS_AS(sor_solve(a, b, 2.5, x0, 1e-8, 10000), convergence_error);
    try {
        sor_solve(a, b, 2.5, x0, 1e-8, 10000);
    } catch (const convergence_error& e) {
        CHECK(e.iterations() == 10000);
        CHECK(e.last_iterate().size() == 2);
    }

    // Fixed point as the start converges without any sweep.
    DenseVector xb = a * exact;
    auto instant = sor_solve(a, xb, 1.0, exact, 1e-9, 10);
    CHECK(instant.iterations <= 1);
}

TEST_CASE("sor_solve reaches tight tolerance on random SPD systems")
{
    std::mt19937_64 g(54);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = static_cast<std::size_t>(qftest::rand_long(g, 2, 6));
        DenseMatrix a = random_matrix(g, n, n, -2.0, 2.0);
        DenseMatrix spd = a.transposed() * a;
        for (std::size_t i = 0; i < n; ++i)
            spd(i, i) += 0.5;
        DenseVector b = random_vector(g, n);
        for (double omega : {0.5, 1.0, 1.5}) {
            auto r = sor_solve(spd, b, omega, DenseVector(n), 1e-10, 200000);
            CHECK((spd * r.x - b).norm2() <= 1e-10);
        }
    }
}

TEST_CASE("is_positive_definite_minors")
{
    CHECK(is_positive_definite_minors(DenseMatrix(2, 2, {2, -1, -1, 2})));
    CHECK_FALSE(is_positive_definite_minors(
        DenseMatrix(3, 3, {0, 0, -1, 0, 0, 0, -1, 0, 0})));
    CHECK_FALSE(is_positive_definite_minors(DenseMatrix(2, 2, {1, 0, 0, -1})));
    CHECK(is_positive_definite_minors(DenseMatrix(2, 2, {6, 2.5, 2.5, 8})));
    CHECK_THROWS_AS(is_positive_definite_minors(DenseMatrix(2, 2, {1, 2, 0, 1})),
                    std::domain_error);
}

TEST_CASE("signature on fixed matrices")
{
    CHECK(signature(DenseMatrix(2, 2, {1, 0, 0, -1})) == Signature{1, 1, 0});
    CHECK(signature(DenseMatrix(2, 2, {6, 2.5, 2.5, 8})) == Signature{2, 0, 0});
    CHECK(signature(DenseMatrix(2, 2, {1, 1, 1, -2})) == Signature{1, 1, 0});
    CHECK(signature(DenseMatrix(2, 2, {0, 1, 1, 0})) == Signature{1, 1, 0});
    CHECK(signature(DenseMatrix(3, 3)) == Signature{0, 0, 3});
    CHECK(signature(DenseMatrix(3, 3, {1, 0, 0, 0, 0, 0, 0, 0, 0})) ==
          Signature{1, 0, 2});
}

TEST_CASE("signature is a congruence invariant")
{
    std::mt19937_64 g(55);
    int trials = 0;
    while (trials < 100) {
        std::size_t n = static_cast<std::size_t>(qftest::rand_long(g, 2, 6));
        DenseMatrix p = random_symmetric(g, n);
        DenseMatrix s = random_matrix(g, n, n);
        double det_proxy = 1.0; // keep clearly invertible transforms
        for (std::size_t i = 0; i < n; ++i)
            det_proxy *= s(i, i);
        DenseMatrix congruent = s.transposed() * p * s;
        Signature sp = signature(p);
        // Skip near-singular transforms; invariance needs invertible S.
        DenseVector piv = symmetric_eigen(s.transposed() * s);
        if (piv[0] < 1e-4)
            continue;
        CHECK(signature(congruent) == sp);
        ++trials;
    }
}

TEST_CASE("symmetric_eigen on closed-form spectra")
{
    DenseVector e1 = symmetric_eigen(DenseMatrix::identity(2));
    CHECK(e1[0] == doctest::Approx(1.0));
    CHECK(e1[1] == doctest::Approx(1.0));

    DenseVector e2 = symmetric_eigen(DenseMatrix(2, 2, {1, 0.1, 0.1, 1}));
    CHECK(e2[0] == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(e2[1] == doctest::Approx(1.1).epsilon(1e-12));

    DenseVector e3 = symmetric_eigen(DenseMatrix(2, 2, {2, 3, 3, 3}));
    CHECK(e3[0] == doctest::Approx((5.0 - std::sqrt(37.0)) / 2.0).epsilon(1e-12));
    CHECK(e3[1] == doctest::Approx((5.0 + std::sqrt(37.0)) / 2.0).epsilon(1e-12));

    CHECK_THROWS_AS(symmetric_eigen(DenseMatrix(2, 2, {1, 2, 0, 1})), std::domain_error);
}

TEST_CASE("symmetric_eigen trace and determinant consistency")
{
    std::mt19937_64 g(56);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = static_cast<std::size_t>(qftest::rand_long(g, 2, 8));
        DenseMatrix s = random_symmetric(g, n);
        DenseVector eig = symmetric_eigen(s);
        double trace = 0.0, prod = 1.0, sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            trace += s(i, i);
            prod *= eig[i];
            sum += eig[i];
        }
        CHECK(std::abs(sum - trace) <=
              1e-9 * static_cast<double>(n) * std::max(s.norm_inf(), 1.0));
        // Determinant via LU on a copy.
        DenseMatrix m = s;
        double det = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = k;
            for (std::size_t i = k + 1; i < n; ++i)
                if (std::abs(m(i, k)) > std::abs(m(p, k)))
                    p = i;
            if (p != k) {
                for (std::size_t j = 0; j < n; ++j)
                    std::swap(m(k, j), m(p, j));
                det = -det;
            }
            det *= m(k, k);
            if (m(k, k) == 0.0)
                break;
            for (std::size_t i = k + 1; i < n; ++i) {
                double f = m(i, k) / m(k, k);
                for (std::size_t j = k; j < n; ++j)
                    m(i, j) -= f * m(k, j);
            }
        }
        CHECK(std::abs(prod - det) <= 1e-8 * std::max({std::abs(det), std::abs(prod), 1.0}));
    }
}

TEST_CASE("spectral_norm")
{
    CHECK(spectral_norm(DenseMatrix(2, 2, {1, 1, 0, 1})) ==
          doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-12));
    CHECK(spectral_norm(DenseMatrix::identity(5)) == doctest::Approx(1.0));
    CHECK(spectral_norm(DenseMatrix(2, 2, {-3, 0, 0, 2})) == doctest::Approx(3.0));
    CHECK(spectral_norm(DenseMatrix(2, 3)) == 0.0);
}

TEST_CASE("spectral_norm is orthogonally invariant")
{
    std::mt19937_64 g(57);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = static_cast<std::size_t>(qftest::rand_long(g, 2, 6));
        DenseMatrix a = random_matrix(g, n, n);
        // Random orthogonal Q from the QR of a random matrix.
        DenseMatrix q = householder_qr(random_matrix(g, n, n)).q;
        CHECK(spectral_norm(q * a) == doctest::Approx(spectral_norm(a)).epsilon(1e-9));
    }
}

TEST_CASE("pseudoinverse on fixed inputs")
{
    DenseMatrix inv2(2, 2, {2, 0, 0, 4});
    DenseMatrix p = pseudoinverse(inv2);
    CHECK(p(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p(1, 1) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(std::abs(p(0, 1)) < 1e-14);

    DenseMatrix z = pseudoinverse(DenseMatrix(2, 3));
    CHECK(z.rows() == 3);
    CHECK(z.cols() == 2);
    CHECK(z.max_abs() == 0.0);

    DenseMatrix ones(2, 1, {1, 1});
    DenseMatrix po = pseudoinverse(ones);
    CHECK(po(0, 0) == doctest::Approx(0.5));
    CHECK(po(0, 1) == doctest::Approx(0.5));
}

TEST_CASE("pseudoinverse satisfies the Penrose conditions")
{
    std::mt19937_64 g(58);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t m = static_cast<std::size_t>(qftest::rand_long(g, 1, 8));
        std::size_t n = static_cast<std::size_t>(qftest::rand_long(g, 1, 6));
        DenseMatrix a = random_matrix(g, m, n);
        if (trial % 3 == 0 && m > 1 && n > 1) {
            // Force rank deficiency: copy a column and a row combination.
            for (std::size_t i = 0; i < m; ++i)
                a(i, n - 1) = 2.0 * a(i, 0);
        }
        DenseMatrix p = pseudoinverse(a);
        double s = spectral_norm(a);
        CHECK(penrose_residual(a, p) <= 1e-9 * (1.0 + s) * (1.0 + s));
    }
}

TEST_CASE("pseudoinverse equals the dense inverse on invertible input")
{
    std::mt19937_64 g(59);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = static_cast<std::size_t>(qftest::rand_long(g, 1, 6));
        DenseMatrix a = random_matrix(g, n, n);
        DenseVector sv = symmetric_eigen(a.transposed() * a);
        if (sv[0] < 1e-6)
            continue;
        CHECK((pseudoinverse(a) - lu_inverse(a)).max_abs() < 1e-9);
        CHECK((pseudoinverse(pseudoinverse(a)) - a).max_abs() < 1e-8);
    }
}

TEST_CASE("spectrum_distance")
{
    DenseMatrix e2 = DenseMatrix::identity(2);
    DenseMatrix pert(2, 2, {1, 0.25, 0.25, 1});
    auto [lhs, rhs] = spectrum_distance(e2, pert);
    CHECK(lhs == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(rhs == doctest::Approx(0.25).epsilon(1e-10));

    auto same = spectrum_distance(pert, pert);
    CHECK(same.lhs == doctest::Approx(0.0));
    CHECK(same.rhs == doctest::Approx(0.0));

    CHECK_THROWS_AS(spectrum_distance(e2, DenseMatrix::identity(3)), std::domain_error);

    std::mt19937_64 g(60);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = static_cast<std::size_t>(qftest::rand_long(g, 2, 8));
        auto r = spectrum_distance(random_symmetric(g, n), random_symmetric(g, n));
        CHECK(r.lhs <= r.rhs + 1e-9);
    }
}

TEST_CASE("classify_critical_point")
{
    CHECK(classify_critical_point(DenseMatrix(2, 2, {-4, 0, 0, -4})) ==
          CriticalPoint::isolated_max);
    CHECK(classify_critical_point(DenseMatrix(2, 2, {2, 0, 0, -2})) ==
          CriticalPoint::saddle);
    CHECK(classify_critical_point(DenseMatrix(2, 2, {1, 0, 0, 0})) ==
          CriticalPoint::indeterminate);
    CHECK(classify_critical_point(DenseMatrix(2, 2, {3, 1, 1, 3})) ==
          CriticalPoint::isolated_min);
}

TEST_CASE("fixed_point_affine on the worked affine iteration")
{
    // phi(x, y) = y * (-3/25, -41/50) + (1/5, 11/10).
    DenseMatrix a(2, 2, {0, -3.0 / 25.0, 0, -41.0 / 50.0});
    DenseVector b{0.2, 1.1};
    auto r = fixed_point_affine(a, b, DenseVector{0, 0}, 1e-12, 100000);
    CHECK(r.x[0] == doctest::Approx(58.0 / 455.0).epsilon(1e-9));
    CHECK(r.x[1] == doctest::Approx(55.0 / 91.0).epsilon(1e-9));
    CHECK(r.apriori >= 0.0);
    CHECK(r.aposteriori >= 0.0);
    // Both estimates dominate the true error at termination.
    double err = std::max(std::abs(r.x[0] - 58.0 / 455.0), std::abs(r.x[1] - 55.0 / 91.0));
    CHECK(r.apriori + 1e-15 >= err);
    CHECK(r.aposteriori + 1e-15 >= err);
}

TEST_CASE("fixed_point_affine edge cases")
{
    DenseMatrix zero(2, 2);
    DenseVector b{3, -1};
    auto r = fixed_point_affine(zero, b, DenseVector{0, 0}, 1e-12, 10);
    CHECK(r.iterations <= 1);
    CHECK(r.x[0] == doctest::Approx(3.0));
    CHECK(r.x[1] == doctest::Approx(-1.0));

    DenseMatrix half(2, 2, {0.5, 0, 0, 0.5});
    DenseVector fixed{2, 2}; // x = 0.5 x + 1 has fixed point 2
    DenseVector ones{1, 1};
    auto instant = fixed_point_affine(half, ones, fixed, 1e-9, 10);
    CHECK(instant.iterations == 0);

    DenseMatrix big(2, 2, {2, 0, 0, 2});
    CHECK_THROWS_AS(fixed_point_affine(big, b, DenseVector{0, 0}, 1e-9, 10),
                    contraction_error);
    DenseMatrix slow(1, 1, {0.999999});
    CHECK_THROWS_AS(fixed_point_affine(slow, DenseVector{1}, DenseVector{0}, 1e-12, 5),
                    convergence_error);
}

TEST_CASE("matrix and vector guards")
{
    CHECK_THROWS_AS(DenseMatrix(2, 2, {1, 2, 3}), std::invalid_argument);
    std::vector<double> bad{1.0, std::nan(""), 0.0, 1.0};
    CHECK_THROWS_AS(DenseMatrix(2, 2, bad), std::invalid_argument);
    CHECK_THROWS_AS(DenseVector({1.0, std::numeric_limits<double>::infinity()}),
                    std::invalid_argument);
}

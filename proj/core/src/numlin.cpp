#include "quadforge/numlin.hpp"
#include "quadforge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace quadforge {

namespace {

    void require_finite(const std::vector<double>& e, const char* who)
    {
        for (double v : e)
            if (!std::isfinite(v))
                throw std::invalid_argument(std::string(who) + ": entries must be finite");
    }

} // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), e_(rows * cols, 0.0)
{
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries))
{
    if (e_.size() != rows_ * cols_)
        throw std::invalid_argument("DenseMatrix: entry count does not match shape");
    require_finite(e_, "DenseMatrix");
}

DenseMatrix DenseMatrix::identity(std::size_t n)
{
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::transposed() const
{
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& o) const
{
    if (cols_ != o.rows_)
        throw std::domain_error("DenseMatrix: product dimension mismatch");
    DenseMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            double v = (*this)(i, k);
            if (v == 0.0)
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r(i, j) += v * o(k, j);
        }
    return r;
}

DenseMatrix DenseMatrix::operator+(const DenseMatrix& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::domain_error("DenseMatrix: sum dimension mismatch");
    DenseMatrix r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i)
        r.e_[i] += o.e_[i];
    return r;
}

DenseMatrix DenseMatrix::operator-(const DenseMatrix& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::domain_error("DenseMatrix: difference dimension mismatch");
    DenseMatrix r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i)
        r.e_[i] -= o.e_[i];
    return r;
}

double DenseMatrix::norm_inf() const
{
    double best = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < cols_; ++j)
            row += std::abs((*this)(i, j));
        best = std::max(best, row);
    }
    return best;
}

double DenseMatrix::norm_frobenius() const
{
    double s = 0.0;
    for (double v : e_)
        s += v * v;
    return std::sqrt(s);
}

double DenseMatrix::max_abs() const
{
    double best = 0.0;
    for (double v : e_)
        best = std::max(best, std::abs(v));
    return best;
}

bool DenseMatrix::is_symmetric(double tol) const
{
    if (rows_ != cols_)
        return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (std::abs((*this)(i, j) - (*this)(j, i)) > tol)
                return false;
    return true;
}

std::ostream& operator<<(std::ostream& os, const DenseMatrix& m)
{
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? " " : "") << m(i, j);
        os << '\n';
    }
    return os;
}

DenseVector::DenseVector(std::initializer_list<double> init) : e_(init)
{
    require_finite(e_, "DenseVector");
}

DenseVector::DenseVector(std::vector<double> entries) : e_(std::move(entries))
{
    require_finite(e_, "DenseVector");
}

double DenseVector::norm2() const
{
    double s = 0.0;
    for (double v : e_)
        s += v * v;
    return std::sqrt(s);
}

double DenseVector::norm_inf() const
{
    double best = 0.0;
    for (double v : e_)
        best = std::max(best, std::abs(v));
    return best;
}

std::ostream& operator<<(std::ostream& os, const DenseVector& v)
{
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? " " : "") << v[i];
    return os;
}

DenseVector operator*(const DenseMatrix& a, const DenseVector& x)
{
    if (a.cols() != x.size())
        throw std::domain_error("matrix-vector dimension mismatch");
    DenseVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j)
            s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

DenseVector operator-(const DenseVector& a, const DenseVector& b)
{
    if (a.size() != b.size())
        throw std::domain_error("vector difference dimension mismatch");
    DenseVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

DenseVector operator+(const DenseVector& a, const DenseVector& b)
{
    if (a.size() != b.size())
        throw std::domain_error("vector sum dimension mismatch");
    DenseVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

namespace {

    // Applies the reflection S_y = E - 2 y y^t / ||y||^2 restricted to rows
    // [from, m) of r (left multiply) and columns [from, m) of q (right multiply).
    void apply_reflection(DenseMatrix& r, DenseMatrix& q, const std::vector<double>& y,
                          std::size_t from)
    {
        double ynorm2 = 0.0;
        for (double v : y)
            ynorm2 += v * v;
        if (ynorm2 == 0.0)
            return;
        std::size_t m = r.rows();
        for (std::size_t j = 0; j < r.cols(); ++j) {
            double dot = 0.0;
            for (std::size_t i = from; i < m; ++i)
                dot += y[i - from] * r(i, j);
            double f = 2.0 * dot / ynorm2;
            for (std::size_t i = from; i < m; ++i)
                r(i, j) -= f * y[i - from];
        }
        for (std::size_t i = 0; i < q.rows(); ++i) {
            double dot = 0.0;
            for (std::size_t j = from; j < m; ++j)
                dot += q(i, j) * y[j - from];
            double f = 2.0 * dot / ynorm2;
            for (std::size_t j = from; j < m; ++j)
                q(i, j) -= f * y[j - from];
        }
    }

    // One Householder step on column k: reflect r[k:, k] onto -sign(x1)||x|| e1.
    // Returns false when the sub-column is zero and the step is skipped.
    bool householder_step(DenseMatrix& r, DenseMatrix& q, std::size_t k)
    {
        std::size_t m = r.rows();
        std::vector<double> x(m - k);
        double norm2 = 0.0;
        for (std::size_t i = k; i < m; ++i) {
            x[i - k] = r(i, k);
            norm2 += x[i - k] * x[i - k];
        }
        if (norm2 == 0.0)
            return false;
        double norm = std::sqrt(norm2);
        double s = x[0] >= 0.0 ? norm : -norm;
        std::vector<double> y = x;
        y[0] += s; // y = x + sign(x1) ||x|| e1, no cancellation in y[0]
        apply_reflection(r, q, y, k);
        r(k, k) = -s;
        for (std::size_t i = k + 1; i < m; ++i)
            r(i, k) = 0.0;
        return true;
    }

    double rank_threshold(const DenseMatrix& a)
    {
        return 1e-10 * a.norm_inf() * static_cast<double>(std::max(a.rows(), a.cols()));
    }

} // namespace

QRResult householder_qr(const DenseMatrix& a)
{
    if (a.rows() < a.cols())
        throw std::domain_error("householder_qr: need rows >= cols");
    DenseMatrix r = a;
    DenseMatrix q = DenseMatrix::identity(a.rows());
    for (std::size_t k = 0; k < a.cols(); ++k)
        householder_step(r, q, k);
    return {q, r};
}

LeastSquaresResult least_squares(const DenseMatrix& a, const DenseVector& b)
{
    std::size_t m = a.rows(), n = a.cols();
    if (m < n)
        throw std::domain_error("least_squares: need rows >= cols");
    if (b.size() != m)
        throw std::domain_error("least_squares: right side has wrong length");

    auto [q, r] = householder_qr(a);
    double tol = rank_threshold(a);
    int rank = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(r(i, i)) > tol)
            ++rank;
    if (rank < static_cast<int>(n))
        throw rank_error("least_squares: rank-deficient matrix", rank);

    DenseVector c = q.transposed() * b;
    DenseVector x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = c[ii];
        for (std::size_t j = ii + 1; j < n; ++j)
            s -= r(ii, j) * x[j];
        x[ii] = s / r(ii, ii);
    }
    double tail = 0.0;
    for (std::size_t i = n; i < m; ++i)
        tail += c[i] * c[i];
    return {x, std::sqrt(tail)};
}

SorResult sor_solve(const DenseMatrix& a, const DenseVector& b, double omega,
                    const DenseVector& x0, double tol, long maxiter)
{
    std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n || x0.size() != n)
        throw std::domain_error("sor_solve: dimension mismatch");
    for (std::size_t i = 0; i < n; ++i)
        if (a(i, i) == 0.0)
            throw std::domain_error("sor_solve: zero diagonal entry");
    bool omega_ok = omega > 0.0 && omega < 2.0;

    DenseVector x = x0;
    for (long it = 0; it <= maxiter; ++it) {
        if ((a * x - b).norm2() <= tol)
            return {x, it, omega_ok};
        if (it == maxiter)
            break;
        for (std::size_t i = 0; i < n; ++i) {
            double s = b[i];
            for (std::size_t j = 0; j < n; ++j)
                if (j != i)
                    s -= a(i, j) * x[j];
            x[i] = (1.0 - omega) * x[i] + omega * s / a(i, i);
        }
    }
    throw convergence_error(omega_ok ? "sor_solve: tolerance not reached within maxiter"
                                     : "sor_solve: no convergence (omega outside (0,2))",
                            x.entries(), maxiter);
}

bool is_positive_definite_minors(const DenseMatrix& s)
{
    std::size_t n = s.rows();
    if (s.cols() != n)
        throw std::domain_error("is_positive_definite_minors: matrix must be square");
    if (!s.is_symmetric(1e-12 * s.norm_inf()))
        throw std::domain_error("is_positive_definite_minors: matrix must be symmetric");

    // |A_k| is the product of the first k pivots of unpivoted elimination,
    // so all leading minors are positive iff every pivot is.
    DenseMatrix m = s;
    for (std::size_t k = 0; k < n; ++k) {
        double pivot = m(k, k);
        if (pivot <= 0.0)
            return false;
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = m(i, k) / pivot;
            for (std::size_t j = k; j < n; ++j)
                m(i, j) -= f * m(k, j);
        }
    }
    return true;
}

std::ostream& operator<<(std::ostream& os, const Signature& s)
{
    return os << '(' << s.positives << ',' << s.negatives << ',' << s.zeros << ')';
}

Signature signature(const DenseMatrix& s)
{
    std::size_t n = s.rows();
    if (s.cols() != n)
        throw std::domain_error("signature: matrix must be square");
    if (!s.is_symmetric(1e-12 * s.norm_inf()))
        throw std::domain_error("signature: matrix must be symmetric");

    DenseMatrix m = s;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            m(i, j) = m(j, i) = 0.5 * (m(i, j) + m(j, i));

    double thresh = 1e-10 * s.norm_inf();
    Signature sig{0, 0, 0};
    if (thresh == 0.0)
        return {0, 0, static_cast<int>(n)};

    auto swap_sym = [&](std::size_t p, std::size_t k) {
        if (p == k)
            return;
        for (std::size_t j = 0; j < n; ++j)
            std::swap(m(p, j), m(k, j));
        for (std::size_t i = 0; i < n; ++i)
            std::swap(m(i, p), m(i, k));
    };

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(m(i, i)) > std::abs(m(p, p)))
                p = i;
        if (std::abs(m(p, p)) <= thresh) {
            // No usable diagonal pivot; fold the largest off-diagonal entry
            // onto the diagonal by the congruence x_i <- x_i + x_j.
            std::size_t bi = k, bj = k;
            double best = 0.0;
            for (std::size_t i = k; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (std::abs(m(i, j)) > best) {
                        best = std::abs(m(i, j));
                        bi = i;
                        bj = j;
                    }
            if (best <= thresh) {
                sig.zeros += static_cast<int>(n - k);
                return sig;
            }
            double sgn = m(bi, bj) > 0.0 ? 1.0 : -1.0;
            for (std::size_t j = 0; j < n; ++j)
                m(bi, j) += sgn * m(bj, j);
            for (std::size_t i = 0; i < n; ++i)
                m(i, bi) += sgn * m(i, bj);
            p = bi;
        }
        swap_sym(p, k);
        double d = m(k, k);
        d > 0.0 ? ++sig.positives : ++sig.negatives;
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = m(i, k) / d;
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) -= f * m(k, j);
        }
        for (std::size_t i = k + 1; i < n; ++i)
            m(i, k) = m(k, i) = 0.0;
    }
    return sig;
}

DenseVector symmetric_eigen(const DenseMatrix& s)
{
    std::size_t n = s.rows();
    if (s.cols() != n)
        throw std::domain_error("symmetric_eigen: matrix must be square");
    if (!s.is_symmetric(1e-12 * s.norm_inf()))
        throw std::domain_error("symmetric_eigen: matrix must be symmetric");

    DenseMatrix m = s;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            m(i, j) = m(j, i) = 0.5 * (m(i, j) + m(j, i));

    double thresh = 1e-12 * s.norm_frobenius();
    auto off_norm = [&]() {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                sum += 2.0 * m(i, j) * m(i, j);
        return std::sqrt(sum);
    };

    for (int sweep = 0; sweep < 100 && off_norm() > thresh; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = m(p, q);
                if (apq == 0.0)
                    continue;
                double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double sn = t * c;
                double app = m(p, p), aqq = m(q, q);
                m(p, p) = c * c * app - 2.0 * sn * c * apq + sn * sn * aqq;
                m(q, q) = sn * sn * app + 2.0 * sn * c * apq + c * c * aqq;
                m(p, q) = m(q, p) = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q)
                        continue;
                    double aip = m(i, p), aiq = m(i, q);
                    m(i, p) = m(p, i) = c * aip - sn * aiq;
                    m(i, q) = m(q, i) = sn * aip + c * aiq;
                }
            }
    }

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i)
        eig[i] = m(i, i);
    std::sort(eig.begin(), eig.end());
    return DenseVector(std::move(eig));
}

double spectral_norm(const DenseMatrix& a)
{
    if (a.max_abs() == 0.0)
        return 0.0;
    DenseVector eig = symmetric_eigen(a.transposed() * a);
    double lambda = std::max(std::abs(eig[0]), std::abs(eig[eig.size() - 1]));
    return std::sqrt(std::max(lambda, 0.0));
}

namespace {

    struct PivotedQR {
        DenseMatrix q;          // m x m
        DenseMatrix r;          // m x n
        std::vector<std::size_t> perm; // A(:, perm[j]) is column j of A*P
        int rank;
    };

    PivotedQR householder_qr_pivoted(const DenseMatrix& a)
    {
        std::size_t m = a.rows(), n = a.cols();
        DenseMatrix r = a;
        DenseMatrix q = DenseMatrix::identity(m);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});

        std::size_t steps = std::min(m, n);
        for (std::size_t k = 0; k < steps; ++k) {
            std::size_t best = k;
            double best_norm = -1.0;
            for (std::size_t j = k; j < n; ++j) {
                double s = 0.0;
                for (std::size_t i = k; i < m; ++i)
                    s += r(i, j) * r(i, j);
                if (s > best_norm) {
                    best_norm = s;
                    best = j;
                }
            }
            if (best != k) {
                for (std::size_t i = 0; i < m; ++i)
                    std::swap(r(i, k), r(i, best));
                std::swap(perm[k], perm[best]);
            }
            householder_step(r, q, k);
        }

        double tol = rank_threshold(a);
        int rank = 0;
        for (std::size_t i = 0; i < steps; ++i)
            if (std::abs(r(i, i)) > tol)
                ++rank;
        return {std::move(q), std::move(r), std::move(perm), rank};
    }

} // namespace

DenseMatrix pseudoinverse(const DenseMatrix& a)
{
    std::size_t m = a.rows(), n = a.cols();
    if (a.max_abs() == 0.0)
        return DenseMatrix(n, m);
    if (m < n)
        return pseudoinverse(a.transposed()).transposed();

    // A*P = Q1 * S with S = R[0:rank, :] of full row rank; a second QR of S^t
    // gives S = R2^t Q2^t, hence pinv(A) = P Q2 R2^-t Q1^t.
    PivotedQR f = householder_qr_pivoted(a);
    std::size_t r = static_cast<std::size_t>(f.rank);

    DenseMatrix st(n, r); // S^t
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j)
            st(j, i) = f.r(i, j);
    auto [q2full, r2full] = householder_qr(st);

    // W solves R2^t W = Q1^t (forward substitution), W is r x m.
    DenseMatrix w(r, m);
    for (std::size_t col = 0; col < m; ++col)
        for (std::size_t i = 0; i < r; ++i) {
            double s = f.q(col, i); // (Q1^t)(i, col)
            for (std::size_t j = 0; j < i; ++j)
                s -= r2full(j, i) * w(j, col);
            w(i, col) = s / r2full(i, i);
        }

    DenseMatrix q2(n, r);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < r; ++j)
            q2(i, j) = q2full(i, j);
    DenseMatrix pinv_permuted = q2 * w; // n x m, rows in pivot order

    DenseMatrix out(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            out(f.perm[i], j) = pinv_permuted(i, j);
    return out;
}

SpectrumDistance spectrum_distance(const DenseMatrix& a, const DenseMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::domain_error("spectrum_distance: dimension mismatch");
    DenseVector la = symmetric_eigen(a);
    DenseVector lb = symmetric_eigen(b);
    // Weyl bound: the 2-norm of diag(lambda(A)) - diag(lambda(B)) is the
    // largest gap between the sorted spectra.
    double lhs = (la - lb).norm_inf();
    double rhs = spectral_norm(a - b);
    return {lhs, rhs};
}

CriticalPoint classify_critical_point(const DenseMatrix& h)
{
    DenseVector eig = symmetric_eigen(h);
    double thresh = 1e-8 * h.norm_inf();
    double lo = eig[0], hi = eig[eig.size() - 1];
    if (lo > thresh)
        return CriticalPoint::isolated_min;
    if (hi < -thresh)
        return CriticalPoint::isolated_max;
    if (lo < -thresh && hi > thresh)
        return CriticalPoint::saddle;
    return CriticalPoint::indeterminate;
}

FixedPointResult fixed_point_affine(const DenseMatrix& a, const DenseVector& b,
                                    const DenseVector& x0, double tol, long maxiter)
{
    std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n || x0.size() != n)
        throw std::domain_error("fixed_point_affine: dimension mismatch");

    double kinf = a.norm_inf();
    double k2 = spectral_norm(a);
    bool use_inf = kinf <= k2;
    double kappa = use_inf ? kinf : k2;
    if (kappa >= 1.0)
        throw contraction_error("fixed_point_affine: ||A|| >= 1, not a contraction");

    auto vnorm = [&](const DenseVector& v) { return use_inf ? v.norm_inf() : v.norm2(); };

    DenseVector x = x0;
    double first_step = 0.0;
    for (long it = 0; it <= maxiter; ++it) {
        DenseVector fx = a * x + b;
        double step = vnorm(fx - x);
        if (it == 0)
            first_step = step;
        if (step <= tol) {
            double apriori = std::pow(kappa, static_cast<double>(it)) / (1.0 - kappa) * first_step;
            double aposteriori = kappa / (1.0 - kappa) * step;
            return {fx, it, apriori, aposteriori};
        }
        x = fx;
    }
    throw convergence_error("fixed_point_affine: tolerance not reached within maxiter",
                            x.entries(), maxiter);
}

} // namespace quadforge

#ifndef QUADFORGE_NUMLIN_HPP
#define QUADFORGE_NUMLIN_HPP

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace quadforge {

/// Dense row-major matrix of binary64 entries; construction rejects NaN/Inf.
class DenseMatrix {
  public:
    DenseMatrix(std::size_t rows, std::size_t cols);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    DenseMatrix transposed() const;
    DenseMatrix operator*(const DenseMatrix& o) const;
    DenseMatrix operator+(const DenseMatrix& o) const;
    DenseMatrix operator-(const DenseMatrix& o) const;

    /// Max absolute row sum.
    double norm_inf() const;
    double norm_frobenius() const;
    /// Largest |entry|.
    double max_abs() const;

    bool is_symmetric(double tol) const;

  private:
    std::size_t rows_, cols_;
    std::vector<double> e_;
};

std::ostream& operator<<(std::ostream& os, const DenseMatrix& m);

class DenseVector {
  public:
    explicit DenseVector(std::size_t n) : e_(n) {}
    DenseVector(std::initializer_list<double> init);
    explicit DenseVector(std::vector<double> entries);

    std::size_t size() const { return e_.size(); }
    double& operator[](std::size_t i) { return e_[i]; }
    double operator[](std::size_t i) const { return e_[i]; }
    const std::vector<double>& entries() const { return e_; }

    double norm2() const;
    double norm_inf() const;

  private:
    std::vector<double> e_;
};

std::ostream& operator<<(std::ostream& os, const DenseVector& v);

DenseVector operator*(const DenseMatrix& a, const DenseVector& x);
DenseVector operator-(const DenseVector& a, const DenseVector& b);
DenseVector operator+(const DenseVector& a, const DenseVector& b);

struct QRResult {
    DenseMatrix q; // m x m orthogonal
    DenseMatrix r; // m x n, exact zeros below the diagonal
};

/// Householder QR, rows >= cols. Reflections send each pivot column to
/// -sign(x1)*||x|| e1 so the leading coordinate never cancels; zero
/// sub-columns skip their iteration.
QRResult householder_qr(const DenseMatrix& a);

struct LeastSquaresResult {
    DenseVector x;
    double residual; // ||Ax - b||_2, read off the tail of Q^t b
};

/// Least squares by Householder QR; rank deficiency raises rank_error.
LeastSquaresResult least_squares(const DenseMatrix& a, const DenseVector& b);

struct SorResult {
    DenseVector x;
    long iterations;
    bool omega_in_range; // false outside (0,2): convergence not guaranteed
};

/// SOR coordinate sweeps on a symmetric positive definite system until
/// ||Ax-b||_2 <= tol; throws convergence_error past maxiter.
SorResult sor_solve(const DenseMatrix& a, const DenseVector& b, double omega,
                    const DenseVector& x0, double tol, long maxiter);

/// Jacobi's criterion: all leading principal minors positive, computed by
/// LU elimination without pivoting on the leading blocks.
bool is_positive_definite_minors(const DenseMatrix& s);

struct Signature {
    int positives, negatives, zeros;

    bool operator==(const Signature&) const = default;
};

std::ostream& operator<<(std::ostream& os, const Signature& s);

/// Real signature by symmetric congruence diagonalization with pivot
/// threshold 1e-10 * ||S||_inf; invariant under congruence.
Signature signature(const DenseMatrix& s);

/// Eigenvalues of a symmetric matrix, ascending, by the cyclic Jacobi
/// rotation method (off-diagonal threshold 1e-12 * ||S||_F).
DenseVector symmetric_eigen(const DenseMatrix& s);

/// Euclidean operator norm sqrt(lambda_max(A^t A)).
double spectral_norm(const DenseMatrix& a);

/// Moore-Penrose pseudoinverse via column-pivoted Householder QR and a second
/// QR of the leading trapezoid (complete orthogonal factorization, no SVD).
DenseMatrix pseudoinverse(const DenseMatrix& a);

struct SpectrumDistance {
    double lhs; // 2-norm of diag(lambda(A)) - diag(lambda(B)), sorted spectra
    double rhs; // ||A - B||_2
};

/// Both sides of the eigenvalue perturbation bound lhs <= rhs (Weyl); the
/// left side is the largest gap between the sorted spectra.
SpectrumDistance spectrum_distance(const DenseMatrix& a, const DenseMatrix& b);

enum class CriticalPoint { isolated_min, isolated_max, saddle, indeterminate };

/// Classification of a critical point by the Hessian spectrum; eigenvalues
/// within 1e-8 * ||H||_inf of zero without a sign change give indeterminate.
CriticalPoint classify_critical_point(const DenseMatrix& h);

struct FixedPointResult {
    DenseVector x;
    long iterations;
    double apriori;     // kappa^n/(1-kappa) * ||x1 - x0||
    double aposteriori; // kappa/(1-kappa) * ||x_n - x_{n-1}||
};

/// Banach iteration x <- A x + b with kappa = min(||A||_inf, ||A||_2) < 1;
/// stops once ||x - phi(x)|| <= tol and reports both error estimates.
FixedPointResult fixed_point_affine(const DenseMatrix& a, const DenseVector& b,
                                    const DenseVector& x0, double tol, long maxiter);

} // namespace quadforge

#endif

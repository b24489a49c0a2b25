#pragma once

// Dense complex matrix kernel: pseudoinverse, PSD calculus, Schur
// complements, parallel sums and orthogonal projectors.

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hkit {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Raised when an SVD or eigen decomposition does not converge.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a class membership precondition (e.g. Fgg) is violated.
class precondition_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct Tolerance {
    double rank_rel_tol = 1e-10;
    double psd_tol = 1e-9;
    double eq_rel_tol = 1e-8;

    /// Throws std::invalid_argument unless every threshold lies in (0,1).
    void validate() const;
};

/// Checks that every entry is finite; throws std::invalid_argument otherwise.
void require_finite(const Matrix& A, const char* what = "matrix");

/// Frobenius norm.
double norm(const Matrix& A);

/// ‖A−B‖_F / max(‖A‖_F, ‖B‖_F); zero when both norms fall below `zero_floor`.
double rel_diff(const Matrix& A, const Matrix& B, double zero_floor);

/// rel_diff(A,B) ≤ eq_rel_tol, with the eq_rel_tol floor for small operands.
bool approx_equal(const Matrix& A, const Matrix& B, const Tolerance& tol = {});

/// Moore-Penrose inverse via SVD with cutoff rank_rel_tol·σ_max.
Matrix pinv(const Matrix& A, const Tolerance& tol = {});

/// Number of singular values above rank_rel_tol·σ_max.
int rank_of(const Matrix& A, const Tolerance& tol = {});

/// Rank counted against an externally supplied cutoff (σ > cutoff).
int rank_with_cutoff(const Matrix& A, double cutoff);

/// Largest singular value (operator 2-norm).
double spectral_norm(const Matrix& A);

/// (A + A*)/2.
Matrix hermitian_part(const Matrix& A);

bool is_hermitian(const Matrix& A, const Tolerance& tol = {});

/// Smallest eigenvalue of the Hermitian part of A.
double min_eigenvalue(const Matrix& A);

/// Hermitian check plus λ_min ≥ −psd_tol·‖A‖_F.
bool is_psd(const Matrix& A, const Tolerance& tol = {});

/// Hermitian check plus λ_min > psd_tol·‖A‖_F (strictly positive).
bool is_pd(const Matrix& A, const Tolerance& tol = {});

/// A ⪯ B in the Löwner order. Throws std::invalid_argument if either input
/// is not Hermitian within eq_rel_tol.
bool loewner_leq(const Matrix& A, const Matrix& B, const Tolerance& tol = {});

/// Hermitian PSD square root; eigenvalues in (−psd_tol·‖A‖, 0) are clamped
/// to zero. Throws std::invalid_argument for inputs that are not PSD.
Matrix psd_sqrt(const Matrix& A, const Tolerance& tol = {});

/// pinv(psd_sqrt(A)), with the rank of A decided on A's own eigenvalues so the
/// square root does not inflate rounding noise above the cutoff.
Matrix psd_sqrt_pinv(const Matrix& A, const Tolerance& tol = {});

/// Y* H^† Y for Hermitian PSD H, by a rank-truncated pivoted Cholesky
/// factorization of H (pivots at most rank_rel_tol·max diag(H) end it).
/// Exact for columns of Y in ran(H); falls back to the explicit
/// pseudoinverse when H has a clearly negative pivot.
Matrix psd_quadratic_form(const Matrix& H, const Matrix& Y, const Tolerance& tol = {});

/// A ∥ B = A (A+B)^† B.
Matrix parallel_sum(const Matrix& A, const Matrix& B, const Tolerance& tol = {});

/// A A^†, the orthogonal projector onto ran(A).
Matrix ortho_projector(const Matrix& A, const Tolerance& tol = {});

/// D − C A^† B for M = [[A, B], [C, D]] with A of size p×r.
Matrix schur_complement(const Matrix& M, int p, int r, const Tolerance& tol = {});

Matrix kron(const Matrix& A, const Matrix& B);

/// Determinant via partial-pivot LU.
cplx det(const Matrix& A);

/// Identity of size n.
Matrix eye(int n);

/// Zero matrix of size r×c.
Matrix zeros(int r, int c);

/// Builds a matrix from a real diagonal.
Matrix diag(std::initializer_list<double> d);

}  // namespace hkit

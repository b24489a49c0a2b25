#include "hkit/matcore.hpp"

#include <algorithm>
#include <cmath>

namespace hkit {

void Tolerance::validate() const {
    auto ok = [](double v) { return v > 0.0 && v < 1.0; };
    if (!ok(rank_rel_tol) || !ok(psd_tol) || !ok(eq_rel_tol))
        throw std::invalid_argument("tolerances must lie in (0,1)");
}

void require_finite(const Matrix& A, const char* what) {
    if (A.size() == 0) throw std::invalid_argument(std::string(what) + " is empty");
    for (Eigen::Index i = 0; i < A.size(); ++i) {
        const cplx z = A.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument(std::string(what) + " has non-finite entries");
    }
}

double norm(const Matrix& A) { return A.size() == 0 ? 0.0 : A.norm(); }

double rel_diff(const Matrix& A, const Matrix& B, double zero_floor) {
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw std::invalid_argument("rel_diff: shape mismatch");
    const double scale = std::max(norm(A), norm(B));
    const double diff = norm(A - B);
    if (scale < zero_floor || scale == 0.0) return diff < zero_floor ? 0.0 : diff;
    return diff / scale;
}

bool approx_equal(const Matrix& A, const Matrix& B, const Tolerance& tol) {
    return rel_diff(A, B, tol.eq_rel_tol) <= tol.eq_rel_tol;
}

namespace {

Eigen::JacobiSVD<Matrix> svd_of(const Matrix& A) {
    Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) throw numerical_error("SVD did not converge");
    return svd;
}

Eigen::SelfAdjointEigenSolver<Matrix> eig_of(const Matrix& H) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(H);
    if (es.info() != Eigen::Success)
        throw numerical_error("Hermitian eigen decomposition did not converge");
    return es;
}

}  // namespace

Matrix pinv(const Matrix& A, const Tolerance& tol) {
    if (A.size() == 0) return Matrix(A.cols(), A.rows());
    require_finite(A, "pinv input");
    const auto svd = svd_of(A);
    const RealVector& sv = svd.singularValues();
    const double cutoff = tol.rank_rel_tol * (sv.size() ? sv(0) : 0.0);
    Matrix X = Matrix::Zero(A.cols(), A.rows());
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) <= cutoff || sv(i) == 0.0) break;
        X += svd.matrixV().col(i) * (1.0 / sv(i)) * svd.matrixU().col(i).adjoint();
    }
    return X;
}

int rank_with_cutoff(const Matrix& A, double cutoff) {
    if (A.size() == 0) return 0;
    const RealVector sv = A.jacobiSvd().singularValues();
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++r;
    return r;
}

int rank_of(const Matrix& A, const Tolerance& tol) {
    if (A.size() == 0) return 0;
    const double smax = spectral_norm(A);
    if (smax == 0.0) return 0;
    return rank_with_cutoff(A, tol.rank_rel_tol * smax);
}

double spectral_norm(const Matrix& A) {
    if (A.size() == 0) return 0.0;
    const RealVector sv = A.jacobiSvd().singularValues();
    return sv.size() ? sv(0) : 0.0;
}

Matrix hermitian_part(const Matrix& A) { return (A + A.adjoint()) * 0.5; }

bool is_hermitian(const Matrix& A, const Tolerance& tol) {
    if (A.rows() != A.cols()) return false;
    return rel_diff(A, A.adjoint(), tol.eq_rel_tol) <= tol.eq_rel_tol;
}

double min_eigenvalue(const Matrix& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("min_eigenvalue: matrix not square");
    return eig_of(hermitian_part(A)).eigenvalues()(0);
}

bool is_psd(const Matrix& A, const Tolerance& tol) {
    if (!is_hermitian(A, tol)) return false;
    const double n = norm(A);
    if (n < tol.eq_rel_tol) return true;
    return min_eigenvalue(A) >= -tol.psd_tol * n;
}

bool is_pd(const Matrix& A, const Tolerance& tol) {
    if (!is_hermitian(A, tol)) return false;
    const double n = norm(A);
    if (n == 0.0) return false;
    return min_eigenvalue(A) > tol.psd_tol * n;
}

bool loewner_leq(const Matrix& A, const Matrix& B, const Tolerance& tol) {
    if (!is_hermitian(A, tol) || !is_hermitian(B, tol))
        throw std::invalid_argument("loewner_leq: inputs must be Hermitian");
    const Matrix D = B - A;
    const double scale = std::max({norm(A), norm(B), norm(D)});
    if (scale < tol.eq_rel_tol) return true;
    return min_eigenvalue(D) >= -tol.psd_tol * scale;
}

Matrix psd_sqrt(const Matrix& A, const Tolerance& tol) {
    if (!is_psd(A, tol)) throw std::invalid_argument("psd_sqrt: matrix is not Hermitian PSD");
    const auto es = eig_of(hermitian_part(A));
    RealVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Matrix psd_sqrt_pinv(const Matrix& A, const Tolerance& tol) {
    if (!is_psd(A, tol)) throw std::invalid_argument("psd_sqrt_pinv: matrix is not Hermitian PSD");
    const auto es = eig_of(hermitian_part(A));
    const RealVector& ev = es.eigenvalues();
    const double cutoff = tol.rank_rel_tol * std::max(ev.maxCoeff(), 0.0);
    RealVector inv = RealVector::Zero(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > cutoff && ev(i) > 0.0) inv(i) = 1.0 / std::sqrt(ev(i));
    return es.eigenvectors() * inv.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Matrix psd_quadratic_form(const Matrix& H, const Matrix& Y, const Tolerance& tol) {
    if (H.rows() != H.cols() || H.rows() != Y.rows())
        throw std::invalid_argument("psd_quadratic_form: shape mismatch");
    const Eigen::Index n = H.rows();
    if (n == 0) return Matrix::Zero(Y.cols(), Y.cols());
    Matrix R = hermitian_part(H);
    Matrix W = Y;  // rows permuted and eliminated alongside R
    const double scale = R.diagonal().real().cwiseAbs().maxCoeff();
    const double cutoff = tol.rank_rel_tol * scale;
    Matrix out = Matrix::Zero(Y.cols(), Y.cols());
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index p = k;
        R.diagonal().real().tail(n - k).maxCoeff(&p);
        p += k;
        const double piv = R(p, p).real();
        if (piv <= cutoff) {
            if (R.diagonal().real().tail(n - k).minCoeff() < -tol.psd_tol * std::max(scale, 1e-300))
                return Y.adjoint() * pinv(H, tol) * Y;
            break;
        }
        R.row(k).swap(R.row(p));
        R.col(k).swap(R.col(p));
        W.row(k).swap(W.row(p));
        // Eliminate pivot k: with l = R(k+1:,k)/piv the trailing block and the
        // remaining rows of W are updated by the rank-one step.
        const Matrix l = R.col(k).tail(n - k - 1) / piv;
        const Matrix wk = W.row(k);
        out += wk.adjoint() * wk / piv;
        R.bottomRightCorner(n - k - 1, n - k - 1) -= l * R.row(k).tail(n - k - 1);
        W.bottomRows(n - k - 1) -= l * wk;
    }
    return out;
}

Matrix parallel_sum(const Matrix& A, const Matrix& B, const Tolerance& tol) {
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw std::invalid_argument("parallel_sum: shape mismatch");
    return A * pinv(A + B, tol) * B;
}

Matrix ortho_projector(const Matrix& A, const Tolerance& tol) { return A * pinv(A, tol); }

Matrix schur_complement(const Matrix& M, int p, int r, const Tolerance& tol) {
    if (p < 1 || r < 1 || p >= M.rows() || r >= M.cols())
        throw std::out_of_range("schur_complement: partition out of bounds");
    const Eigen::Index m = M.rows() - p, n = M.cols() - r;
    return M.bottomRightCorner(m, n) -
           M.bottomLeftCorner(m, r) * pinv(M.topLeftCorner(p, r), tol) * M.topRightCorner(p, n);
}

Matrix kron(const Matrix& A, const Matrix& B) {
    Matrix K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

cplx det(const Matrix& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("det: matrix not square");
    if (A.size() == 0) return 1.0;
    return A.partialPivLu().determinant();
}

Matrix eye(int n) { return Matrix::Identity(n, n); }

Matrix zeros(int r, int c) { return Matrix::Zero(r, c); }

Matrix diag(std::initializer_list<double> d) {
    Matrix D = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (double v : d) D(i, i) = v, ++i;
    return D;
}

}  // namespace hkit

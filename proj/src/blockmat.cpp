#include "hkit/blockmat.hpp"

#include <stdexcept>

namespace hkit {

BlockMatrix::BlockMatrix(int br, int bc, int p_, int q_)
    : block_rows(br), block_cols(bc), p(p_), q(q_), data(Matrix::Zero(br * p_, bc * q_)) {}

BlockMatrix::BlockMatrix(int br, int bc, int p_, int q_, Matrix m)
    : block_rows(br), block_cols(bc), p(p_), q(q_), data(std::move(m)) {
    if (data.rows() != br * p || data.cols() != bc * q)
        throw std::invalid_argument("block matrix data does not match its grid");
}

namespace {

void need(bool cond, const char* msg) {
    if (!cond) throw std::out_of_range(msg);
}

}  // namespace

BlockMatrix toeplitz_lower(const MatrixSequence& s, int m) {
    need(m >= 0 && m <= s.kappa(), "toeplitz_lower: order exceeds sequence length");
    BlockMatrix S(m + 1, m + 1, s.q(), s.q());
    for (int j = 0; j <= m; ++j)
        for (int k = 0; k <= j; ++k) S.block(j, k) = s[j - k];
    return S;
}

BlockMatrix toeplitz_upper(const MatrixSequence& s, int m) {
    need(m >= 0 && m <= s.kappa(), "toeplitz_upper: order exceeds sequence length");
    BlockMatrix S(m + 1, m + 1, s.q(), s.q());
    for (int j = 0; j <= m; ++j)
        for (int k = j; k <= m; ++k) S.block(j, k) = s[k - j];
    return S;
}

namespace {

BlockMatrix hankel_offset(const MatrixSequence& s, int n, int offset) {
    need(n >= 0 && 2 * n + offset <= s.kappa(), "block Hankel matrix needs more terms");
    BlockMatrix H(n + 1, n + 1, s.q(), s.q());
    for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k) H.block(j, k) = s[j + k + offset];
    return H;
}

}  // namespace

BlockMatrix hankel_H(const MatrixSequence& s, int n) { return hankel_offset(s, n, 0); }
BlockMatrix hankel_K(const MatrixSequence& s, int n) { return hankel_offset(s, n, 1); }
BlockMatrix hankel_G(const MatrixSequence& s, int n) { return hankel_offset(s, n, 2); }

BlockMatrix block_col(const MatrixSequence& s, int l, int m) {
    need(0 <= l && l <= m && m <= s.kappa(), "block_col: index range");
    BlockMatrix y(m - l + 1, 1, s.q(), s.q());
    for (int j = l; j <= m; ++j) y.block(j - l, 0) = s[j];
    return y;
}

BlockMatrix block_row(const MatrixSequence& s, int l, int m) {
    need(0 <= l && l <= m && m <= s.kappa(), "block_row: index range");
    BlockMatrix z(1, m - l + 1, s.q(), s.q());
    for (int j = l; j <= m; ++j) z.block(0, j - l) = s[j];
    return z;
}

BlockMatrix block_diag(const Matrix& X, int m) {
    BlockMatrix D(m + 1, m + 1, static_cast<int>(X.rows()), static_cast<int>(X.cols()));
    for (int j = 0; j <= m; ++j) D.block(j, j) = X;
    return D;
}

Matrix direct_sum(const Matrix& X, const Matrix& Y) {
    Matrix D = Matrix::Zero(X.rows() + Y.rows(), X.cols() + Y.cols());
    D.topLeftCorner(X.rows(), X.cols()) = X;
    D.bottomRightCorner(Y.rows(), Y.cols()) = Y;
    return D;
}

BlockMatrix shift_T(int q, int n) {
    BlockMatrix T(n + 1, n + 1, q, q);
    for (int j = 1; j <= n; ++j) T.block(j, j - 1) = Matrix::Identity(q, q);
    return T;
}

BlockMatrix resolvent_R(int q, int n, cplx z) {
    BlockMatrix R(n + 1, n + 1, q, q);
    for (int j = 0; j <= n; ++j) {
        cplx zk = 1.0;
        for (int k = j; k >= 0; --k) {
            R.block(j, k) = zk * Matrix::Identity(q, q);
            zk *= z;
        }
    }
    return R;
}

BlockMatrix v_col(int q, int n) {
    BlockMatrix v(n + 1, 1, q, q);
    v.block(0, 0) = Matrix::Identity(q, q);
    return v;
}

Matrix lower_embed(int q, int l, int m) {
    Matrix E = Matrix::Zero((l + m) * q, m * q);
    E.bottomRows(m * q) = Matrix::Identity(m * q, m * q);
    return E;
}

BlockMatrix d_left(const MatrixSequence& s, int m, const Tolerance& tol) {
    need(m >= 0 && m <= s.kappa(), "d_left: order exceeds sequence length");
    const int q = s.q();
    const MatrixSequence r = reciprocal(s.truncated(m), tol);
    const Matrix P = Matrix::Identity(q, q) - s[0] * pinv(s[0], tol);
    Matrix D = block_diag(s[0], m).data * toeplitz_lower(r, m).data + block_diag(P, m).data;
    return BlockMatrix(m + 1, m + 1, q, q, std::move(D));
}

BlockMatrix d_right(const MatrixSequence& s, int m, const Tolerance& tol) {
    need(m >= 0 && m <= s.kappa(), "d_right: order exceeds sequence length");
    const int q = s.q();
    const MatrixSequence r = reciprocal(s.truncated(m), tol);
    const Matrix P = Matrix::Identity(q, q) - pinv(s[0], tol) * s[0];
    Matrix D = toeplitz_upper(r, m).data * block_diag(s[0], m).data + block_diag(P, m).data;
    return BlockMatrix(m + 1, m + 1, q, q, std::move(D));
}

BlockMatrix d_left2(const MatrixSequence& s, const MatrixSequence& t, int m, const Tolerance& tol) {
    need(m >= 0 && m <= s.kappa() && m <= t.kappa(), "d_left2: order exceeds sequence length");
    const int q = s.q();
    const MatrixSequence r = reciprocal(s.truncated(m), tol);
    const Matrix t0p = pinv(t[0], tol);
    const Matrix P = Matrix::Identity(q, q) - s[0] * pinv(s[0], tol) * t[0] * t0p;
    Matrix D = block_diag(s[0], m).data * toeplitz_lower(r, m).data * toeplitz_lower(t, m).data *
                   block_diag(t0p, m).data +
               block_diag(P, m).data;
    return BlockMatrix(m + 1, m + 1, q, q, std::move(D));
}

BlockMatrix d_right2(const MatrixSequence& s, const MatrixSequence& t, int m, const Tolerance& tol) {
    need(m >= 0 && m <= s.kappa() && m <= t.kappa(), "d_right2: order exceeds sequence length");
    const int q = s.q();
    const MatrixSequence r = reciprocal(s.truncated(m), tol);
    const Matrix t0p = pinv(t[0], tol);
    const Matrix P = Matrix::Identity(q, q) - t0p * t[0] * pinv(s[0], tol) * s[0];
    Matrix D = block_diag(t0p, m).data * toeplitz_upper(t, m).data * toeplitz_upper(r, m).data *
                   block_diag(s[0], m).data +
               block_diag(P, m).data;
    return BlockMatrix(m + 1, m + 1, q, q, std::move(D));
}

Matrix schur_L(const MatrixSequence& s, int n, const Tolerance& tol) {
    need(n >= 0 && 2 * n <= s.kappa(), "schur_L: needs 2n <= kappa");
    if (n == 0) return s[0];
    return s[2 * n] - theta(s, n, tol);
}

Matrix schur_LL(const MatrixSequence& s, int n, const Tolerance& tol) {
    need(n >= 0 && 2 * n <= s.kappa(), "schur_LL: needs 2n <= kappa");
    if (n == 0) return s[0];
    return hankel_G(s, n - 1).data -
           block_col(s, 1, n).data * pinv(s[0], tol) * block_row(s, 1, n).data;
}

Matrix theta(const MatrixSequence& s, int n, const Tolerance& tol) {
    need(n >= 0 && 2 * n - 1 <= s.kappa(), "theta: needs 2n-1 <= kappa");
    if (n == 0) return Matrix::Zero(s.q(), s.q());
    return block_row(s, n, 2 * n - 1).data * pinv(hankel_H(s, n - 1).data, tol) *
           block_col(s, n, 2 * n - 1).data;
}

Matrix theta_psd(const MatrixSequence& s, int n, const Tolerance& tol) {
    need(n >= 0 && 2 * n - 1 <= s.kappa(), "theta_psd: needs 2n-1 <= kappa");
    if (n == 0) return Matrix::Zero(s.q(), s.q());
    for (int j = 0; j <= 2 * n - 1; ++j)
        if (!is_hermitian(s[j], tol)) return theta(s, n, tol);
    return psd_quadratic_form(hankel_H(s, n - 1).data, block_col(s, n, 2 * n - 1).data, tol);
}

ExtremalIngredients extremal_ingredients(const MatrixSequence& s, int n, const Tolerance& tol) {
    need(n >= 0 && 2 * n - 1 <= s.kappa(), "extremal_ingredients: needs 2n-1 <= kappa");
    const int q = s.q();
    ExtremalIngredients e;
    if (n == 0) {
        e.theta = e.sigma = Matrix::Zero(q, q);
        e.Mn = e.Nn = e.lambda = Matrix::Zero(q, q);
        return e;
    }
    const Matrix Hp = pinv(hankel_H(s, n - 1).data, tol);
    const Matrix z = block_row(s, n, 2 * n - 1).data;
    const Matrix y = block_col(s, n, 2 * n - 1).data;
    e.theta = z * Hp * y;
    e.sigma = z * Hp * hankel_K(s, n - 1).data * Hp * y;
    if (2 * n <= s.kappa()) {
        e.Mn = z * Hp * block_col(s, n + 1, 2 * n).data;
        e.Nn = block_row(s, n + 1, 2 * n).data * Hp * y;
        e.lambda = *e.Mn + *e.Nn - e.sigma;
    }
    return e;
}

Residual compare(const std::string& name, const Matrix& lhs, const Matrix& rhs, int q,
                 const Tolerance& tol) {
    Residual res;
    res.name = name;
    res.value = rel_diff(lhs, rhs, tol.eq_rel_tol);
    const Matrix D = lhs - rhs;
    double best = -1.0;
    for (int j = 0; j * q < D.rows(); ++j)
        for (int k = 0; k * q < D.cols(); ++k) {
            const double v = norm(D.block(j * q, k * q, q, q));
            if (v > best) best = v, res.block_row = j, res.block_col = k;
        }
    return res;
}

Residual worst(const Residual& a, const Residual& b) { return b.value > a.value ? b : a; }

Residual check_hankel_reciprocal(const MatrixSequence& s, int n, const Tolerance& tol) {
    const MatrixSequence r = reciprocal(s, tol);
    const int q = s.q();
    const Matrix lhs = hankel_H(r, n).data +
                       toeplitz_lower(r, n).data * hankel_H(s, n).data * toeplitz_upper(r, n).data;
    const Matrix v = v_col(q, n).data;
    const Matrix rhs = block_col(r, 0, n).data * v.adjoint() + v * block_row(r, 0, n).data;
    return compare("hankel_reciprocal", lhs, rhs, q, tol);
}

Residual check_k_reciprocal(const MatrixSequence& s, int n, const Tolerance& tol) {
    const MatrixSequence r = reciprocal(s, tol);
    const Matrix rhs = -toeplitz_lower(r, n).data * hankel_K(s, n).data * toeplitz_upper(r, n).data;
    return compare("k_reciprocal", hankel_K(r, n).data, rhs, s.q(), tol);
}

Residual check_g_reciprocal(const MatrixSequence& s, int n, const Tolerance& tol) {
    const MatrixSequence r = reciprocal(s, tol);
    const Matrix rhs = -toeplitz_lower(r, n).data * schur_LL(s, n + 1, tol) * toeplitz_upper(r, n).data;
    return compare("g_reciprocal", hankel_G(r, n).data, rhs, s.q(), tol);
}

Residual check_toeplitz_reflexive(const MatrixSequence& s, int m, const Tolerance& tol) {
    const MatrixSequence r = reciprocal(s, tol);
    const Matrix SLr = toeplitz_lower(r, m).data, SUr = toeplitz_upper(r, m).data;
    const Matrix SL = toeplitz_lower(s, m).data, SU = toeplitz_upper(s, m).data;
    return worst(compare("toeplitz_reflexive_lower", SLr * SL * SLr, SLr, s.q(), tol),
                 compare("toeplitz_reflexive_upper", SUr * SU * SUr, SUr, s.q(), tol));
}

Residual check_toeplitz_pinv(const MatrixSequence& s, int m, const Tolerance& tol) {
    const MatrixSequence r = reciprocal(s, tol);
    return worst(compare("toeplitz_pinv_lower", pinv(toeplitz_lower(s, m).data, tol),
                         toeplitz_lower(r, m).data, s.q(), tol),
                 compare("toeplitz_pinv_upper", pinv(toeplitz_upper(s, m).data, tol),
                         toeplitz_upper(r, m).data, s.q(), tol));
}

Residual check_toeplitz_range(const MatrixSequence& s, int m, const Tolerance& tol) {
    const Matrix SL = toeplitz_lower(s, m).data;
    return compare("toeplitz_range", SL * pinv(SL, tol),
                   block_diag(s[0] * pinv(s[0], tol), m).data, s.q(), tol);
}

Residual check_hankel_ldu(const MatrixSequence& s, int n, const Tolerance& tol) {
    need(n >= 1 && 2 * n <= s.kappa(), "check_hankel_ldu: needs 1 <= n, 2n <= kappa");
    const int q = s.q();
    const Matrix s0p = pinv(s[0], tol);
    const Matrix y = block_col(s, 1, n).data, z = block_row(s, 1, n).data;
    Matrix Lf = Matrix::Identity((n + 1) * q, (n + 1) * q);
    Lf.bottomLeftCorner(n * q, q) = y * s0p;
    Matrix Uf = Matrix::Identity((n + 1) * q, (n + 1) * q);
    Uf.topRightCorner(q, n * q) = s0p * z;
    const Matrix rhs = Lf * direct_sum(s[0], schur_LL(s, n, tol)) * Uf;
    return compare("hankel_ldu", hankel_H(s, n).data, rhs, q, tol);
}

}  // namespace hkit

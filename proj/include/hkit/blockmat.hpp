#pragma once

// Structured block matrices built from matrix sequences: triangular block
// Toeplitz matrices, block Hankel matrices, resolvents, regularized
// triangular factors, and the Schur complements of block Hankel matrices.

#include <optional>
#include <string>

#include "hkit/seq.hpp"

namespace hkit {

struct BlockMatrix {
    int block_rows = 0;
    int block_cols = 0;
    int p = 0;  // rows per block
    int q = 0;  // cols per block
    Matrix data;

    BlockMatrix() = default;
    BlockMatrix(int br, int bc, int p_, int q_);
    BlockMatrix(int br, int bc, int p_, int q_, Matrix m);

    auto block(int j, int k) { return data.block(j * p, k * q, p, q); }
    auto block(int j, int k) const { return data.block(j * p, k * q, p, q); }

    operator const Matrix&() const { return data; }
};

/// S_L(s) of order m: block (j,k) = s_{j−k} for j ≥ k.
BlockMatrix toeplitz_lower(const MatrixSequence& s, int m);
/// S_U(s) of order m: block (j,k) = s_{k−j} for k ≥ j.
BlockMatrix toeplitz_upper(const MatrixSequence& s, int m);

/// [s_{j+k}]_{j,k=0..n}; requires 2n ≤ κ.
BlockMatrix hankel_H(const MatrixSequence& s, int n);
/// [s_{j+k+1}]_{j,k=0..n}; requires 2n+1 ≤ κ.
BlockMatrix hankel_K(const MatrixSequence& s, int n);
/// [s_{j+k+2}]_{j,k=0..n}; requires 2n+2 ≤ κ.
BlockMatrix hankel_G(const MatrixSequence& s, int n);

/// Block column (s_l, ..., s_m).
BlockMatrix block_col(const MatrixSequence& s, int l, int m);
/// Block row (s_l, ..., s_m).
BlockMatrix block_row(const MatrixSequence& s, int l, int m);

/// diag(X, ..., X) with m+1 copies.
BlockMatrix block_diag(const Matrix& X, int m);
/// diag(X, Y) for arbitrary (possibly non-square) blocks.
Matrix direct_sum(const Matrix& X, const Matrix& Y);

/// Block subdiagonal shift T_{q,n}.
BlockMatrix shift_T(int q, int n);
/// (I − zT_{q,n})^{-1} = Σ z^ℓ T^ℓ.
BlockMatrix resolvent_R(int q, int n, cplx z);
/// Block column v_{q,n} = (I_q, 0, ..., 0).
BlockMatrix v_col(int q, int n);
/// [0_{l q × m q}; I_{m q}].
Matrix lower_embed(int q, int l, int m);

/// diag(s_0) S_L(s^♯) + diag(I − s_0 s_0^†).
BlockMatrix d_left(const MatrixSequence& s, int m, const Tolerance& tol = {});
/// S_U(s^♯) diag(s_0) + diag(I − s_0^† s_0).
BlockMatrix d_right(const MatrixSequence& s, int m, const Tolerance& tol = {});
/// diag(s_0) S_L(s^♯) S_L(t) diag(t_0^†) + diag(I − s_0 s_0^† t_0 t_0^†).
BlockMatrix d_left2(const MatrixSequence& s, const MatrixSequence& t, int m,
                    const Tolerance& tol = {});
/// diag(t_0^†) S_U(t) S_U(s^♯) diag(s_0) + diag(I − t_0^† t_0 s_0^† s_0).
BlockMatrix d_right2(const MatrixSequence& s, const MatrixSequence& t, int m,
                     const Tolerance& tol = {});

/// L_n = H_n / H_{n−1}, with L_0 = s_0; requires 2n ≤ κ.
Matrix schur_L(const MatrixSequence& s, int n, const Tolerance& tol = {});
/// 𝕃_n = H_n / s_0 = G_{n−1} − y_{1,n} s_0^† z_{1,n}, with 𝕃_0 = s_0.
Matrix schur_LL(const MatrixSequence& s, int n, const Tolerance& tol = {});

/// Θ_n = z_{n,2n−1} H_{n−1}^† y_{n,2n−1}; Θ_0 = 0; requires 2n−1 ≤ κ.
Matrix theta(const MatrixSequence& s, int n, const Tolerance& tol = {});

/// Θ_n for a Hermitian sequence with H_{n−1} PSD, evaluated as a quadratic form
/// through a pivoted Cholesky factorization instead of an explicit
/// pseudoinverse. Falls back to theta() for non-Hermitian sequences.
Matrix theta_psd(const MatrixSequence& s, int n, const Tolerance& tol = {});

struct ExtremalIngredients {
    Matrix theta;
    Matrix sigma;
    // Present only when 2n ≤ κ.
    std::optional<Matrix> Mn;
    std::optional<Matrix> Nn;
    std::optional<Matrix> lambda;
};

/// Θ_n, Σ_n (2n−1 ≤ κ) and M_n, N_n, Λ_n = M_n + N_n − Σ_n (2n ≤ κ).
ExtremalIngredients extremal_ingredients(const MatrixSequence& s, int n, const Tolerance& tol = {});

/// Outcome of comparing the two sides of a matrix identity.
struct Residual {
    std::string name;
    double value = 0.0;  // max relative residual
    int block_row = -1;  // location of the largest block deviation
    int block_col = -1;

    bool ok(double tol) const { return value <= tol; }
};

/// Relative residual ‖L − R‖/max(‖L‖,‖R‖) with the worst q×q block located.
Residual compare(const std::string& name, const Matrix& lhs, const Matrix& rhs, int q,
                 const Tolerance& tol = {});

/// Keeps the larger of two residual reports.
Residual worst(const Residual& a, const Residual& b);

/// H_n^♯ + S_L^♯ H_n S_U^♯ = y^♯_{0,n} v* + v z^♯_{0,n}.
Residual check_hankel_reciprocal(const MatrixSequence& s, int n, const Tolerance& tol = {});
/// K_n^♯ = −S_L^♯ K_n S_U^♯.
Residual check_k_reciprocal(const MatrixSequence& s, int n, const Tolerance& tol = {});
/// G_n^♯ = −S_L^♯ 𝕃_{n+1} S_U^♯.
Residual check_g_reciprocal(const MatrixSequence& s, int n, const Tolerance& tol = {});
/// S_L^♯ S_L S_L^♯ = S_L^♯ and S_U^♯ S_U S_U^♯ = S_U^♯.
Residual check_toeplitz_reflexive(const MatrixSequence& s, int m, const Tolerance& tol = {});
/// pinv(S_L) = S_L^♯ (and the S_U analogue) for first-term-dominated s.
Residual check_toeplitz_pinv(const MatrixSequence& s, int m, const Tolerance& tol = {});
/// S_L S_L^† = diag(s_0 s_0^†) for first-term-dominated s.
Residual check_toeplitz_range(const MatrixSequence& s, int m, const Tolerance& tol = {});
/// Block LDU factorization of H_n through s_0 and 𝕃_n.
Residual check_hankel_ldu(const MatrixSequence& s, int n, const Tolerance& tol = {});

}  // namespace hkit

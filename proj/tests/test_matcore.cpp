#include <random>

#include <gtest/gtest.h>

#include "hkit/matcore.hpp"
#include "hkit/oracle.hpp"
#include "test_util.hpp"

using namespace hkit;
using hkit::test::close;
using hkit::test::mat;

namespace {

// Reference pseudoinverse through a complete orthogonal decomposition.
Matrix cod_pinv(const Matrix& A) {
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(A);
    cod.setThreshold(1e-10);
    return cod.pseudoInverse();
}

Matrix low_rank(int rows, int cols, int rank, std::uint64_t seed) {
    return random_complex(rows, cols, seed).leftCols(rank) * random_complex(rank, cols, seed + 1000).leftCols(cols);
}

}  // namespace

TEST(Pinv, DiagonalWithZero) {
    EXPECT_TRUE(close(pinv(diag({2, 0})), diag({0.5, 0})));
}

TEST(Pinv, ZeroMatrixTransposesShape) {
    const Matrix X = pinv(zeros(2, 3));
    EXPECT_EQ(X.rows(), 3);
    EXPECT_EQ(X.cols(), 2);
    EXPECT_EQ(norm(X), 0.0);
}

TEST(Pinv, RankOneAllOnes) {
    const Matrix want = Matrix::Constant(2, 2, 0.25);
    EXPECT_TRUE(close(pinv(mat({{1, 1}, {1, 1}})), want));
    EXPECT_TRUE(close(cod_pinv(mat({{1, 1}, {1, 1}})), want));
}

TEST(Pinv, PenroseEquationsOnRandomMatrices) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const int r = 1 + static_cast<int>(rng() % 8), c = 1 + static_cast<int>(rng() % 8);
        const int rank = 1 + static_cast<int>(rng() % std::min(r, c));
        const Matrix A = random_complex(r, rank, trial) * random_complex(rank, c, trial + 500);
        const Matrix X = pinv(A);
        EXPECT_LE(rel_diff(A * X * A, A, 1e-12), 1e-8);
        EXPECT_LE(rel_diff(X * A * X, X, 1e-12), 1e-8);
        EXPECT_LE(rel_diff(A * X, (A * X).adjoint(), 1e-12), 1e-8);
        EXPECT_LE(rel_diff(X * A, (X * A).adjoint(), 1e-12), 1e-8);
        EXPECT_TRUE(close(X, cod_pinv(A), 1e-8));
    }
}

TEST(Pinv, InvolutionAndAdjoint) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Matrix A = low_rank(5, 4, 1 + seed % 4, seed);
        EXPECT_TRUE(close(pinv(pinv(A)), A, 1e-8));
        EXPECT_TRUE(close(pinv(A.adjoint()), pinv(A).adjoint(), 1e-8));
    }
}

TEST(Pinv, ScalarHomogeneity) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const cplx eta(g(rng), g(rng));
        const Matrix A = random_complex(3, 4, seed);
        EXPECT_TRUE(close(pinv(eta * A), (1.0 / eta) * pinv(A), 1e-8));
    }
    EXPECT_EQ(norm(pinv(cplx(0) * random_complex(3, 3, 1))), 0.0);
}

TEST(PsdSqrt, Examples) {
    EXPECT_TRUE(close(psd_sqrt(eye(3)), eye(3)));
    EXPECT_TRUE(close(psd_sqrt(diag({4, 9})), diag({2, 3})));
    const Matrix A = mat({{2, 1}, {1, 2}});
    const Matrix Q = psd_sqrt(A);
    EXPECT_TRUE(close(Q * Q, A, 1e-12));
    EXPECT_TRUE(is_psd(Q));
    // Independent eigen route: eigenvalues 1 and 3 with vectors (1,-1), (1,1).
    const Matrix want = 0.5 * mat({{1 + std::sqrt(3.0), std::sqrt(3.0) - 1}, {std::sqrt(3.0) - 1, 1 + std::sqrt(3.0)}});
    EXPECT_TRUE(close(Q, want, 1e-12));
}

TEST(PsdSqrt, ClampsTinyNegativeEigenvalues) {
    const Matrix A = diag({1, -1e-12});
    EXPECT_TRUE(close(psd_sqrt(A), diag({1, 0}), 1e-12));
    EXPECT_THROW(psd_sqrt(diag({1, -0.1})), std::invalid_argument);
    EXPECT_THROW(psd_sqrt(mat({{1, 1}, {0, 1}})), std::invalid_argument);
}

TEST(ParallelSum, Examples) {
    EXPECT_EQ(norm(parallel_sum(zeros(2, 2), diag({1, 3}))), 0.0);
    EXPECT_TRUE(close(parallel_sum(mat({{2}}), mat({{2}})), mat({{1}})));
    EXPECT_TRUE(close(parallel_sum(eye(3), eye(3)), 0.5 * eye(3)));
    EXPECT_THROW(parallel_sum(eye(2), eye(3)), std::invalid_argument);
}

TEST(ParallelSum, SymmetricOnPsdPairs) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const int q = 1 + seed % 4;
        const Matrix A = random_psd(q, 1 + seed % q, seed);
        const Matrix B = random_psd(q, q, seed + 77);
        const Matrix P = parallel_sum(A, B);
        EXPECT_TRUE(close(P, parallel_sum(B, A), 1e-8));
        EXPECT_TRUE(close(P, P.adjoint(), 1e-8));
        EXPECT_TRUE(is_psd(P));
    }
}

TEST(OrthoProjector, Examples) {
    EXPECT_TRUE(close(ortho_projector(eye(3)), eye(3)));
    EXPECT_EQ(norm(ortho_projector(zeros(2, 2))), 0.0);
    EXPECT_TRUE(close(ortho_projector(mat({{1}, {1}})), Matrix::Constant(2, 2, 0.5)));
}

TEST(OrthoProjector, IdempotentHermitianFixesRange) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Matrix A = low_rank(5, 3, 1 + seed % 3, seed);
        const Matrix P = ortho_projector(A);
        EXPECT_TRUE(close(P * P, P, 1e-8));
        EXPECT_TRUE(close(P, P.adjoint(), 1e-8));
        EXPECT_TRUE(close(P * A, A, 1e-8));
        EXPECT_EQ(rank_of(P), rank_of(A));
    }
}

TEST(SchurComplement, Examples) {
    EXPECT_TRUE(close(schur_complement(mat({{1, 0}, {0, 5}}), 1, 1), mat({{5}})));
    EXPECT_TRUE(close(schur_complement(mat({{1, 2}, {3, 4}}), 1, 1), mat({{-2}})));
    EXPECT_TRUE(close(schur_complement(mat({{0, 1}, {1, 1}}), 1, 1), mat({{1}})));
    EXPECT_THROW(schur_complement(eye(2), 2, 1), std::out_of_range);
    EXPECT_THROW(schur_complement(eye(2), 0, 1), std::out_of_range);
}

TEST(Predicates, Examples) {
    EXPECT_TRUE(is_psd(eye(2)));
    EXPECT_FALSE(is_psd(diag({1, -1})));
    EXPECT_TRUE(loewner_leq(zeros(2, 2), diag({1, 2})));
    EXPECT_FALSE(loewner_leq(diag({1, 2}), zeros(2, 2)));
    EXPECT_THROW(loewner_leq(mat({{0, 1}, {0, 0}}), eye(2)), std::invalid_argument);
    EXPECT_TRUE(is_hermitian(mat({{1, 2}, {2, 1}})));
    EXPECT_FALSE(is_hermitian(mat({{1, 2}, {0, 1}})));
    EXPECT_EQ(rank_of(mat({{1, 1}, {1, 1}})), 1);
    EXPECT_EQ(rank_of(zeros(3, 2)), 0);
}

TEST(Kron, ScalarLeftFactor) {
    const Matrix B = random_complex(3, 2, 5);
    EXPECT_TRUE(close(kron(hkit::test::m1(2.0), B), 2.0 * B, 1e-15));
}

TEST(Kron, MixedProductAndPsd) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Matrix A = random_complex(2, 3, seed), B = random_complex(2, 2, seed + 1);
        const Matrix C = random_complex(3, 2, seed + 2), D = random_complex(2, 3, seed + 3);
        EXPECT_TRUE(close(kron(A, B) * kron(C, D), kron(A * C, B * D), 1e-12));
        EXPECT_TRUE(is_psd(kron(random_psd(2, 1 + seed % 2, seed), random_psd(3, 2, seed + 9))));
    }
}

TEST(PsdQuadraticForm, MatchesPinvOnRange) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int n = 2 + seed % 5;
        const Matrix H = random_psd(n, 1 + seed % n, seed);
        const Matrix Y = H * random_complex(n, 2, seed + 3);
        EXPECT_TRUE(close(psd_quadratic_form(H, Y), Y.adjoint() * pinv(H) * Y, 1e-8));
    }
}

TEST(ToleranceProfile, Validation) {
    EXPECT_NO_THROW(Tolerance{}.validate());
    EXPECT_THROW((Tolerance{0.0, 1e-9, 1e-8}.validate()), std::invalid_argument);
    EXPECT_THROW((Tolerance{1e-10, 1.0, 1e-8}.validate()), std::invalid_argument);
    EXPECT_THROW((Tolerance{1e-10, 1e-9, -1.0}.validate()), std::invalid_argument);
}

TEST(RequireFinite, RejectsNan) {
    Matrix A = eye(2);
    A(0, 1) = std::nan("");
    EXPECT_THROW(require_finite(A), std::invalid_argument);
    EXPECT_THROW(pinv(A), std::invalid_argument);
}

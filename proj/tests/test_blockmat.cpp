#include <gtest/gtest.h>

#include "hkit/blockmat.hpp"
#include "hkit/measures.hpp"
#include "hkit/oracle.hpp"
#include "test_util.hpp"

using namespace hkit;
using hkit::test::close;
using hkit::test::m1;
using hkit::test::mat;

namespace {

// Arcsine moments on [0,1] taken from the quadrature oracle.
MatrixSequence arcsine_scalar(int kappa) {
    std::vector<cplx> v;
    for (int j = 0; j <= kappa; ++j) v.push_back(oracle_arcsine_moment(j));
    return MatrixSequence::scalar(v);
}

}  // namespace

TEST(Toeplitz, OrderZeroIsFirstTerm) {
    const MatrixSequence s = random_sequence(2, 3, 1);
    EXPECT_TRUE(close(toeplitz_lower(s, 0).data, s[0], 0));
    EXPECT_TRUE(close(toeplitz_upper(s, 0).data, s[0], 0));
}

TEST(Toeplitz, ScalarByDefinition) {
    const MatrixSequence s = MatrixSequence::scalar({1, 2, 3});
    EXPECT_TRUE(close(toeplitz_lower(s, 2).data, mat({{1, 0, 0}, {2, 1, 0}, {3, 2, 1}}), 0));
    EXPECT_TRUE(close(toeplitz_upper(s, 2).data, mat({{1, 2, 3}, {0, 1, 2}, {0, 0, 1}}), 0));
    EXPECT_THROW(toeplitz_lower(s, 3), std::out_of_range);
}

TEST(Toeplitz, PowersGiveResolvent) {
    const cplx z(0.3, -1.2);
    for (int q = 1; q <= 3; ++q) {
        std::vector<Matrix> items;
        for (int j = 0; j <= 4; ++j) items.push_back(std::pow(z, j) * eye(q));
        EXPECT_TRUE(close(toeplitz_lower(MatrixSequence(items), 4).data, resolvent_R(q, 4, z).data, 1e-14));
    }
}

TEST(Hankel, ArcsineScalar) {
    const MatrixSequence s = arcsine_scalar(2);
    EXPECT_TRUE(close(hankel_H(s, 1).data, mat({{1, 0.5}, {0.5, 0.375}}), 1e-12));
    EXPECT_TRUE(close(hankel_K(MatrixSequence::scalar({1, 2}), 0).data, m1(2), 0));
    EXPECT_TRUE(close(hankel_G(MatrixSequence::scalar({1, 2, 3}), 0).data, m1(3), 0));
    EXPECT_THROW(hankel_H(s, 2), std::out_of_range);
    EXPECT_THROW(hankel_K(s, 1), std::out_of_range);
    EXPECT_THROW(hankel_G(s, 1), std::out_of_range);
}

TEST(Hankel, BlockPartition) {
    const MatrixSequence s = random_sequence(2, 6, 3);
    for (int n = 1; n <= 3; ++n) {
        const Matrix H = hankel_H(s, n).data;
        const int q = 2;
        EXPECT_TRUE(close(H.topLeftCorner(n * q, n * q), hankel_H(s, n - 1).data, 0));
        EXPECT_TRUE(close(H.topRightCorner(n * q, q), block_col(s, n, 2 * n - 1).data, 0));
        EXPECT_TRUE(close(H.bottomLeftCorner(q, n * q), block_row(s, n, 2 * n - 1).data, 0));
        EXPECT_TRUE(close(H.bottomRightCorner(q, q), s[2 * n], 0));
    }
}

TEST(Resolvent, Examples) {
    EXPECT_TRUE(close(resolvent_R(2, 3, 0.0).data, eye(8), 0));
    EXPECT_TRUE(close(resolvent_R(3, 0, cplx(5, 1)).data, eye(3), 0));
    EXPECT_TRUE(close(resolvent_R(1, 1, 2.0).data, mat({{1, 0}, {2, 1}}), 0));
}

TEST(Resolvent, InverseCommutesAndIntertwines) {
    const cplx z(0.7, 0.2), w(-1.1, 0.4);
    const int q = 2, n = 3;
    const Matrix Rz = resolvent_R(q, n, z).data, Rw = resolvent_R(q, n, w).data;
    const Matrix T = shift_T(q, n).data;
    EXPECT_TRUE(close((eye((n + 1) * q) - z * T) * Rz, eye((n + 1) * q), 1e-14));
    EXPECT_TRUE(close(Rz * Rw, Rw * Rz, 1e-14));
    EXPECT_NEAR(std::abs(det(Rz) - 1.0), 0.0, 1e-12);
    // Block lower-triangular Toeplitz matrices commute with each other.
    const Matrix SL = toeplitz_lower(random_sequence(1, n, 7), n).data;
    const Matrix R1 = resolvent_R(1, n, z).data;
    EXPECT_TRUE(close(SL * R1, R1 * SL, 1e-13));
}

TEST(DFactors, IdentityFirstTerm) {
    const MatrixSequence s({eye(2)});
    EXPECT_TRUE(close(d_left(s, 0).data, eye(2), 1e-15));
    EXPECT_TRUE(close(d_right(s, 0).data, eye(2), 1e-15));
}

TEST(DFactors, UnitDeterminant) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SequenceOptions opt;
        opt.s0_rank = static_cast<int>(seed % 3);
        const MatrixSequence s = random_sequence(2, 4, seed, opt);
        for (int m = 0; m <= 4; ++m) {
            EXPECT_NEAR(std::abs(det(d_left(s, m).data) - 1.0), 0.0, 1e-9) << seed << " " << m;
            EXPECT_NEAR(std::abs(det(d_right(s, m).data) - 1.0), 0.0, 1e-9) << seed << " " << m;
        }
    }
}

TEST(DFactors, AdjointSymmetry) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const MatrixSequence s = random_sequence(2, 4, seed);
        EXPECT_TRUE(close(d_left(s, 3).data.adjoint(), d_right(s.adjoint(), 3).data, 1e-9));
    }
}

TEST(DFactors, TwoSequenceReducesToOne) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const MatrixSequence s = random_sequence(2, 4, seed);
        std::vector<Matrix> e(5, zeros(2, 2));
        e[0] = eye(2);
        const MatrixSequence t(e);
        EXPECT_TRUE(close(d_left2(s, t, 4).data, d_left(s, 4).data, 1e-10));
        EXPECT_TRUE(close(d_right2(s, t, 4).data, d_right(s, 4).data, 1e-10));
    }
}

TEST(DFactors, TwoSequenceUnitDeterminantAndOrderZero) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SequenceOptions opt;
        opt.s0_rank = static_cast<int>(seed % 3);
        const MatrixSequence s = random_sequence(2, 3, seed, opt), t = random_sequence(2, 3, seed + 40, opt);
        for (int m = 0; m <= 3; ++m) {
            EXPECT_NEAR(std::abs(det(d_left2(s, t, m).data) - 1.0), 0.0, 1e-9);
            EXPECT_NEAR(std::abs(det(d_right2(s, t, m).data) - 1.0), 0.0, 1e-9);
        }
        const Matrix s0p = pinv(s[0]), t0p = pinv(t[0]);
        const Matrix want = s[0] * s0p * t[0] * t0p + (eye(2) - s[0] * s0p * t[0] * t0p);
        EXPECT_TRUE(close(d_left2(s, t, 0).data, want, 1e-10));
    }
    EXPECT_THROW(d_left2(random_sequence(1, 2, 1), random_sequence(1, 1, 2), 2), std::out_of_range);
}

TEST(SchurL, Examples) {
    const MatrixSequence s = random_sequence(2, 2, 4);
    EXPECT_TRUE(close(schur_L(s, 0), s[0], 0));
    EXPECT_TRUE(close(schur_LL(s, 0), s[0], 0));
    EXPECT_TRUE(close(schur_L(arcsine_scalar(2), 1), m1(0.125), 1e-12));
    EXPECT_NEAR(norm(schur_L(MatrixSequence::scalar({1, 0.5, 0.25}), 1)), 0.0, 1e-15);
    EXPECT_THROW(schur_L(s, 2), std::out_of_range);
}

TEST(SchurL, MatchesGenericSchurComplement) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const MatrixSequence s = random_sequence(2, 6, seed);
        for (int n = 1; n <= 3; ++n) {
            const int q = 2;
            const Matrix H = hankel_H(s, n).data;
            EXPECT_TRUE(close(schur_L(s, n), schur_complement(H, n * q, n * q), 1e-9));
            EXPECT_TRUE(close(schur_LL(s, n), schur_complement(H, q, q), 1e-9));
        }
    }
}

TEST(Extremal, OrderZeroIsZero) {
    const ExtremalIngredients x = extremal_ingredients(random_sequence(2, 2, 1), 0);
    EXPECT_EQ(norm(x.theta), 0.0);
    EXPECT_EQ(norm(x.sigma), 0.0);
    ASSERT_TRUE(x.Mn && x.Nn && x.lambda);
    EXPECT_EQ(norm(*x.lambda), 0.0);
}

TEST(Extremal, ThetaArcsine) {
    EXPECT_TRUE(close(extremal_ingredients(arcsine_scalar(2), 1).theta, m1(0.25), 1e-12));
    EXPECT_TRUE(close(theta_psd(arcsine_scalar(2), 1), m1(0.25), 1e-12));
}

TEST(Extremal, LambdaScalesWithRightFactor) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const MatrixSequence s = random_sequence(1, 6, seed);
        const Matrix B = random_complex(3, 3, seed + 5);
        std::vector<Matrix> items;
        for (const Matrix& x : s.items()) items.push_back(x(0, 0) * B);
        const MatrixSequence x(items);
        for (int n = 1; n <= 3; ++n)
            EXPECT_TRUE(close(*extremal_ingredients(x, n).lambda, (*extremal_ingredients(s, n).lambda)(0, 0) * B, 1e-8));
    }
}

TEST(Extremal, OptionalPartsNeedEvenLength) {
    const ExtremalIngredients x = extremal_ingredients(random_sequence(2, 3, 2), 2);
    EXPECT_FALSE(x.Mn.has_value());
    EXPECT_THROW(extremal_ingredients(random_sequence(2, 2, 2), 2), std::out_of_range);
}

TEST(Identities, ReciprocalHankelFamilies) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const int q = 1 + seed % 3, kappa = 2 + seed % 7;
        SequenceOptions opt;
        if (seed % 3 == 2) opt.s0_rank = q - 1;
        const MatrixSequence s = random_sequence(q, kappa, seed, opt);
        for (int n = 0; 2 * n <= kappa; ++n) EXPECT_TRUE(check_hankel_reciprocal(s, n).ok(1e-8)) << seed;
        for (int n = 0; 2 * n + 1 <= kappa; ++n) EXPECT_TRUE(check_k_reciprocal(s, n).ok(1e-8)) << seed;
        for (int n = 0; 2 * n + 2 <= kappa; ++n) EXPECT_TRUE(check_g_reciprocal(s, n).ok(1e-8)) << seed;
        for (int m = 0; m <= kappa; ++m) EXPECT_TRUE(check_toeplitz_reflexive(s, m).ok(1e-8)) << seed;
    }
}

TEST(Identities, FirstTermDominatedToeplitz) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        SequenceOptions opt;
        opt.first_term_dominated = true;
        opt.s0_rank = 1 + seed % 3;
        const MatrixSequence s = random_sequence(3, 5, seed, opt);
        for (int m = 0; m <= 5; ++m) {
            EXPECT_TRUE(check_toeplitz_pinv(s, m).ok(1e-8)) << seed;
            EXPECT_TRUE(check_toeplitz_range(s, m).ok(1e-8)) << seed;
        }
        for (int n = 1; 2 * n <= 5; ++n) EXPECT_TRUE(check_hankel_ldu(s, n).ok(1e-8)) << seed;
    }
}

TEST(Identities, ToeplitzPinvFailsWithoutDominance) {
    const MatrixSequence s({zeros(2, 2), eye(2)});
    EXPECT_FALSE(check_toeplitz_pinv(s, 1).ok(1e-8));
}

TEST(Residual, LocatesWorstBlock) {
    Matrix A = zeros(4, 4), B = zeros(4, 4);
    A.setIdentity();
    B.setIdentity();
    B(3, 2) = 0.5;
    const Residual r = compare("x", A, B, 2);
    EXPECT_EQ(r.block_row, 1);
    EXPECT_EQ(r.block_col, 1);
    EXPECT_GT(r.value, 0.1);
}

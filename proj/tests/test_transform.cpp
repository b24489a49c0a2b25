#include <gtest/gtest.h>

#include "hkit/measures.hpp"
#include "hkit/oracle.hpp"
#include "hkit/transform.hpp"
#include "test_util.hpp"

using namespace hkit;
using hkit::test::close;

namespace {

MomentSequence dirac_half(int kappa) {
    std::vector<cplx> v;
    for (int j = 0; j <= kappa; ++j) v.push_back(std::pow(0.5, j));
    return {Interval(0, 1), MatrixSequence::scalar(v)};
}

MomentSequence fixture(int q, int atoms, int kappa, std::uint64_t seed) {
    MolecularOptions opt;
    opt.stratified = true;
    opt.rank_deficient_prob = seed % 3 == 1 ? 0.3 : 0.0;
    opt.atom_at_beta = seed % 4 == 2;
    return moments(random_molecular(q, atoms, desk_interval(kappa, seed), seed, opt), kappa);
}

::testing::AssertionResult passed(const std::vector<Check>& checks) {
    for (const Check& c : checks)
        if (!c.passed)
            return ::testing::AssertionFailure() << c.name << ": residual " << c.residual << " > " << c.threshold;
    return ::testing::AssertionSuccess();
}

}  // namespace

TEST(HankelTransform, Examples) {
    EXPECT_TRUE(close(hankel_transform(MatrixSequence::scalar({1, 0, 1})), MatrixSequence::scalar({1.0})));
    const MatrixSequence t = hankel_transform(MatrixSequence::zeros(2, 4));
    EXPECT_EQ(t.size(), 3u);
    for (const Matrix& x : t.items()) EXPECT_EQ(norm(x), 0.0);
    EXPECT_THROW(hankel_transform(MatrixSequence::scalar({1.0, 2.0})), std::out_of_range);
}

TEST(HankelTransform, HeadsAreEvenHParameters) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int K = 2 + seed % 3;
        const MatrixSequence s = real_line_moments(1 + seed % 2, K + 2, 2 * K, seed);
        const MatrixSequence h = h_params(s);
        const std::vector<MatrixSequence> it = hankel_transform_iter(s, K);
        for (int k = 0; k <= K; ++k) EXPECT_TRUE(close(it[k][0], h[2 * k], 1e-7)) << seed << " k=" << k;
    }
}

TEST(HankelTransform, ShortensByTwo) {
    for (int kappa = 2; kappa <= 8; ++kappa)
        EXPECT_EQ(hankel_transform(random_sequence(2, kappa, kappa)).kappa(), kappa - 2);
}

TEST(HankelTransform, Factorization) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const MatrixSequence s = real_line_moments(2, 5, 6, seed);
        for (int n = 0; 2 * n + 2 <= 6; ++n) EXPECT_TRUE(passed(verify_hankel_transform_factorization(s, n))) << seed;
    }
}

TEST(FTransform, DiracHalfByHand) {
    const MomentSequence t = f_transform(dirac_half(2));
    EXPECT_TRUE(close(t.seq, MatrixSequence::scalar({0.25, 0.25}), 1e-14));
    EXPECT_DOUBLE_EQ(t.interval.alpha, 0.0);
    EXPECT_DOUBLE_EQ(t.interval.beta, 1.0);
}

TEST(FTransform, HeadIsFirstDistance) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const MomentSequence ms = fixture(1 + seed % 3, 4, 4, seed);
        EXPECT_TRUE(close(f_transform(ms)[0], interval_params(ms).d[1], 1e-9)) << seed;
    }
}

TEST(FTransform, ZeroAndLength) {
    const MomentSequence t = f_transform({Interval(-1, 1), MatrixSequence::zeros(2, 3)});
    EXPECT_EQ(t.kappa(), 2);
    for (const Matrix& x : t.seq.items()) EXPECT_EQ(norm(x), 0.0);
    EXPECT_THROW(f_transform({Interval(0, 1), MatrixSequence::scalar({1.0})}), std::out_of_range);
}

TEST(FTransformIter, StageZeroIsInput) {
    const MomentSequence ms = fixture(2, 3, 3, 1);
    const TransformTrace tr = f_transform_iter(ms, 0);
    ASSERT_EQ(tr.stages.size(), 1u);
    EXPECT_TRUE(close(tr.stages[0].seq, ms.seq, 0));
    EXPECT_THROW(f_transform_iter(ms, 4), std::out_of_range);
}

TEST(FTransformIter, PreservesClassesAndShortens) {
    int fg_seen = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const int kappa = 1 + seed % 7;
        const MomentSequence ms = fixture(1 + seed % 3, 1 + seed % (kappa + 4), kappa, seed);
        const bool fg = classify(ms).in_Fg;
        const TransformTrace tr = f_transform_iter(ms, kappa);
        ASSERT_EQ(tr.stages.size(), static_cast<std::size_t>(kappa + 1));
        for (int k = 0; k <= kappa; ++k) {
            EXPECT_EQ(tr.stages[k].kappa(), kappa - k);
            const ClassReport rep = classify(tr.stages[k]);
            EXPECT_TRUE(rep.in_Fgg) << "seed " << seed << " stage " << k;
            if (fg) EXPECT_TRUE(rep.in_Fg) << "seed " << seed << " stage " << k;
        }
        fg_seen += fg;
    }
    EXPECT_GT(fg_seen, 20);
}

TEST(FTransformIter, DegeneracyShift) {
    // n interior atoms of full rank make the sequence completely degenerate of order 2n.
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int atoms = 1 + seed % 3, order = 2 * atoms, kappa = order + 1;
        MolecularOptions opt;
        opt.stratified = true;
        const MomentSequence ms = moments(random_molecular(1, atoms, Interval(0, 1), seed, opt), kappa);
        ASSERT_TRUE(is_completely_degenerate(ms, order)) << seed;
        ASSERT_FALSE(is_completely_degenerate(ms, order - 1)) << seed;
        const TransformTrace tr = f_transform_iter(ms, kappa);
        for (int k = 0; k <= kappa; ++k)
            EXPECT_TRUE(is_completely_degenerate(tr.stages[k], std::max(0, order - k))) << seed << " " << k;
    }
}

TEST(FtRepresentations, ThreeAtomFixtures) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        MolecularOptions opt;
        opt.stratified = true;
        const MomentSequence ms = moments(random_molecular(2, 3, desk_interval(5, seed), seed, opt), 5);
        EXPECT_TRUE(passed(verify_ft_representations(ms))) << seed;
    }
}

TEST(FtRepresentations, ContainsRankAndDeterminantLaws) {
    const MomentSequence ms = fixture(2, 5, 5, 3);
    const std::vector<Check> checks = verify_ft_representations(ms);
    auto any = [&](const std::string& key) {
        return std::any_of(checks.begin(), checks.end(), [&](const Check& c) { return c.name.find(key) != std::string::npos; });
    };
    EXPECT_TRUE(any("rank"));
    EXPECT_TRUE(any("det"));
    EXPECT_TRUE(passed(checks));
}

TEST(FtRepresentations, RejectsNonMembers) {
    EXPECT_THROW(verify_ft_representations({Interval(0, 1), MatrixSequence::scalar({1, 2, 1})}), precondition_error);
    EXPECT_THROW(verify_ldu_reductions({Interval(0, 1), MatrixSequence::scalar({1, 2, 1})}), precondition_error);
    EXPECT_THROW(shift_theorem_check({Interval(0, 1), MatrixSequence::scalar({1, 2, 1})}, 1), precondition_error);
}

TEST(LduReductions, RandomFixtures) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const int kappa = 1 + seed % 7;
        EXPECT_TRUE(passed(verify_ldu_reductions(fixture(1 + seed % 3, kappa + 2, kappa, seed)))) << seed;
    }
}

TEST(LduReductions, LengthOneHasOnlyFirstBlock) {
    const std::vector<Check> checks = verify_ldu_reductions(fixture(2, 3, 1, 5));
    EXPECT_TRUE(passed(checks));
    EXPECT_FALSE(checks.empty());
}

TEST(ShiftTheorem, OrderZeroIsConsistent) {
    EXPECT_TRUE(passed(shift_theorem_check(fixture(2, 4, 4, 2), 0)));
}

TEST(ShiftTheorem, RandomMolecularOrderTwo) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const MomentSequence ms = fixture(1 + seed % 3, 4 + seed % 5, 6, seed);
        EXPECT_TRUE(passed(shift_theorem_check(ms, 2))) << seed;
    }
}

TEST(ShiftTheorem, CanonicalMomentsShiftLeft) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int kappa = 5;
        const MomentSequence ms = fixture(2, 7, kappa, seed);
        const double delta = ms.interval.delta();
        const IntervalParams p = interval_params(ms);
        const TransformTrace tr = f_transform_iter(ms, kappa);
        for (int k = 1; k <= kappa; ++k) {
            const MatrixSequence& ek = tr.params_per_stage[k].e;
            EXPECT_TRUE(close(ek[0], std::pow(delta, k - 1) * p.d[k], 1e-7)) << seed << " " << k;
            for (int j = 1; j <= kappa - k; ++j) EXPECT_TRUE(close(ek[j], p.e[k + j], 1e-7)) << seed << " " << k;
        }
    }
}

TEST(ShiftTheorem, CentralStaysCentral) {
    // Append arcsine-like midpoints: fixed first terms of a molecular sequence,
    // followed by midpoint extensions, make a sequence central of order l.
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const int l = 1 + seed % 3, kappa = 6;
        MomentSequence ms = fixture(2, 6, l - 1, seed);
        while (ms.kappa() < kappa) {
            const ExtensionInterval ext = extension_interval(ms);
            std::vector<Matrix> items = ms.seq.items();
            items.push_back(0.5 * (ext.lower + ext.upper));
            ms.seq = MatrixSequence(items);
        }
        ASSERT_TRUE(is_central(ms, l)) << seed;
        const TransformTrace tr = f_transform_iter(ms, kappa - 1);
        for (int k = 1; k < kappa; ++k) EXPECT_TRUE(is_central(tr.stages[k], std::max(1, l - k))) << seed << " " << k;
    }
}

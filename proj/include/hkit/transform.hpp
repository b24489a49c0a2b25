#pragma once

// The Hankel transform of real-line moment sequences, the interval
// F-transform with its iterates, and verifiers for the block Hankel
// representations and shift laws of the transform.

#include <string>
#include <vector>

#include "hkit/classify.hpp"

namespace hkit {

/// t_j = −s_0 r_{j+2} s_0 with r the reciprocal sequence; length κ−2.
MatrixSequence hankel_transform(const MatrixSequence& s, const Tolerance& tol = {});

/// Stages s^{(0)} = s, s^{(1)}, ..., s^{(k)}; requires 2k ≤ κ.
std::vector<MatrixSequence> hankel_transform_iter(const MatrixSequence& s, int k,
                                                  const Tolerance& tol = {});

/// t_j = −a_0 s_0^† x_j a_0 with x = b ⊛ reciprocal(modified_b(a)); length κ−1.
MomentSequence f_transform(const MomentSequence& ms, const Tolerance& tol = {});

/// One verified numerical statement.
struct Check {
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    bool passed = false;
};

struct TransformTrace {
    std::vector<MomentSequence> stages;          // stage k = k-th F-transform
    std::vector<IntervalParams> params_per_stage;
    std::vector<Check> identity_residuals;
};

/// Stages 0..k of the iterated F-transform; requires 0 ≤ k ≤ κ.
TransformTrace f_transform_iter(const MomentSequence& ms, int k, const Tolerance& tol = {});

struct VerifyOptions {
    double det_rel_tol = 1e-6;
};

/// Both factorized forms of the block Hankel matrices of the F-transform and of
/// its a-, b- and c-shifts, with rank and determinant comparisons.
/// Throws precondition_error unless ms is in Fgg.
std::vector<Check> verify_ft_representations(const MomentSequence& ms, const Tolerance& tol = {},
                                             const VerifyOptions& opt = {});

/// Sequential Schur-complement diagonals of H_n, H_{c,n−1}, H_{a,n}, H_{b,n}
/// against the δ-scaled heads of the transform iterates.
/// Throws precondition_error unless ms is in Fgg.
std::vector<Check> verify_ldu_reductions(const MomentSequence& ms, const Tolerance& tol = {});

/// Parameter shift laws for the k-th iterate: f-, e- and d-parameters of
/// stage k against the shifted parameters of ms, and d_j = δ^{1−j} s_0^{⟨j⟩}.
/// Throws precondition_error unless ms is in Fgg.
std::vector<Check> shift_theorem_check(const MomentSequence& ms, int k, const Tolerance& tol = {});
std::vector<Check> shift_theorem_check(const TransformTrace& trace, int k, const Tolerance& tol = {});

/// H_n^{(t)} = diag(s_0) S_L^† 𝕃_{n+1} S_U^† diag(s_0) = D_L (𝕃_{n+1} − Ξ) D_R for
/// the Hankel transform t and near-first-term-dominated s; needs 2n+2 ≤ κ.
std::vector<Check> verify_hankel_transform_factorization(const MatrixSequence& s, int n,
                                                         const Tolerance& tol = {});

bool all_passed(const std::vector<Check>& checks);

}  // namespace hkit

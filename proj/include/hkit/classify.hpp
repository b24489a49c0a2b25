#pragma once

// Membership tests for the nonnegative-definite sequence classes and the
// extraction of interval parameters and canonical moments.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hkit/blockmat.hpp"

namespace hkit {

struct Witness {
    std::string matrix;     // e.g. "H_2" or "H_c,1"
    double min_eig = 0.0;   // smallest eigenvalue of the Hermitian part
    double rel_slack = 0.0; // min_eig / ‖H‖_F (0 for the zero matrix)
    bool hermitian = true;
    bool psd = true;
    bool borderline = false;  // accepted, but min_eig < 0
};

struct ClassReport {
    bool in_Hgg = false;
    bool in_Kgg = false;
    bool in_Lgg = false;
    bool in_Fgg = false;
    bool in_Fg = false;
    std::map<std::string, std::vector<Witness>> witnesses;  // keyed by class name
};

ClassReport classify(const MomentSequence& ms, const Tolerance& tol = {});

/// Shorthand for classify(ms).in_Fgg.
bool in_Fgg(const MomentSequence& ms, const Tolerance& tol = {});

struct IntervalParams {
    MatrixSequence u;  // left endpoints u_0..u_κ
    MatrixSequence o;  // right endpoints o_0..o_κ
    MatrixSequence m;  // midpoints (u_j + o_j)/2
    MatrixSequence d;  // distances o_j − u_j
    MatrixSequence A;  // A_0..A_κ
    MatrixSequence B;  // B_1..B_κ stored from position 0; empty when κ = 0
    MatrixSequence f;  // f_0..f_{2κ}
    MatrixSequence e;  // canonical moments e_0..e_κ

    bool e_reliable = true;  // false when the input is not in Fgg
    /// First j ≥ 1 for which d_{j−1} is negligible and e_j was set to 0.
    std::optional<int> degenerate_tail_from;

    /// B_j for 1 ≤ j ≤ κ.
    const Matrix& Bj(int j) const;
};

/// Endpoints u_κ, o_κ of the one-step extension interval.
struct ExtensionInterval {
    Matrix lower;
    Matrix upper;
};

/// Throws precondition_error if ms is not in Fgg.
ExtensionInterval extension_interval(const MomentSequence& ms, const Tolerance& tol = {});

IntervalParams interval_params(const MomentSequence& ms, const Tolerance& tol = {});

/// 𝔥_{2k} = s_{2k} − Θ_k and 𝔥_{2k+1} = s_{2k+1} − Λ_k.
MatrixSequence h_params(const MatrixSequence& s, const Tolerance& tol = {});

/// Flags the distances that count as zero. d_0 is zero when its norm is below
/// eq_rel_tol. For j ≥ 1, d_j is zero when d_{j−1} is, or when
/// ‖d_j‖ ≤ eq_rel_tol·(η/4)·‖d_{j−1}‖; the factor η/4 bounds the one-step
/// contraction, so the test compares d_j with its own natural scale.
std::vector<bool> negligible_distances(const std::vector<Matrix>& d, double eta, const Tolerance& tol);

/// Rebuilds the companion distances d_k from e and checks 0 ⪯ e_k ⪯ P_{ran d_{k−1}}.
/// Throws std::invalid_argument when eta ≤ 0.
bool in_E_class(const MatrixSequence& e, double eta, const Tolerance& tol = {});

/// Distances implied by e through the same recursion used in in_E_class.
MatrixSequence e_class_distances(const MatrixSequence& e, double eta, const Tolerance& tol = {});

/// d_k ≈ 0 for 0 ≤ k ≤ κ; throws std::out_of_range otherwise.
bool is_completely_degenerate(const MomentSequence& ms, int k, const Tolerance& tol = {});

struct CentralityReport {
    bool central = false;      // s_j = m_{j−1} for j = k..κ
    bool e_criterion = false;  // e_j = ½ P_{ran d_{j−1}} for j = k..κ
    bool agree() const { return central == e_criterion; }
};

/// Both centrality criteria for 1 ≤ k ≤ κ; throws std::out_of_range otherwise.
CentralityReport centrality_report(const MomentSequence& ms, int k, const Tolerance& tol = {});

/// The midpoint criterion of centrality_report.
bool is_central(const MomentSequence& ms, int k, const Tolerance& tol = {});

}  // namespace hkit

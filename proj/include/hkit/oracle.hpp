#pragma once

// Reference implementations and seeded generators for the test suites. The
// reference paths avoid the main library routines wherever an alternative
// exists (complete orthogonal decomposition instead of SVD, recursive
// composition enumeration instead of bitmasks, quadrature instead of
// recurrences).

#include <cstdint>

#include "hkit/measures.hpp"

namespace hkit {

struct MolecularOptions {
    bool atom_at_alpha = false;
    bool atom_at_beta = false;
    /// Probability that an individual weight is drawn with rank < q.
    double rank_deficient_prob = 0.0;
    /// Dimension of a kernel shared by every weight; > 0 makes s_0 singular.
    int common_kernel_dim = 0;
    /// Draws node ℓ from the ℓ-th of n_atoms equal cells instead of the whole interval.
    bool stratified = false;
};

/// Atoms with nodes uniform in [α,β] and weights GᴴG for complex Gaussian G.
/// Deterministic per seed.
MolecularMeasure random_molecular(int q, int n_atoms, const Interval& interval, std::uint64_t seed,
                                  const MolecularOptions& opt = {});

/// Reciprocal sequence by direct summation over compositions, pseudoinverse
/// by complete orthogonal decomposition. Throws std::length_error for κ > 14.
MatrixSequence oracle_reciprocal(const MatrixSequence& s, double rank_rel_tol = 1e-10);

/// ∫₀¹ x^j dx / (π√(x(1−x))) by Gauss-Kronrod quadrature after x = sin²θ.
/// Throws std::out_of_range unless 0 ≤ j ≤ 32.
double oracle_arcsine_moment(int j);

struct SequenceOptions {
    /// Singular values of s_0 are drawn uniformly from this range.
    double s0_min_sv = 0.5;
    double s0_max_sv = 2.0;
    /// Rank of s_0; values below q make s_0 singular.
    int s0_rank = -1;
    /// Builds s_j = s_0 X_j s_0 so the sequence is first-term dominated.
    bool first_term_dominated = false;
};

/// Random complex matrix sequence of length κ+1.
MatrixSequence random_sequence(int q, int kappa, std::uint64_t seed, const SequenceOptions& opt = {});

/// Power moments Σ x_ℓ^j A_ℓ, j = 0..kappa, of a measure on the real line.
/// Node ℓ is drawn from the ℓ-th of n_atoms equal cells of [−spread, spread]
/// and every weight is positive definite.
MatrixSequence real_line_moments(int q, int n_atoms, int kappa, std::uint64_t seed, double spread = 1.5);

/// ρ = 4·max(|α|,|β|)/(β−α). Rounding in monomial moments of order up to κ
/// perturbs the deepest interval parameters by roughly ε·ρ^{2κ}.
double moment_conditioning(const Interval& interval);

/// An interval from a fixed menu (including [0,1] and off-centre choices)
/// restricted to those with ρ^{2κ} ≤ 1e9.
Interval desk_interval(int kappa, std::uint64_t seed);

/// Hermitian PSD q×q matrix of the given rank with nonzero eigenvalues drawn
/// uniformly from [min_eig, max_eig].
Matrix random_psd(int q, int rank, std::uint64_t seed, double min_eig = 0.5, double max_eig = 2.0);

/// Random complex Gaussian matrix.
Matrix random_complex(int rows, int cols, std::uint64_t seed);

}  // namespace hkit

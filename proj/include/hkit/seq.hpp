#pragma once

// Finite matrix sequences tied to an interval [alpha, beta] and the
// sequence-level algebra built on them.

#include <vector>

#include "hkit/matcore.hpp"

namespace hkit {

struct Interval {
    double alpha = 0.0;
    double beta = 1.0;

    Interval() = default;
    /// Throws std::invalid_argument unless alpha < beta and both are finite.
    Interval(double a, double b);

    double delta() const { return beta - alpha; }
};

/// A nonempty list (s_0, ..., s_kappa) of q×q complex matrices.
class MatrixSequence {
public:
    MatrixSequence() = default;
    explicit MatrixSequence(std::vector<Matrix> items);

    static MatrixSequence zeros(int q, int kappa);
    /// Scalar sequence lifted to 1×1 matrices.
    static MatrixSequence scalar(const std::vector<cplx>& values);

    int q() const { return q_; }
    int kappa() const { return static_cast<int>(items_.size()) - 1; }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }

    const Matrix& operator[](std::size_t j) const { return items_[j]; }
    const Matrix& at(std::size_t j) const;
    const std::vector<Matrix>& items() const { return items_; }

    /// First kappa+1 terms.
    MatrixSequence truncated(int kappa) const;
    /// Terms k, k+1, ... (left shift by k).
    MatrixSequence tail(int k) const;
    MatrixSequence scaled(cplx eta) const;
    /// Right-multiplies every term by B.
    MatrixSequence times(const Matrix& B) const;
    /// Elementwise adjoint.
    MatrixSequence adjoint() const;

private:
    int q_ = 0;
    std::vector<Matrix> items_;
};

struct MomentSequence {
    Interval interval;
    MatrixSequence seq;

    int kappa() const { return seq.kappa(); }
    int q() const { return seq.q(); }
    const Matrix& operator[](std::size_t j) const { return seq[j]; }
};

/// a_j = −α s_j + s_{j+1}, j = 0..κ−1.
MatrixSequence shift_a(const MomentSequence& ms);
/// b_j = β s_j − s_{j+1}, j = 0..κ−1.
MatrixSequence shift_b(const MomentSequence& ms);
/// c_j = −αβ s_j + (α+β) s_{j+1} − s_{j+2}, j = 0..κ−2.
MatrixSequence shift_c(const MomentSequence& ms);

/// a_{j−1} with a_{−1} = s_0; length κ+1.
MatrixSequence modified_a(const MomentSequence& ms);
/// b_{j−1} with b_{−1} = −s_0; length κ+1.
MatrixSequence modified_b(const MomentSequence& ms);
/// c_{j−2} with c_{−2} = −s_0 and c_{−1} = (α+β)s_0 − s_1; length κ+1.
MatrixSequence modified_c(const MomentSequence& ms);

/// (s ⊛ t)_j = Σ_{ℓ≤j} s_ℓ t_{j−ℓ}, truncated to the shorter length.
MatrixSequence cauchy_product(const MatrixSequence& s, const MatrixSequence& t);

/// Reciprocal sequence via r_j = −s_0^† Σ_{ℓ<j} s_{j−ℓ} r_ℓ.
MatrixSequence reciprocal(const MatrixSequence& s, const Tolerance& tol = {});

/// Reciprocal sequence via r_j = −(Σ_{ℓ=1..j} r_{j−ℓ} s_ℓ) s_0^†.
MatrixSequence reciprocal_dual(const MatrixSequence& s, const Tolerance& tol = {});

inline constexpr int kClosedFormMaxKappa = 14;

/// Reciprocal sequence from the alternating sum over integer compositions.
/// Throws std::length_error when κ exceeds kClosedFormMaxKappa.
MatrixSequence reciprocal_closed(const MatrixSequence& s, const Tolerance& tol = {});

/// All compositions (ordered partitions) of j into positive parts.
std::vector<std::vector<int>> compositions(int j);

/// ran(s_j) ⊆ ran(s_0) and ker(s_0) ⊆ ker(s_j) for every j.
bool is_first_term_dominated(const MatrixSequence& s, const Tolerance& tol = {});

}  // namespace hkit

#pragma once

// Molecular matrix measures on [alpha, beta], matrix-weighted arcsine
// moments, and diagnostics of the measure-level F-transform.

#include <optional>
#include <vector>

#include "hkit/transform.hpp"

namespace hkit {

struct Atom {
    double node = 0.0;
    Matrix weight;  // Hermitian PSD q×q
};

struct MolecularMeasure {
    Interval interval;
    int q = 1;
    std::vector<Atom> atoms;  // empty means the zero measure

    /// Throws std::invalid_argument for nodes outside the interval, weights
    /// of the wrong size, or weights that are not Hermitian PSD.
    void validate(const Tolerance& tol = {}) const;
    bool is_zero() const { return atoms.empty(); }
};

/// s_j = Σ_ℓ x_ℓ^j A_ℓ for j = 0..kappa.
MomentSequence moments(const MolecularMeasure& mu, int kappa);

/// Moments of the scalar arcsine law on [0,1], j = 0..kappa (kappa ≤ 32).
/// The table is filled once from the quadrature oracle.
const std::vector<double>& arcsine_table();

/// Moments of the arcsine density on [alpha, beta] times M.
/// Throws std::invalid_argument if M is not Hermitian PSD.
MomentSequence arcsine_moments(const Interval& interval, const Matrix& M, int kappa, const Tolerance& tol = {});

struct MeasureDiagnostics {
    Matrix total_mass;
    std::vector<Matrix> stage_masses;  // σ^{⟨k⟩}([α,β]) for k = 0..max_k
    std::optional<int> molecular_order;
    std::optional<int> central_order;
    MatrixSequence canonical_moments;
    double mass_law_residual = 0.0;  // stage mass against δ^{k−1} d_k
};

/// Throws precondition_error unless ms is in Fgg; requires 0 ≤ max_k ≤ κ.
MeasureDiagnostics measure_transform_diagnostics(const MomentSequence& ms, int max_k, const Tolerance& tol = {});

/// The (k−1)-th transform equals δ^{k−2}·(arcsine moments weighted by d_{k−1}).
/// Throws precondition_error unless ms is in Fgg; requires 1 ≤ k ≤ κ.
bool centrality_oracle(const MomentSequence& ms, int k, const Tolerance& tol = {});

struct EHalfFixture {
    MatrixSequence e;
    MatrixSequence d;
    MatrixSequence f;
};

/// Closed-form parameters for e_0 = B, e_j = λ P_{ran B}, with η = β − α.
EHalfFixture example_e_half(const Interval& interval, const Matrix& B, double lambda, int kappa,
                            const Tolerance& tol = {});

}  // namespace hkit

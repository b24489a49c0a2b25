#include "hkit/measures.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "hkit/oracle.hpp"

namespace hkit {

namespace {

constexpr int kArcsineMaxKappa = 32;

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

void MolecularMeasure::validate(const Tolerance& tol) const {
    if (q < 1) throw std::invalid_argument("MolecularMeasure: q must be positive");
    for (const Atom& at : atoms) {
        if (!std::isfinite(at.node) || at.node < interval.alpha || at.node > interval.beta)
            throw std::invalid_argument("MolecularMeasure: node outside [alpha, beta]");
        if (at.weight.rows() != q || at.weight.cols() != q)
            throw std::invalid_argument("MolecularMeasure: weight has wrong size");
        require_finite(at.weight, "atom weight");
        if (!is_psd(at.weight, tol)) throw std::invalid_argument("MolecularMeasure: weight is not Hermitian PSD");
    }
}

MomentSequence moments(const MolecularMeasure& mu, int kappa) {
    if (kappa < 0) throw std::invalid_argument("moments: kappa must be nonnegative");
    mu.validate();
    std::vector<Matrix> s(kappa + 1, zeros(mu.q, mu.q));
    for (const Atom& at : mu.atoms) {
        double p = 1.0;
        for (int j = 0; j <= kappa; ++j) {
            s[j] += p * at.weight;
            p *= at.node;
        }
    }
    return MomentSequence{mu.interval, MatrixSequence(std::move(s))};
}

const std::vector<double>& arcsine_table() {
    static std::vector<double> table;
    static std::once_flag once;
    std::call_once(once, [] {
        std::vector<double> m;
        for (int j = 0; j <= kArcsineMaxKappa; ++j) m.push_back(oracle_arcsine_moment(j));
        for (int j = 0; j < kArcsineMaxKappa; ++j) {
            const double ratio = m[j + 1] / m[j];
            const double expected = (2.0 * j + 1.0) / (2.0 * j + 2.0);
            if (std::abs(ratio - expected) > 1e-10)
                throw numerical_error("arcsine_table: quadrature violates the ratio law at j = " +
                                      std::to_string(j));
        }
        table = std::move(m);
    });
    return table;
}

MomentSequence arcsine_moments(const Interval& interval, const Matrix& M, int kappa, const Tolerance& tol) {
    if (kappa < 0 || kappa > kArcsineMaxKappa)
        throw std::out_of_range("arcsine_moments: kappa must lie in [0, 32]");
    if (M.rows() != M.cols()) throw std::invalid_argument("arcsine_moments: M must be square");
    require_finite(M, "M");
    if (!is_psd(M, tol)) throw std::invalid_argument("arcsine_moments: M is not Hermitian PSD");
    const std::vector<double>& m = arcsine_table();
    const double a = interval.alpha, dl = interval.delta();
    std::vector<Matrix> s;
    for (int j = 0; j <= kappa; ++j) {
        // ∫ (δx+α)^j dν(x) over the [0,1] arcsine law ν.
        double v = 0.0;
        for (int i = 0; i <= j; ++i) v += binomial(j, i) * std::pow(dl, i) * std::pow(a, j - i) * m[i];
        s.push_back(v * M);
    }
    return MomentSequence{interval, MatrixSequence(std::move(s))};
}

MeasureDiagnostics measure_transform_diagnostics(const MomentSequence& ms, int max_k, const Tolerance& tol) {
    if (max_k < 0 || max_k > ms.kappa())
        throw std::out_of_range("measure_transform_diagnostics: needs 0 <= max_k <= kappa");
    if (!in_Fgg(ms, tol)) throw precondition_error("measure_transform_diagnostics: sequence is not in Fgg");
    const double delta = ms.interval.delta();
    const IntervalParams par = interval_params(ms, tol);
    const TransformTrace tr = f_transform_iter(ms, max_k, tol);

    MeasureDiagnostics out;
    out.total_mass = ms[0];
    out.canonical_moments = par.e;
    const std::vector<bool> zero = negligible_distances(par.d.items(), delta, tol);
    for (int k = 0; k <= max_k; ++k) {
        const Matrix& mass = tr.stages[k][0];
        out.stage_masses.push_back(mass);
        const Matrix predicted = std::pow(delta, k - 1) * par.d[k];
        out.mass_law_residual = std::max(out.mass_law_residual, rel_diff(mass, predicted, tol.eq_rel_tol));
        if (!out.molecular_order && zero[k]) out.molecular_order = k;
    }
    for (int k = 1; k <= ms.kappa(); ++k) {
        if (is_central(ms, k, tol)) {
            out.central_order = k;
            break;
        }
    }
    return out;
}

bool centrality_oracle(const MomentSequence& ms, int k, const Tolerance& tol) {
    if (k < 1 || k > ms.kappa()) throw std::out_of_range("centrality_oracle: needs 1 <= k <= kappa");
    if (!in_Fgg(ms, tol)) throw precondition_error("centrality_oracle: sequence is not in Fgg");
    const double delta = ms.interval.delta();
    const IntervalParams par = interval_params(ms, tol);
    const TransformTrace tr = f_transform_iter(ms, k - 1, tol);
    const MomentSequence& stage = tr.stages[k - 1];
    const std::vector<bool> zero = negligible_distances(par.d.items(), delta, tol);
    Matrix weight = zeros(ms.q(), ms.q());
    if (!zero[k - 1]) {
        // d_{k−1} may carry rounding noise just below zero; its Hermitian part
        // passed the Fgg test, so project it back onto the PSD cone.
        Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(std::pow(delta, k - 2) * par.d[k - 1]));
        const RealVector lam = es.eigenvalues().cwiseMax(0.0);
        weight = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
    }
    const MomentSequence arc = arcsine_moments(ms.interval, weight, stage.kappa(), tol);
    for (int j = 0; j <= stage.kappa(); ++j)
        if (!approx_equal(stage[j], arc[j], tol)) return false;
    return true;
}

EHalfFixture example_e_half(const Interval& interval, const Matrix& B, double lambda, int kappa,
                            const Tolerance& tol) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("example_e_half: lambda must lie in (0,1)");
    if (kappa < 0) throw std::invalid_argument("example_e_half: kappa must be nonnegative");
    if (B.rows() != B.cols()) throw std::invalid_argument("example_e_half: B must be square");
    require_finite(B, "B");
    if (!is_psd(B, tol)) throw std::invalid_argument("example_e_half: B is not Hermitian PSD");
    const double eta = interval.delta();
    const int q = static_cast<int>(B.rows());
    const Matrix P = norm(B) == 0.0 ? zeros(q, q) : ortho_projector(B, tol);

    std::vector<Matrix> e{B}, d, f{B};
    for (int j = 1; j <= kappa; ++j) e.push_back(lambda * P);
    for (int j = 0; j <= kappa; ++j) d.push_back(eta * std::pow(eta * lambda * (1.0 - lambda), j) * B);
    for (int j = 1; j <= kappa; ++j) {
        f.push_back(std::pow(lambda, j - 1) * std::pow(eta * (1.0 - lambda), j) * B);
        f.push_back(std::pow(lambda * eta, j) * std::pow(1.0 - lambda, j - 1) * B);
    }
    return EHalfFixture{MatrixSequence(std::move(e)), MatrixSequence(std::move(d)), MatrixSequence(std::move(f))};
}

}  // namespace hkit

#include "hkit/oracle.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace hkit {

namespace {

Matrix gaussian(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0 / std::sqrt(2.0));
    Matrix g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g(i, j) = cplx(nd(rng), nd(rng));
    return g;
}

// Random unitary from the QR factorization of a complex Gaussian matrix.
Matrix unitary(int n, std::mt19937_64& rng) {
    Eigen::HouseholderQR<Matrix> qr(gaussian(n, n, rng));
    return qr.householderQ() * Matrix::Identity(n, n);
}

Matrix cod_pinv(const Matrix& A, double rank_rel_tol) {
    if (A.norm() == 0.0) return Matrix::Zero(A.cols(), A.rows());
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(A);
    cod.setThreshold(rank_rel_tol);
    return cod.pseudoInverse();
}

// Weight GᴴG of rank r whose range lies in the span of `range_basis`.
Matrix random_weight(int r, const Matrix& range_basis, std::mt19937_64& rng) {
    const int dim = static_cast<int>(range_basis.cols());
    const Matrix G = gaussian(r, dim, rng) * range_basis.adjoint();
    const Matrix W = G.adjoint() * G;
    return (W + W.adjoint()) * 0.5;
}

}  // namespace

Matrix random_complex(int rows, int cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return gaussian(rows, cols, rng);
}

Matrix random_psd(int q, int rank, std::uint64_t seed, double min_eig, double max_eig) {
    if (q < 1 || rank < 0 || rank > q) throw std::invalid_argument("random_psd: needs 0 <= rank <= q");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ev(min_eig, max_eig);
    const Matrix U = unitary(q, rng);
    Matrix D = Matrix::Zero(q, q);
    for (int i = 0; i < rank; ++i) D(i, i) = ev(rng);
    const Matrix W = U * D * U.adjoint();
    return (W + W.adjoint()) * 0.5;
}

MolecularMeasure random_molecular(int q, int n_atoms, const Interval& interval, std::uint64_t seed,
                                  const MolecularOptions& opt) {
    if (q < 1 || n_atoms < 0) throw std::invalid_argument("random_molecular: needs q >= 1 and n_atoms >= 0");
    if (opt.common_kernel_dim < 0 || opt.common_kernel_dim >= q)
        throw std::invalid_argument("random_molecular: common_kernel_dim must lie in [0, q)");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> node(interval.alpha, interval.beta);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const int dim = q - opt.common_kernel_dim;
    const Matrix basis = unitary(q, rng).leftCols(dim);

    MolecularMeasure mu;
    mu.interval = interval;
    mu.q = q;
    std::uniform_real_distribution<double> jitter(0.2, 0.8);
    const double cell = interval.delta() / std::max(n_atoms, 1);
    for (int l = 0; l < n_atoms; ++l) {
        double x = opt.stratified ? interval.alpha + cell * (l + jitter(rng)) : node(rng);
        if (l == 0 && opt.atom_at_alpha) x = interval.alpha;
        if (l == (opt.atom_at_alpha ? 1 : 0) && opt.atom_at_beta) x = interval.beta;
        int r = dim;
        if (dim > 1 && coin(rng) < opt.rank_deficient_prob)
            r = std::uniform_int_distribution<int>(1, dim - 1)(rng);
        mu.atoms.push_back(Atom{x, random_weight(r, basis, rng)});
    }
    return mu;
}

MatrixSequence oracle_reciprocal(const MatrixSequence& s, double rank_rel_tol) {
    if (s.kappa() > 14) throw std::length_error("oracle_reciprocal: kappa exceeds 14");
    const Matrix s0p = cod_pinv(s[0], rank_rel_tol);
    std::vector<Matrix> out{s0p};
    for (int j = 1; j <= s.kappa(); ++j) {
        Matrix acc = Matrix::Zero(s.q(), s.q());
        // Depth-first walk over compositions of j: `prefix` is the product
        // s_0^† s_{k_1} s_0^† ... s_{k_m} s_0^† for the parts chosen so far.
        std::function<void(int, const Matrix&, int)> walk = [&](int remaining, const Matrix& prefix, int parts) {
            if (remaining == 0) {
                acc += (parts % 2 ? -1.0 : 1.0) * prefix;
                return;
            }
            for (int k = 1; k <= remaining; ++k) walk(remaining - k, prefix * s[k] * s0p, parts + 1);
        };
        walk(j, s0p, 0);
        out.push_back(acc);
    }
    return MatrixSequence(std::move(out));
}

double oracle_arcsine_moment(int j) {
    if (j < 0 || j > 32) throw std::out_of_range("oracle_arcsine_moment: j must lie in [0, 32]");
    // With x = sin²θ the density dx/(π√(x(1−x))) becomes (2/π) dθ on [0, π/2].
    auto integrand = [j](double th) { return 2.0 / std::numbers::pi * std::pow(std::sin(th), 2 * j); };
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, 0.0, std::numbers::pi / 2.0, 15, 1e-15, &err);
    if (err > 1e-12) throw numerical_error("oracle_arcsine_moment: quadrature error estimate above 1e-12");
    return v;
}

MatrixSequence random_sequence(int q, int kappa, std::uint64_t seed, const SequenceOptions& opt) {
    if (q < 1 || kappa < 0) throw std::invalid_argument("random_sequence: needs q >= 1 and kappa >= 0");
    std::mt19937_64 rng(seed);
    const int r = opt.s0_rank < 0 ? q : opt.s0_rank;
    if (r > q) throw std::invalid_argument("random_sequence: s0_rank exceeds q");
    std::uniform_real_distribution<double> sv(opt.s0_min_sv, opt.s0_max_sv);
    const Matrix U = unitary(q, rng), V = unitary(q, rng);
    Matrix S = Matrix::Zero(q, q);
    for (int i = 0; i < r; ++i) S(i, i) = sv(rng);
    const Matrix s0 = U * S * V.adjoint();

    std::vector<Matrix> items{s0};
    for (int j = 1; j <= kappa; ++j) {
        if (opt.first_term_dominated) items.push_back(s0 * gaussian(q, q, rng) * s0 * 0.5);
        else items.push_back(gaussian(q, q, rng));
    }
    return MatrixSequence(std::move(items));
}

double moment_conditioning(const Interval& interval) {
    return 4.0 * std::max(std::abs(interval.alpha), std::abs(interval.beta)) / interval.delta();
}

Interval desk_interval(int kappa, std::uint64_t seed) {
    static const Interval menu[] = {{0.0, 1.0},  {-1.0, 1.0}, {-1.0, 1.5}, {-0.5, 1.0},
                                    {-2.0, 1.0}, {1.0, 3.0},  {-0.3, 0.4}, {-1.5, 1.5}};
    std::vector<Interval> ok;
    for (const Interval& I : menu)
        if (2.0 * kappa * std::log10(moment_conditioning(I)) <= 9.0) ok.push_back(I);
    std::mt19937_64 rng(seed);
    return ok[std::uniform_int_distribution<std::size_t>(0, ok.size() - 1)(rng)];
}

MatrixSequence real_line_moments(int q, int n_atoms, int kappa, std::uint64_t seed, double spread) {
    if (q < 1 || n_atoms < 0 || kappa < 0) throw std::invalid_argument("real_line_moments: bad sizes");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(0.2, 0.8);
    std::vector<Matrix> s(kappa + 1, Matrix::Zero(q, q));
    // One node per equal-width cell of [−spread, spread] keeps the nodes apart.
    const double cell = 2.0 * spread / std::max(n_atoms, 1);
    for (int l = 0; l < n_atoms; ++l) {
        const double x = -spread + cell * (l + jitter(rng));
        const Matrix G = gaussian(q, q, rng);
        const Matrix W = G.adjoint() * G / static_cast<double>(q) + 0.1 * Matrix::Identity(q, q);
        for (int j = 0; j <= kappa; ++j) s[j] += std::pow(x, j) * W;
    }
    return MatrixSequence(std::move(s));
}

}  // namespace hkit

#include "hkit/classify.hpp"

#include <cmath>
#include <stdexcept>

namespace hkit {

namespace {

Witness witness_of(const std::string& name, const Matrix& H, const Tolerance& tol) {
    Witness w;
    w.matrix = name;
    w.hermitian = is_hermitian(H, tol);
    w.min_eig = min_eigenvalue(H);
    const double n = norm(H);
    w.rel_slack = n > 0.0 ? w.min_eig / n : 0.0;
    w.psd = is_psd(H, tol);
    w.borderline = w.psd && w.min_eig < 0.0;
    return w;
}

std::string hname(const std::string& sub, int n) {
    return sub.empty() ? "H_" + std::to_string(n) : "H_" + sub + "," + std::to_string(n);
}

}  // namespace

ClassReport classify(const MomentSequence& ms, const Tolerance& tol) {
    const MatrixSequence& s = ms.seq;
    const int kappa = ms.kappa();
    ClassReport rep;

    struct Item {
        std::string name;
        Matrix H;
    };
    auto H_of = [&](const MatrixSequence& x, const char* sub, int n) {
        return Item{hname(sub, n), hankel_H(x, n).data};
    };

    std::vector<Item> hgg, kgg, lgg, fgg;
    bool extra_hermitian = true;
    if (kappa == 0) {
        Item it{"H_0", s[0]};
        hgg = kgg = lgg = fgg = {it};
    } else if (kappa % 2 == 0) {
        const int n = kappa / 2;
        const Item Hn = H_of(s, "", n);
        hgg = {Hn};
        kgg = {Hn, H_of(shift_a(ms), "a", n - 1)};
        lgg = {Hn, H_of(shift_b(ms), "b", n - 1)};
        fgg = {Hn, H_of(shift_c(ms), "c", n - 1)};
    } else {
        const int n = (kappa - 1) / 2;
        const Item Hn = H_of(s, "", n);
        const Item Ha = H_of(shift_a(ms), "a", n);
        const Item Hb = H_of(shift_b(ms), "b", n);
        hgg = {Hn};
        extra_hermitian = is_hermitian(s[kappa], tol);
        kgg = {Hn, Ha};
        lgg = {Hn, Hb};
        fgg = {Ha, Hb};
    }

    auto eval = [&](const std::string& cls, const std::vector<Item>& items, bool* pd) {
        bool all = true;
        bool all_pd = true;
        for (const Item& it : items) {
            Witness w = witness_of(it.name, it.H, tol);
            all = all && w.psd;
            if (pd) all_pd = all_pd && is_pd(it.H, tol);
            rep.witnesses[cls].push_back(std::move(w));
        }
        if (pd) *pd = all_pd;
        return all;
    };

    rep.in_Hgg = eval("Hgg", hgg, nullptr) && extra_hermitian;
    rep.in_Kgg = eval("Kgg", kgg, nullptr);
    rep.in_Lgg = eval("Lgg", lgg, nullptr);
    bool fg = false;
    rep.in_Fgg = eval("Fgg", fgg, &fg);
    rep.in_Fg = rep.in_Fgg && fg;
    return rep;
}

bool in_Fgg(const MomentSequence& ms, const Tolerance& tol) { return classify(ms, tol).in_Fgg; }

const Matrix& IntervalParams::Bj(int j) const {
    if (j < 1 || j > static_cast<int>(B.size())) throw std::out_of_range("B_j is defined for 1 <= j <= kappa");
    return B[static_cast<std::size_t>(j - 1)];
}

namespace {

struct Endpoints {
    std::vector<Matrix> u, o;
};

Endpoints endpoints(const MomentSequence& ms, const Tolerance& tol) {
    const MatrixSequence& s = ms.seq;
    const int kappa = ms.kappa();
    const double al = ms.interval.alpha, be = ms.interval.beta;
    std::optional<MatrixSequence> a, b, c;
    if (kappa >= 1) a = shift_a(ms), b = shift_b(ms);
    if (kappa >= 2) c = shift_c(ms);

    Endpoints ep;
    for (int j = 0; j <= kappa; ++j) {
        const int k = j / 2;
        if (j % 2 == 0) {
            Matrix ta = k == 0 ? Matrix::Zero(s.q(), s.q()) : theta_psd(*a, k, tol);
            Matrix tb = k == 0 ? Matrix::Zero(s.q(), s.q()) : theta_psd(*b, k, tol);
            ep.u.push_back(al * s[j] + ta);
            ep.o.push_back(be * s[j] - tb);
        } else {
            Matrix tc = k == 0 ? Matrix::Zero(s.q(), s.q()) : theta_psd(*c, k, tol);
            ep.u.push_back(theta_psd(s, k + 1, tol));
            ep.o.push_back(-al * be * s[2 * k] + (al + be) * s[2 * k + 1] - tc);
        }
    }
    return ep;
}

// Lenient pinv of the PSD square root: the Hermitian part is used and
// negative eigenvalues are dropped. Only reached for non-Fgg input.
Matrix lenient_sqrt_pinv(const Matrix& A, const Tolerance& tol) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(A));
    const RealVector& ev = es.eigenvalues();
    const double cutoff = tol.rank_rel_tol * std::max(ev.cwiseAbs().maxCoeff(), 0.0);
    RealVector inv = RealVector::Zero(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > cutoff && ev(i) > 0.0) inv(i) = 1.0 / std::sqrt(ev(i));
    return es.eigenvectors() * inv.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

std::vector<bool> negligible_distances(const std::vector<Matrix>& d, double eta, const Tolerance& tol) {
    std::vector<bool> flags(d.size(), false);
    for (std::size_t j = 0; j < d.size(); ++j) {
        const double nj = norm(d[j]);
        if (j == 0) flags[j] = nj < tol.eq_rel_tol;
        else flags[j] = flags[j - 1] || nj <= tol.eq_rel_tol * (eta / 4.0) * norm(d[j - 1]);
    }
    return flags;
}

ExtensionInterval extension_interval(const MomentSequence& ms, const Tolerance& tol) {
    if (!in_Fgg(ms, tol)) throw precondition_error("extension_interval: sequence is not in Fgg");
    Endpoints ep = endpoints(ms, tol);
    return {ep.u.back(), ep.o.back()};
}

IntervalParams interval_params(const MomentSequence& ms, const Tolerance& tol) {
    const MatrixSequence& s = ms.seq;
    const int kappa = ms.kappa();
    const int q = s.q();
    const double delta = ms.interval.delta();
    Endpoints ep = endpoints(ms, tol);

    std::vector<Matrix> mid, dist, A, B, f, e;
    for (int j = 0; j <= kappa; ++j) {
        mid.push_back((ep.u[j] + ep.o[j]) * 0.5);
        dist.push_back(ep.o[j] - ep.u[j]);
    }
    A.push_back(s[0]);
    for (int j = 1; j <= kappa; ++j) {
        A.push_back(s[j] - ep.u[j - 1]);
        B.push_back(ep.o[j - 1] - s[j]);
    }
    f.push_back(A[0]);
    for (int m = 1; m <= kappa; ++m) {
        if (m % 2 == 1) {
            f.push_back(A[m]);
            f.push_back(B[m - 1]);
        } else {
            f.push_back(B[m - 1]);
            f.push_back(A[m]);
        }
    }

    IntervalParams p;
    p.e_reliable = in_Fgg(ms, tol);
    const std::vector<bool> zero_d = negligible_distances(dist, delta, tol);
    e.push_back(f[0]);
    for (int j = 1; j <= kappa; ++j) {
        const Matrix& dprev = dist[j - 1];
        if (zero_d[j - 1]) {
            if (!p.degenerate_tail_from) p.degenerate_tail_from = j;
            e.push_back(Matrix::Zero(q, q));
            continue;
        }
        Matrix R;
        if (p.e_reliable && is_psd(dprev, tol)) R = psd_sqrt_pinv(dprev, tol);
        else R = lenient_sqrt_pinv(dprev, tol), p.e_reliable = false;
        e.push_back(R * f[2 * j] * R);
    }

    p.u = MatrixSequence(ep.u);
    p.o = MatrixSequence(ep.o);
    p.m = MatrixSequence(mid);
    p.d = MatrixSequence(dist);
    p.A = MatrixSequence(A);
    if (!B.empty()) p.B = MatrixSequence(B);
    p.f = MatrixSequence(f);
    p.e = MatrixSequence(e);
    return p;
}

MatrixSequence h_params(const MatrixSequence& s, const Tolerance& tol) {
    std::vector<Matrix> h;
    for (int j = 0; j <= s.kappa(); ++j) {
        const int k = j / 2;
        if (j % 2 == 0) {
            h.push_back(s[j] - theta(s, k, tol));
        } else {
            h.push_back(s[j] - *extremal_ingredients(s, k, tol).lambda);
        }
    }
    return MatrixSequence(std::move(h));
}

namespace {

// PSD square root of the Hermitian part with negative eigenvalues clamped.
Matrix clamped_sqrt(const Matrix& A) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(A));
    const RealVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Matrix range_projector(const Matrix& dk, bool negligible, const Tolerance& tol) {
    if (negligible) return Matrix::Zero(dk.rows(), dk.cols());
    return ortho_projector(hermitian_part(dk), tol);
}

}  // namespace

MatrixSequence e_class_distances(const MatrixSequence& e, double eta, const Tolerance& tol) {
    if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
    std::vector<Matrix> d{eta * e[0]};
    for (int k = 1; k <= e.kappa(); ++k) {
        const Matrix P = range_projector(d[k - 1], negligible_distances(d, eta, tol).back(), tol);
        const Matrix rd = clamped_sqrt(d[k - 1]);
        const Matrix re = clamped_sqrt(e[k]);
        d.push_back(eta * rd * re * (P - e[k]) * re * rd);
    }
    return MatrixSequence(std::move(d));
}

bool in_E_class(const MatrixSequence& e, double eta, const Tolerance& tol) {
    const MatrixSequence dseq = e_class_distances(e, eta, tol);
    const std::vector<Matrix>& d = dseq.items();
    const std::vector<bool> zero_d = negligible_distances(d, eta, tol);
    for (int k = 0; k <= e.kappa(); ++k) {
        if (!is_psd(e[k], tol) || !is_psd(d[k], tol)) return false;
        if (k >= 1 && !loewner_leq(e[k], range_projector(d[k - 1], zero_d[k - 1], tol), tol)) return false;
    }
    return true;
}

bool is_completely_degenerate(const MomentSequence& ms, int k, const Tolerance& tol) {
    if (k < 0 || k > ms.kappa()) throw std::out_of_range("degeneracy order out of range");
    const IntervalParams p = interval_params(MomentSequence{ms.interval, ms.seq.truncated(k)}, tol);
    return negligible_distances(p.d.items(), ms.interval.delta(), tol)[k];
}

CentralityReport centrality_report(const MomentSequence& ms, int k, const Tolerance& tol) {
    if (k < 1 || k > ms.kappa()) throw std::out_of_range("centrality order out of range");
    const IntervalParams p = interval_params(ms, tol);
    CentralityReport rep;
    rep.central = true;
    rep.e_criterion = true;
    const std::vector<bool> zero_d = negligible_distances(p.d.items(), ms.interval.delta(), tol);
    for (int j = k; j <= ms.kappa(); ++j) {
        if (!approx_equal(ms[j], p.m[j - 1], tol)) rep.central = false;
        Matrix half = Matrix::Zero(ms.q(), ms.q());
        if (!zero_d[j - 1]) half = 0.5 * ortho_projector(p.d[j - 1], tol);
        if (!approx_equal(p.e[j], half, tol)) rep.e_criterion = false;
    }
    return rep;
}

bool is_central(const MomentSequence& ms, int k, const Tolerance& tol) {
    return centrality_report(ms, k, tol).central;
}

}  // namespace hkit

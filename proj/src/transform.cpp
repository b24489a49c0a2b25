#include "hkit/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hkit {

MatrixSequence hankel_transform(const MatrixSequence& s, const Tolerance& tol) {
    if (s.kappa() < 2) throw std::out_of_range("hankel_transform needs kappa >= 2");
    const MatrixSequence r = reciprocal(s, tol);
    std::vector<Matrix> t;
    for (int j = 0; j + 2 <= s.kappa(); ++j) t.push_back(-s[0] * r[j + 2] * s[0]);
    return MatrixSequence(std::move(t));
}

std::vector<MatrixSequence> hankel_transform_iter(const MatrixSequence& s, int k, const Tolerance& tol) {
    if (k < 0 || 2 * k > s.kappa()) throw std::out_of_range("hankel_transform_iter: needs 2k <= kappa");
    std::vector<MatrixSequence> stages{s};
    for (int i = 1; i <= k; ++i) stages.push_back(hankel_transform(stages.back(), tol));
    return stages;
}

MomentSequence f_transform(const MomentSequence& ms, const Tolerance& tol) {
    if (ms.kappa() < 1) throw std::out_of_range("f_transform needs kappa >= 1");
    const MatrixSequence a = shift_a(ms);
    const MatrixSequence b = shift_b(ms);
    const MatrixSequence g = modified_b(MomentSequence{ms.interval, a});
    const MatrixSequence x = cauchy_product(b, reciprocal(g, tol));
    const Matrix left = -a[0] * pinv(ms[0], tol);
    std::vector<Matrix> t;
    for (int j = 0; j < ms.kappa(); ++j) t.push_back(left * x[j] * a[0]);
    return MomentSequence{ms.interval, MatrixSequence(std::move(t))};
}

namespace {

Check residual_check(const std::string& name, const Matrix& lhs, const Matrix& rhs, int q,
                     const Tolerance& tol) {
    const Residual r = compare(name, lhs, rhs, q, tol);
    return Check{name, r.value, tol.eq_rel_tol, r.ok(tol.eq_rel_tol)};
}

// Largest elementwise relative deviation between two equally long sequences.
Check sequence_check(const std::string& name, const std::vector<Matrix>& lhs,
                     const std::vector<Matrix>& rhs, const Tolerance& tol) {
    if (lhs.size() != rhs.size()) return Check{name, INFINITY, tol.eq_rel_tol, false};
    double worst_val = 0.0;
    for (std::size_t j = 0; j < lhs.size(); ++j)
        worst_val = std::max(worst_val, rel_diff(lhs[j], rhs[j], tol.eq_rel_tol));
    return Check{name, worst_val, tol.eq_rel_tol, worst_val <= tol.eq_rel_tol};
}

// Ranks of `lhs` and of the block-diagonal factor list compared under one
// cutoff taken from the largest of the matrices involved and of `scale`, the
// size of the input data (so that rounding noise never counts as rank).
Check rank_check(const std::string& name, const Matrix& lhs, const std::vector<Matrix>& parts,
                 const Tolerance& tol, double scale) {
    double smax = std::max(scale, spectral_norm(lhs));
    for (const Matrix& m : parts) smax = std::max(smax, spectral_norm(m));
    const double cutoff = tol.rank_rel_tol * smax;
    int rr = 0;
    for (const Matrix& m : parts) rr += rank_with_cutoff(m, cutoff);
    const int rl = rank_with_cutoff(lhs, cutoff);
    return Check{name, static_cast<double>(std::abs(rl - rr)), 0.0, rl == rr};
}

// det(lhs) against factor·Π det(parts). When lhs is rank deficient only the
// singularity of both sides is required; the rank check covers the rest.
Check det_check(const std::string& name, const Matrix& lhs, double factor, const std::vector<Matrix>& parts,
                const Tolerance& tol, double det_rel_tol, double scale) {
    double smax = std::max(scale, spectral_norm(lhs));
    for (const Matrix& m : parts) smax = std::max(smax, spectral_norm(m));
    const double cutoff = tol.rank_rel_tol * smax;
    bool rhs_singular = false;
    cplx dr = factor;
    for (const Matrix& m : parts) {
        rhs_singular = rhs_singular || rank_with_cutoff(m, cutoff) < m.rows();
        dr *= det(m);
    }
    const bool lhs_singular = rank_with_cutoff(lhs, cutoff) < lhs.rows();
    if (lhs_singular || rhs_singular) {
        const bool ok = lhs_singular == rhs_singular;
        return Check{name, ok ? 0.0 : 1.0, det_rel_tol, ok};
    }
    const cplx dl = det(lhs);
    const double rel = std::abs(dl - dr) / std::max(std::abs(dl), std::abs(dr));
    return Check{name, rel, det_rel_tol, rel <= det_rel_tol};
}

// L_n = x_{2n} − Θ_n(x) for a sequence whose Hankel matrices are PSD.
Matrix psd_schur_L(const MatrixSequence& x, int n, const Tolerance& tol) {
    if (n == 0) return x[0];
    return x[2 * n] - theta_psd(x, n, tol);
}

Matrix prod(std::initializer_list<Matrix> ms) {
    auto it = ms.begin();
    Matrix acc = *it;
    for (++it; it != ms.end(); ++it) acc = acc * *it;
    return acc;
}

void require_fgg(const MomentSequence& ms, const Tolerance& tol, const char* who) {
    if (!in_Fgg(ms, tol)) throw precondition_error(std::string(who) + ": sequence is not in Fgg");
}

Check fgg_check(const std::string& name, const MomentSequence& ms, const Tolerance& tol) {
    const ClassReport rep = classify(ms, tol);
    double slack = 0.0;
    for (const Witness& w : rep.witnesses.at("Fgg")) slack = std::max(slack, -w.rel_slack);
    return Check{name, slack, tol.psd_tol, rep.in_Fgg};
}

}  // namespace

TransformTrace f_transform_iter(const MomentSequence& ms, int k, const Tolerance& tol) {
    if (k < 0 || k > ms.kappa()) throw std::out_of_range("f_transform_iter: needs 0 <= k <= kappa");
    TransformTrace tr;
    tr.stages.push_back(ms);
    for (int i = 1; i <= k; ++i) tr.stages.push_back(f_transform(tr.stages.back(), tol));
    for (std::size_t i = 0; i < tr.stages.size(); ++i) {
        const MomentSequence& st = tr.stages[i];
        tr.params_per_stage.push_back(interval_params(st, tol));
        const std::string tag = "stage_" + std::to_string(i);
        const bool len_ok = st.kappa() == ms.kappa() - static_cast<int>(i);
        tr.identity_residuals.push_back(Check{tag + "_length", len_ok ? 0.0 : 1.0, 0.0, len_ok});
        tr.identity_residuals.push_back(fgg_check(tag + "_fgg", st, tol));
    }
    return tr;
}

std::vector<Check> verify_ft_representations(const MomentSequence& ms, const Tolerance& tol,
                                             const VerifyOptions& opt) {
    require_fgg(ms, tol, "verify_ft_representations");
    std::vector<Check> out;
    const int kappa = ms.kappa();
    if (kappa < 1) return out;
    const int q = ms.q();
    const double delta = ms.interval.delta();
    const double beta = ms.interval.beta;
    const MatrixSequence& s = ms.seq;
    const MatrixSequence a = shift_a(ms), b = shift_b(ms);
    const MomentSequence t = f_transform(ms, tol);
    const IntervalParams par = interval_params(ms, tol);
    const Matrix& d1 = par.d[1];
    double scale = 0.0;
    for (const Matrix& x : s.items()) scale = std::max(scale, spectral_norm(x));

    for (int n = 0; 2 * n + 1 <= kappa; ++n) {
        const std::string sfx = "[n=" + std::to_string(n) + "]";
        const Matrix SLa = pinv(toeplitz_lower(a, n).data, tol);
        const Matrix SUa = pinv(toeplitz_upper(a, n).data, tol);
        const Matrix Da = block_diag(a[0], n).data;
        const Matrix R = resolvent_R(q, n, beta).data;

        if (n >= 1) {
            // Hankel matrix of the transform itself.
            const Matrix Ht = hankel_H(t.seq, n).data;
            const Matrix LLb = schur_LL(b, n, tol);
            const Matrix b0p = pinv(b[0], tol);
            const Matrix E = lower_embed(q, 1, n);
            const Matrix inner = block_col(b, 0, n).data * b0p * d1 * b0p * block_row(b, 0, n).data +
                                 delta * E * LLb * E.adjoint();
            out.push_back(residual_check("transform_hankel_pinv_form" + sfx, Ht,
                                         prod({R, Da, SLa, inner, SUa, Da, R.adjoint()}), q, tol));
            const Matrix mid = direct_sum(d1, delta * prod({d_left(b, n - 1, tol).data, LLb,
                                                            d_right(b, n - 1, tol).data}));
            out.push_back(residual_check(
                "transform_hankel_factor_form" + sfx, Ht,
                prod({R, d_left2(a, b, n, tol).data, mid, d_right2(a, b, n, tol).data, R.adjoint()}), q, tol));
            out.push_back(rank_check("transform_hankel_rank" + sfx, Ht, {d1, LLb}, tol, scale));
            out.push_back(det_check("transform_hankel_det" + sfx, Ht, std::pow(delta, n * q), {d1, LLb}, tol,
                                    opt.det_rel_tol, scale));

            // Schur complement of the transform's Hankel matrix.
            const Matrix LLt = schur_LL(t.seq, n, tol);
            const Matrix R1 = resolvent_R(q, n - 1, beta).data;
            const Matrix rhs = delta * prod({R1, d_left2(a, b, n - 1, tol).data, d_left(b, n - 1, tol).data, LLb,
                                             d_right(b, n - 1, tol).data, d_right2(a, b, n - 1, tol).data,
                                             R1.adjoint()});
            out.push_back(residual_check("transform_schur_form" + sfx, LLt, rhs, q, tol));
            out.push_back(rank_check("transform_schur_rank" + sfx, LLt, {LLb}, tol, scale));
            out.push_back(det_check("transform_schur_det" + sfx, LLt, std::pow(delta, n * q), {LLb}, tol,
                                    opt.det_rel_tol, scale));
        }

        if (2 * n + 2 <= kappa) {
            const MatrixSequence c = shift_c(ms);
            const double fac = std::pow(delta, (n + 1) * q);

            // a-shift of the transform against H_{c,n}.
            const Matrix Hu = hankel_H(shift_a(t), n).data;
            const Matrix Hc = hankel_H(c, n).data;
            out.push_back(residual_check("transform_a_shift_pinv_form" + sfx, Hu,
                                         delta * prod({R, Da, SLa, Hc, SUa, Da, R.adjoint()}), q, tol));
            out.push_back(residual_check(
                "transform_a_shift_factor_form" + sfx, Hu,
                delta * prod({R, d_left(a, n, tol).data, Hc, d_right(a, n, tol).data, R.adjoint()}), q, tol));
            out.push_back(rank_check("transform_a_shift_rank" + sfx, Hu, {Hc}, tol, scale));
            out.push_back(det_check("transform_a_shift_det" + sfx, Hu, fac, {Hc}, tol, opt.det_rel_tol, scale));

            // b-shift of the transform against 𝕃_{n+1}.
            const Matrix Hv = hankel_H(shift_b(t), n).data;
            const Matrix LL = schur_LL(s, n + 1, tol);
            out.push_back(residual_check("transform_b_shift_pinv_form" + sfx, Hv,
                                         delta * prod({Da, SLa, LL, SUa, Da}), q, tol));
            out.push_back(residual_check(
                "transform_b_shift_factor_form" + sfx, Hv,
                delta * prod({d_left2(a, s, n, tol).data, d_left(s, n, tol).data, LL, d_right(s, n, tol).data,
                              d_right2(a, s, n, tol).data}),
                q, tol));
            out.push_back(rank_check("transform_b_shift_rank" + sfx, Hv, {LL}, tol, scale));
            out.push_back(det_check("transform_b_shift_det" + sfx, Hv, fac, {LL}, tol, opt.det_rel_tol, scale));
        }

        if (2 * n + 3 <= kappa) {
            // c-shift of the transform against 𝕃_{a,n+1}.
            const double fac = std::pow(delta, (n + 1) * q);
            const Matrix Hw = hankel_H(shift_c(t), n).data;
            const Matrix LLa = schur_LL(a, n + 1, tol);
            out.push_back(residual_check("transform_c_shift_pinv_form" + sfx, Hw,
                                         delta * prod({Da, SLa, LLa, SUa, Da}), q, tol));
            out.push_back(residual_check("transform_c_shift_factor_form" + sfx, Hw,
                                         delta * prod({d_left(a, n, tol).data, LLa, d_right(a, n, tol).data}),
                                         q, tol));
            out.push_back(rank_check("transform_c_shift_rank" + sfx, Hw, {LLa}, tol, scale));
            out.push_back(det_check("transform_c_shift_det" + sfx, Hw, fac, {LLa}, tol, opt.det_rel_tol, scale));
        }
    }
    return out;
}

std::vector<Check> verify_ldu_reductions(const MomentSequence& ms, const Tolerance& tol) {
    require_fgg(ms, tol, "verify_ldu_reductions");
    std::vector<Check> out;
    const int kappa = ms.kappa();
    const double delta = ms.interval.delta();
    const TransformTrace tr = f_transform_iter(ms, kappa, tol);
    auto head_a = [&](int k) { return shift_a(tr.stages[k])[0]; };
    auto head_b = [&](int k) { return shift_b(tr.stages[k])[0]; };

    if (kappa == 0) {
        out.push_back(sequence_check("hankel_diagonal[n=0]", {psd_schur_L(ms.seq, 0, tol)}, {ms[0]}, tol));
        return out;
    }

    // Even truncations: H_n and H_{c,n−1}.
    for (int n = 1; 2 * n <= kappa; ++n) {
        const std::string sfx = "[n=" + std::to_string(n) + "]";
        std::vector<Matrix> lhs, rhs;
        for (int j = 0; j <= n; ++j) {
            lhs.push_back(psd_schur_L(ms.seq, j, tol));
            rhs.push_back(j == 0 ? ms[0] : std::pow(delta, -(2 * j - 1)) * head_b(2 * j - 1));
        }
        out.push_back(sequence_check("hankel_diagonal" + sfx, lhs, rhs, tol));
        const MatrixSequence c = shift_c(ms);
        lhs.clear(), rhs.clear();
        for (int j = 0; j <= n - 1; ++j) {
            lhs.push_back(psd_schur_L(c, j, tol));
            rhs.push_back(std::pow(delta, -(2 * j + 1)) * head_a(2 * j + 1));
        }
        out.push_back(sequence_check("c_hankel_diagonal" + sfx, lhs, rhs, tol));
    }
    // Odd truncations: H_{a,n} and H_{b,n}.
    for (int n = 0; 2 * n + 1 <= kappa; ++n) {
        const std::string sfx = "[n=" + std::to_string(n) + "]";
        const MatrixSequence a = shift_a(ms), b = shift_b(ms);
        std::vector<Matrix> la, ra, lb, rb;
        for (int j = 0; j <= n; ++j) {
            la.push_back(psd_schur_L(a, j, tol));
            ra.push_back(std::pow(delta, -2 * j) * head_a(2 * j));
            lb.push_back(psd_schur_L(b, j, tol));
            rb.push_back(std::pow(delta, -2 * j) * head_b(2 * j));
        }
        out.push_back(sequence_check("a_hankel_diagonal" + sfx, la, ra, tol));
        out.push_back(sequence_check("b_hankel_diagonal" + sfx, lb, rb, tol));
    }
    return out;
}

std::vector<Check> shift_theorem_check(const MomentSequence& ms, int k, const Tolerance& tol) {
    require_fgg(ms, tol, "shift_theorem_check");
    return shift_theorem_check(f_transform_iter(ms, k, tol), k, tol);
}

std::vector<Check> shift_theorem_check(const TransformTrace& tr, int k, const Tolerance& tol) {
    if (k < 0 || k >= static_cast<int>(tr.stages.size()))
        throw std::out_of_range("shift_theorem_check: stage not in trace");
    const MomentSequence& ms = tr.stages[0];
    const int kappa = ms.kappa();
    const double delta = ms.interval.delta();
    const IntervalParams& p0 = tr.params_per_stage[0];
    const IntervalParams& pk = tr.params_per_stage[k];
    const std::string sfx = "[k=" + std::to_string(k) + "]";
    const Matrix head = std::pow(delta, k - 1) * p0.d[k];
    std::vector<Check> out;

    std::vector<Matrix> lhs, rhs;
    lhs.push_back(pk.f[0]), rhs.push_back(head);
    for (int j = 1; j <= 2 * (kappa - k); ++j) {
        lhs.push_back(pk.f[j]);
        rhs.push_back(std::pow(delta, k) * p0.f[2 * k + j]);
    }
    out.push_back(sequence_check("stage_f_params" + sfx, lhs, rhs, tol));

    lhs.clear(), rhs.clear();
    lhs.push_back(pk.e[0]), rhs.push_back(head);
    for (int j = 1; j <= kappa - k; ++j) lhs.push_back(pk.e[j]), rhs.push_back(p0.e[k + j]);
    out.push_back(sequence_check("stage_e_params" + sfx, lhs, rhs, tol));

    lhs.clear(), rhs.clear();
    for (int j = 0; j <= kappa - k; ++j) lhs.push_back(pk.d[j]), rhs.push_back(std::pow(delta, k) * p0.d[k + j]);
    out.push_back(sequence_check("stage_d_params" + sfx, lhs, rhs, tol));

    lhs.clear(), rhs.clear();
    for (int j = 0; j <= k; ++j) {
        lhs.push_back(p0.d[j]);
        rhs.push_back(std::pow(delta, 1 - j) * tr.stages[j][0]);
    }
    out.push_back(sequence_check("distance_from_heads" + sfx, lhs, rhs, tol));

    // f_{2i+1} and f_{2i+2} read off the a- and b-shift heads of stage i.
    lhs.clear(), rhs.clear();
    for (int i = 0; i <= std::min(k, kappa - 1); ++i) {
        const MomentSequence& st = tr.stages[i];
        lhs.push_back(p0.f[2 * i + 1]), rhs.push_back(std::pow(delta, -i) * shift_a(st)[0]);
        lhs.push_back(p0.f[2 * i + 2]), rhs.push_back(std::pow(delta, -i) * shift_b(st)[0]);
    }
    out.push_back(sequence_check("f_params_from_heads" + sfx, lhs, rhs, tol));
    return out;
}

std::vector<Check> verify_hankel_transform_factorization(const MatrixSequence& s, int n, const Tolerance& tol) {
    if (n < 0 || 2 * n + 2 > s.kappa()) throw std::out_of_range("needs 2n+2 <= kappa");
    const int q = s.q();
    const MatrixSequence t = hankel_transform(s, tol);
    const Matrix Ht = hankel_H(t, n).data;
    const Matrix Ds = block_diag(s[0], n).data;
    const Matrix LL = schur_LL(s, n + 1, tol);
    const std::string sfx = "[n=" + std::to_string(n) + "]";
    std::vector<Check> out;
    out.push_back(residual_check(
        "hankel_transform_pinv_form" + sfx, Ht,
        prod({Ds, pinv(toeplitz_lower(s, n).data, tol), LL, pinv(toeplitz_upper(s, n).data, tol), Ds}), q, tol));
    const Matrix s0p = pinv(s[0], tol);
    const Matrix& sm = s[2 * n + 2];
    Matrix Xi = Matrix::Zero((n + 1) * q, (n + 1) * q);
    Xi.bottomRightCorner(q, q) = sm - s[0] * s0p * sm * s0p * s[0];
    out.push_back(residual_check("hankel_transform_factor_form" + sfx, Ht,
                                 prod({d_left(s, n, tol).data, LL - Xi, d_right(s, n, tol).data}), q, tol));
    double scale = 0.0;
    for (const Matrix& x : s.items()) scale = std::max(scale, spectral_norm(x));
    out.push_back(rank_check("hankel_transform_rank" + sfx, Ht, {LL - Xi}, tol, scale));
    return out;
}

bool all_passed(const std::vector<Check>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

}  // namespace hkit

#include "hkit/seq.hpp"

#include <cmath>
#include <stdexcept>

namespace hkit {

Interval::Interval(double a, double b) : alpha(a), beta(b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw std::invalid_argument("interval requires finite alpha < beta");
}

MatrixSequence::MatrixSequence(std::vector<Matrix> items) : items_(std::move(items)) {
    if (items_.empty()) throw std::invalid_argument("matrix sequence must be nonempty");
    q_ = static_cast<int>(items_.front().rows());
    if (q_ < 1) throw std::invalid_argument("matrix sequence items must be nonempty");
    for (const Matrix& m : items_) {
        if (m.rows() != q_ || m.cols() != q_)
            throw std::invalid_argument("matrix sequence items must be square of equal size");
        require_finite(m, "sequence item");
    }
}

MatrixSequence MatrixSequence::zeros(int q, int kappa) {
    if (q < 1 || kappa < 0) throw std::invalid_argument("zeros: bad dimensions");
    return MatrixSequence(std::vector<Matrix>(kappa + 1, Matrix::Zero(q, q)));
}

MatrixSequence MatrixSequence::scalar(const std::vector<cplx>& values) {
    std::vector<Matrix> items;
    items.reserve(values.size());
    for (cplx v : values) items.push_back(Matrix::Constant(1, 1, v));
    return MatrixSequence(std::move(items));
}

const Matrix& MatrixSequence::at(std::size_t j) const {
    if (j >= items_.size()) throw std::out_of_range("sequence index out of range");
    return items_[j];
}

MatrixSequence MatrixSequence::truncated(int kappa) const {
    if (kappa < 0 || kappa > this->kappa()) throw std::out_of_range("truncation beyond length");
    return MatrixSequence(std::vector<Matrix>(items_.begin(), items_.begin() + kappa + 1));
}

MatrixSequence MatrixSequence::tail(int k) const {
    if (k < 0 || k > kappa()) throw std::out_of_range("tail beyond length");
    return MatrixSequence(std::vector<Matrix>(items_.begin() + k, items_.end()));
}

MatrixSequence MatrixSequence::scaled(cplx eta) const {
    std::vector<Matrix> out;
    for (const Matrix& m : items_) out.push_back(eta * m);
    return MatrixSequence(std::move(out));
}

MatrixSequence MatrixSequence::times(const Matrix& B) const {
    std::vector<Matrix> out;
    for (const Matrix& m : items_) out.push_back(m * B);
    return MatrixSequence(std::move(out));
}

MatrixSequence MatrixSequence::adjoint() const {
    std::vector<Matrix> out;
    for (const Matrix& m : items_) out.push_back(m.adjoint());
    return MatrixSequence(std::move(out));
}

MatrixSequence shift_a(const MomentSequence& ms) {
    if (ms.kappa() < 1) throw std::out_of_range("shift_a needs kappa >= 1");
    const double a = ms.interval.alpha;
    std::vector<Matrix> out;
    for (int j = 0; j < ms.kappa(); ++j) out.push_back(-a * ms[j] + ms[j + 1]);
    return MatrixSequence(std::move(out));
}

MatrixSequence shift_b(const MomentSequence& ms) {
    if (ms.kappa() < 1) throw std::out_of_range("shift_b needs kappa >= 1");
    const double b = ms.interval.beta;
    std::vector<Matrix> out;
    for (int j = 0; j < ms.kappa(); ++j) out.push_back(b * ms[j] - ms[j + 1]);
    return MatrixSequence(std::move(out));
}

MatrixSequence shift_c(const MomentSequence& ms) {
    if (ms.kappa() < 2) throw std::out_of_range("shift_c needs kappa >= 2");
    const double a = ms.interval.alpha, b = ms.interval.beta;
    std::vector<Matrix> out;
    for (int j = 0; j + 1 < ms.kappa(); ++j)
        out.push_back(-a * b * ms[j] + (a + b) * ms[j + 1] - ms[j + 2]);
    return MatrixSequence(std::move(out));
}

MatrixSequence modified_a(const MomentSequence& ms) {
    std::vector<Matrix> out{ms[0]};
    if (ms.kappa() >= 1) {
        const MatrixSequence a = shift_a(ms);
        out.insert(out.end(), a.items().begin(), a.items().end());
    }
    return MatrixSequence(std::move(out));
}

MatrixSequence modified_b(const MomentSequence& ms) {
    std::vector<Matrix> out{-ms[0]};
    if (ms.kappa() >= 1) {
        const MatrixSequence b = shift_b(ms);
        out.insert(out.end(), b.items().begin(), b.items().end());
    }
    return MatrixSequence(std::move(out));
}

MatrixSequence modified_c(const MomentSequence& ms) {
    const double a = ms.interval.alpha, b = ms.interval.beta;
    std::vector<Matrix> out{-ms[0]};
    if (ms.kappa() >= 1) out.push_back((a + b) * ms[0] - ms[1]);
    if (ms.kappa() >= 2) {
        const MatrixSequence c = shift_c(ms);
        out.insert(out.end(), c.items().begin(), c.items().end());
    }
    return MatrixSequence(std::move(out));
}

MatrixSequence cauchy_product(const MatrixSequence& s, const MatrixSequence& t) {
    if (s.q() != t.q()) throw std::invalid_argument("cauchy_product: dimension mismatch");
    const int kappa = std::min(s.kappa(), t.kappa());
    std::vector<Matrix> out;
    for (int j = 0; j <= kappa; ++j) {
        Matrix acc = Matrix::Zero(s.q(), t.q());
        for (int l = 0; l <= j; ++l) acc += s[l] * t[j - l];
        out.push_back(std::move(acc));
    }
    return MatrixSequence(std::move(out));
}

MatrixSequence reciprocal(const MatrixSequence& s, const Tolerance& tol) {
    const Matrix s0p = pinv(s[0], tol);
    std::vector<Matrix> r{s0p};
    for (int j = 1; j <= s.kappa(); ++j) {
        Matrix acc = Matrix::Zero(s.q(), s.q());
        for (int l = 0; l < j; ++l) acc += s[j - l] * r[l];
        r.push_back(-s0p * acc);
    }
    return MatrixSequence(std::move(r));
}

MatrixSequence reciprocal_dual(const MatrixSequence& s, const Tolerance& tol) {
    const Matrix s0p = pinv(s[0], tol);
    std::vector<Matrix> r{s0p};
    for (int j = 1; j <= s.kappa(); ++j) {
        Matrix acc = Matrix::Zero(s.q(), s.q());
        for (int l = 1; l <= j; ++l) acc += r[j - l] * s[l];
        r.push_back(-acc * s0p);
    }
    return MatrixSequence(std::move(r));
}

std::vector<std::vector<int>> compositions(int j) {
    if (j < 1) return {};
    std::vector<std::vector<int>> out;
    // Bit i of mask set means a cut after position i+1.
    for (unsigned mask = 0; mask < (1u << (j - 1)); ++mask) {
        std::vector<int> parts;
        int run = 1;
        for (int i = 0; i < j - 1; ++i) {
            if (mask & (1u << i)) {
                parts.push_back(run);
                run = 1;
            } else {
                ++run;
            }
        }
        parts.push_back(run);
        out.push_back(std::move(parts));
    }
    return out;
}

MatrixSequence reciprocal_closed(const MatrixSequence& s, const Tolerance& tol) {
    if (s.kappa() > kClosedFormMaxKappa)
        throw std::length_error("reciprocal_closed: kappa exceeds the closed-form cap");
    const Matrix s0p = pinv(s[0], tol);
    std::vector<Matrix> t{s0p};
    for (int j = 1; j <= s.kappa(); ++j) {
        Matrix acc = Matrix::Zero(s.q(), s.q());
        for (const auto& parts : compositions(j)) {
            Matrix prod = s0p;
            for (int k : parts) prod = prod * s[k] * s0p;
            if (parts.size() % 2) acc -= prod;
            else acc += prod;
        }
        t.push_back(std::move(acc));
    }
    return MatrixSequence(std::move(t));
}

bool is_first_term_dominated(const MatrixSequence& s, const Tolerance& tol) {
    const Matrix P = ortho_projector(s[0], tol);
    const Matrix Q = pinv(s[0], tol) * s[0];
    for (const Matrix& sj : s.items()) {
        if (!approx_equal(P * sj, sj, tol) || !approx_equal(sj * Q, sj, tol)) return false;
    }
    return true;
}

}  // namespace hkit

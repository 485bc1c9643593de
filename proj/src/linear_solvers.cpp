#include "fracrom/linear_solvers.hpp"

#include "fracrom/errors.hpp"
#include "fracrom/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fracrom {

std::vector<double> TridiagonalSystem::apply(std::span<const double> x) const {
    const std::size_t n = size();
    if (x.size() != n) throw std::invalid_argument("TridiagonalSystem::apply: dimension mismatch");
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = diag[i] * x[i];
        if (i > 0) s += lower[i - 1] * x[i - 1];
        if (i + 1 < n) s += upper[i] * x[i + 1];
        y[i] = s;
    }
    return y;
}

TridiagonalSystem shifted_tridiagonal(const StiffnessMatrix& a, double shift, double scale,
                                      std::span<const double> extra) {
    if (!a.far_band().empty()) throw std::invalid_argument("shifted_tridiagonal: matrix is not tridiagonal");
    const std::size_t n = a.size();
    if (!extra.empty() && extra.size() != n) throw std::invalid_argument("shifted_tridiagonal: extra diagonal length");
    TridiagonalSystem t;
    t.diag.resize(n);
    t.lower.resize(n - 1);
    t.upper.resize(n - 1);
    const auto d = a.diagonal();
    const auto e = a.near_band();
    for (std::size_t i = 0; i < n; ++i) t.diag[i] = shift + scale * d[i] + (extra.empty() ? 0.0 : extra[i]);
    for (std::size_t i = 0; i + 1 < n; ++i) t.lower[i] = t.upper[i] = scale * e[i];
    return t;
}

std::vector<double> thomas_solve(const TridiagonalSystem& sys, std::span<const double> rhs) {
    const std::size_t n = sys.size();
    if (rhs.size() != n || sys.lower.size() + 1 != std::max<std::size_t>(n, 1) ||
        sys.upper.size() != sys.lower.size()) {
        throw std::invalid_argument("thomas_solve: dimension mismatch");
    }
    if (n == 0) return {};
    std::vector<double> c(n), x(n);
    double pivot = sys.diag[0];
    if (pivot == 0.0) throw ZeroPivotError("thomas_solve: zero pivot at row 0");
    c[0] = n > 1 ? sys.upper[0] / pivot : 0.0;
    x[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = sys.diag[i] - sys.lower[i - 1] * c[i - 1];
        if (pivot == 0.0) throw ZeroPivotError("thomas_solve: zero pivot at row " + std::to_string(i));
        c[i] = i + 1 < n ? sys.upper[i] / pivot : 0.0;
        x[i] = (rhs[i] - sys.lower[i - 1] * x[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
    return x;
}

ShiftedOperator::ShiftedOperator(const StiffnessMatrix& a, double shift, double scale,
                                 std::span<const double> extra)
    : a_(&a), shift_(shift), scale_(scale), extra_(extra) {
    if (!extra_.empty() && extra_.size() != a.size()) {
        throw std::invalid_argument("ShiftedOperator: extra diagonal length");
    }
}

void ShiftedOperator::apply(std::span<const double> x, std::span<double> y) const {
    simd::banded_apply(a_->view(), shift_, scale_, x, y);
    if (!extra_.empty()) {
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += extra_[i] * x[i];
    }
}

std::vector<double> ShiftedOperator::diagonal() const {
    const auto d = a_->diagonal();
    std::vector<double> out(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        out[i] = shift_ + scale_ * d[i] + (extra_.empty() ? 0.0 : extra_[i]);
    }
    return out;
}

JacobiPreconditioner::JacobiPreconditioner(std::span<const double> diagonal)
    : inv_diag_(diagonal.size()) {
    for (std::size_t i = 0; i < diagonal.size(); ++i) {
        if (!(diagonal[i] > 0.0)) throw std::invalid_argument("JacobiPreconditioner: non-positive diagonal");
        inv_diag_[i] = 1.0 / diagonal[i];
    }
}

void JacobiPreconditioner::apply(std::span<const double> r, std::span<double> z) const {
    simd::hadamard(inv_diag_, r, z);
}

PcgResult pcg_solve(const ShiftedOperator& op, std::span<const double> rhs,
                    const PcgOptions& options, std::span<const double> x0) {
    const std::size_t n = op.size();
    if (rhs.size() != n || (!x0.empty() && x0.size() != n)) {
        throw std::invalid_argument("pcg_solve: dimension mismatch");
    }
    if (!(options.tol > 0.0)) throw std::invalid_argument("pcg_solve: tolerance must be positive");
    const std::size_t cap = options.max_iterations ? options.max_iterations : 10 * n;

    std::unique_ptr<JacobiPreconditioner> own;
    const Preconditioner* pre = options.preconditioner;
    if (!pre) {
        own = std::make_unique<JacobiPreconditioner>(op.diagonal());
        pre = own.get();
    }

    PcgResult out;
    out.x.assign(n, 0.0);
    if (!x0.empty()) out.x.assign(x0.begin(), x0.end());
    const double bnorm = std::sqrt(simd::dot(rhs, rhs));
    if (bnorm == 0.0) {
        out.x.assign(n, 0.0);
        return out;
    }

    std::vector<double> r(n), z(n), p(n), q(n);
    auto true_residual = [&] {
        op.apply(out.x, q);
        for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - q[i];
        return std::sqrt(simd::dot(r, r));
    };

    double rnorm = true_residual();
    std::size_t it = 0;
    while (true) {
        if (rnorm <= options.tol * bnorm) {
            // The recurrence residual can drift from the true one; only stop on the latter.
            rnorm = true_residual();
            if (rnorm <= options.tol * bnorm) break;
        }
        if (it >= cap) {
            throw ConvergenceError("pcg_solve: no convergence after " + std::to_string(cap) +
                                       " iterations (relative residual " +
                                       std::to_string(rnorm / bnorm) + ")",
                                   out.x, rnorm, it);
        }
        pre->apply(r, z);
        double rz = simd::dot(r, z);
        std::copy(z.begin(), z.end(), p.begin());
        // Inner CG loop; left when the recurrence residual meets the tolerance.
        while (it < cap) {
            op.apply(p, q);
            const double pq = simd::dot(p, q);
            if (!(pq > 0.0)) {
                throw NumericalError("pcg_solve: operator is not positive definite (p'Ap = " +
                                     std::to_string(pq) + ")");
            }
            const double alpha = rz / pq;
            simd::axpy(alpha, p, out.x);
            simd::axpy(-alpha, q, r);
            ++it;
            rnorm = std::sqrt(simd::dot(r, r));
            if (rnorm <= options.tol * bnorm) break;
            pre->apply(r, z);
            const double rz_new = simd::dot(r, z);
            simd::xpby(z, rz_new / rz, p);
            rz = rz_new;
        }
    }
    out.iterations = it;
    out.relative_residual = rnorm / bnorm;
    return out;
}

}  // namespace fracrom

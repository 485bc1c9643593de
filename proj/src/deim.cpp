#include "fracrom/deim.hpp"

#include "fracrom/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracrom {
namespace {

constexpr double kSingularRcond = 1e-14;

Eigen::Index first_argmax_abs(const Eigen::VectorXd& v) {
    Eigen::Index best = 0;
    double best_val = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v(i));
        if (a > best_val) {
            best_val = a;
            best = i;
        }
    }
    return best;
}

Eigen::MatrixXd gather_rows(const Eigen::MatrixXd& m, const std::vector<std::size_t>& idx,
                            Eigen::Index cols) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), cols);
    for (std::size_t k = 0; k < idx.size(); ++k) {
        out.row(static_cast<Eigen::Index>(k)) = m.row(static_cast<Eigen::Index>(idx[k])).leftCols(cols);
    }
    return out;
}

}  // namespace

std::vector<std::size_t> deim_select(const Eigen::MatrixXd& psi) {
    const Eigen::Index s = psi.cols();
    if (s == 0 || psi.rows() < s) throw std::invalid_argument("deim_select: need 1 <= s <= N");

    std::vector<std::size_t> idx;
    idx.reserve(static_cast<std::size_t>(s));
    idx.push_back(static_cast<std::size_t>(first_argmax_abs(psi.col(0))));
    if (psi(static_cast<Eigen::Index>(idx[0]), 0) == 0.0) {
        throw SingularMatrixError("deim_select: first basis vector is zero");
    }
    for (Eigen::Index l = 1; l < s; ++l) {
        const Eigen::MatrixXd pt_psi = gather_rows(psi, idx, l);
        Eigen::VectorXd rhs(l);
        for (Eigen::Index k = 0; k < l; ++k) rhs(k) = psi(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(k)]), l);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(pt_psi);
        if (lu.rcond() < kSingularRcond) {
            throw SingularMatrixError("deim_select: interpolation matrix singular at step " +
                                      std::to_string(l + 1) + " (dependent basis columns)");
        }
        const Eigen::VectorXd c = lu.solve(rhs);
        const Eigen::VectorXd res = psi.col(l) - psi.leftCols(l) * c;
        const auto next = static_cast<std::size_t>(first_argmax_abs(res));
        if (res(static_cast<Eigen::Index>(next)) == 0.0) {
            throw SingularMatrixError("deim_select: column " + std::to_string(l + 1) +
                                      " lies in the span of the previous ones");
        }
        idx.push_back(next);
    }
    if (Eigen::PartialPivLU<Eigen::MatrixXd>(gather_rows(psi, idx, s)).rcond() < kSingularRcond) {
        throw SingularMatrixError("deim_select: P^T Psi is singular (dependent basis columns)");
    }
    return idx;
}

DeimOperator::DeimOperator(const Eigen::MatrixXd& phi, const Eigen::MatrixXd& psi,
                           std::vector<std::size_t> indices)
    : indices_(std::move(indices)), psi_(psi) {
    const auto s = static_cast<Eigen::Index>(indices_.size());
    if (phi.rows() != psi.rows()) throw std::invalid_argument("DeimOperator: Phi and Psi differ in row count");
    if (s != psi.cols() || s == 0) throw std::invalid_argument("DeimOperator: need one index per Psi column");
    std::vector<bool> seen(static_cast<std::size_t>(psi.rows()), false);
    for (auto i : indices_) {
        if (i >= static_cast<std::size_t>(psi.rows())) throw std::invalid_argument("DeimOperator: index out of range");
        if (seen[i]) throw std::invalid_argument("DeimOperator: repeated index " + std::to_string(i));
        seen[i] = true;
    }
    const Eigen::MatrixXd pt_psi = gather_rows(psi, indices_, s);
    lu_.compute(pt_psi);
    if (lu_.rcond() < kSingularRcond) throw SingularMatrixError("DeimOperator: P^T Psi is singular");
    // Q = Phi^T Psi (P^T Psi)^{-1}  <=>  Q^T = (P^T Psi)^{-T} Psi^T Phi
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu_t(pt_psi.transpose());
    projector_ = lu_t.solve(psi.transpose() * phi).transpose();
    phi_rows_ = gather_rows(phi, indices_, phi.cols());
}

Eigen::VectorXd DeimOperator::project(std::span<const double> values) const {
    if (values.size() != points()) throw std::invalid_argument("DeimOperator::project: expected " +
                                                               std::to_string(points()) + " values");
    return projector_ * Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Eigen::VectorXd DeimOperator::reconstruct(std::span<const double> values) const {
    if (values.size() != points()) throw std::invalid_argument("DeimOperator::reconstruct: count mismatch");
    const Eigen::VectorXd c =
        lu_.solve(Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())));
    return psi_ * c;
}

DeimOperator build_deim_operator(const ReducedBasis& phi, const ReducedBasis& psi,
                                 std::vector<std::size_t> indices) {
    return DeimOperator(phi.vectors, psi.vectors, std::move(indices));
}

Eigen::VectorXd apply_deim(const DeimOperator& op, const DeimEvaluator& evaluate) {
    const auto values = evaluate(op.indices());
    if (values.size() != op.points()) {
        throw std::invalid_argument("apply_deim: evaluator returned " + std::to_string(values.size()) +
                                    " values, expected " + std::to_string(op.points()));
    }
    return op.project(values);
}

}  // namespace fracrom

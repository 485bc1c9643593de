#pragma once

#include "fracrom/pod.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fracrom {

/// Greedy DEIM point selection. Returns 0-based row indices, one per column
/// of psi; argmax ties go to the lowest index. Throws SingularMatrixError when
/// a column is (numerically) dependent on its predecessors.
std::vector<std::size_t> deim_select(const Eigen::MatrixXd& psi);

/// Hyper-reduction of a pointwise nonlinear term:
///   Phi^T F  ~  Q F(p),   Q = Phi^T Psi (P^T Psi)^{-1}.
class DeimOperator {
public:
    DeimOperator(const Eigen::MatrixXd& phi, const Eigen::MatrixXd& psi,
                 std::vector<std::size_t> indices);

    std::size_t points() const noexcept { return indices_.size(); }
    std::size_t reduced_dim() const noexcept { return static_cast<std::size_t>(projector_.rows()); }
    std::size_t full_dim() const noexcept { return static_cast<std::size_t>(psi_.rows()); }

    const std::vector<std::size_t>& indices() const noexcept { return indices_; }
    const Eigen::MatrixXd& psi() const noexcept { return psi_; }
    /// Q (r x s).
    const Eigen::MatrixXd& projector() const noexcept { return projector_; }
    /// P^T Phi (s x r): the basis rows at the selected points.
    const Eigen::MatrixXd& phi_rows() const noexcept { return phi_rows_; }

    /// Q * values.
    Eigen::VectorXd project(std::span<const double> values) const;
    /// Psi (P^T Psi)^{-1} values: the full-length interpolant.
    Eigen::VectorXd reconstruct(std::span<const double> values) const;

private:
    std::vector<std::size_t> indices_;
    Eigen::MatrixXd psi_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
    Eigen::MatrixXd projector_;
    Eigen::MatrixXd phi_rows_;
};

DeimOperator build_deim_operator(const ReducedBasis& phi, const ReducedBasis& psi,
                                 std::vector<std::size_t> indices);

/// Evaluates F at the selected points only; must return one value per index,
/// in index order.
using DeimEvaluator = std::function<std::vector<double>(std::span<const std::size_t> indices)>;

/// Q * F(p). Throws std::invalid_argument on a count mismatch.
Eigen::VectorXd apply_deim(const DeimOperator& op, const DeimEvaluator& evaluate);

}  // namespace fracrom

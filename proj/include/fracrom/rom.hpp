#pragma once

#include "fracrom/deim.hpp"
#include "fracrom/fom.hpp"
#include "fracrom/pod.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace fracrom {

/// Offline part of the reduced model. Independent of beta: gamma and the L1
/// weights are applied per query.
struct RomOperators {
    std::shared_ptr<const Eigen::MatrixXd> phi;  ///< N x r
    Eigen::MatrixXd reduced_stiffness;           ///< Phi^T A Phi
    std::optional<DeimOperator> deim;

    std::size_t dim() const noexcept { return static_cast<std::size_t>(reduced_stiffness.rows()); }
    std::size_t full_dim() const noexcept { return static_cast<std::size_t>(phi->rows()); }
};

RomOperators build_rom(const StiffnessMatrix& a, const ReducedBasis& basis,
                       std::optional<DeimOperator> deim = std::nullopt);

class ReducedTrajectory {
public:
    ReducedTrajectory(std::shared_ptr<const Eigen::MatrixXd> phi, FractionalOrder beta,
                      StateHistory coefficients)
        : phi_(std::move(phi)), beta_(beta), coeffs_(std::move(coefficients)) {}

    FractionalOrder beta() const noexcept { return beta_; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    std::size_t dim() const noexcept { return coeffs_.dim(); }
    std::span<const double> operator[](std::size_t m) const { return coeffs_[m]; }
    const StateHistory& coefficients() const noexcept { return coeffs_; }

    /// Phi a^m. Throws std::out_of_range for m >= size().
    std::vector<double> lift(std::size_t m) const;
    std::vector<double> lift_final() const { return lift(size() - 1); }

private:
    std::shared_ptr<const Eigen::MatrixXd> phi_;
    FractionalOrder beta_;
    StateHistory coeffs_;
};

struct RomOptions {
    double newton_tol = 1e-11;
    std::size_t newton_max_iterations = 50;
    /// Evaluate Phi^T F(Phi a) on all N nodes instead of through DEIM. This
    /// is the reference path; it is also used when no DEIM operator exists.
    bool full_evaluation = false;
};

/// Counters for checking the online cost. `full_dim_ops` counts vector
/// operations of length N performed inside the time loop.
struct RomStats {
    std::size_t steps = 0;
    std::size_t newton_iterations = 0;
    std::size_t factorizations = 0;
    std::size_t pointwise_evaluations = 0;
    std::size_t full_dim_ops = 0;
};

/// (I + gamma A_r) a^m + gamma Q F(P Phi a^m) = memory(a^0..a^{m-1}),
/// a^0 = Phi^T u^0. Linear problems factor I + gamma A_r once; nonlinear ones
/// run Newton from a^{m-1}. Throws ConvergenceError at the Newton cap.
ReducedTrajectory rom_solve(const RomOperators& rom, const ProblemSpec& spec,
                            const RomOptions& options = {}, RomStats* stats = nullptr);

}  // namespace fracrom

#pragma once

#include "fracrom/fractional_kernel.hpp"
#include "fracrom/linear_solvers.hpp"
#include "fracrom/problem.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fracrom {

/// u^0 .. u^M on the interior nodes of `grid`, computed at order `beta`.
class Trajectory {
public:
    Trajectory(DiscretizationGrid grid, FractionalOrder beta, StateHistory states)
        : grid_(std::move(grid)), beta_(beta), states_(std::move(states)) {}

    const DiscretizationGrid& grid() const noexcept { return grid_; }
    FractionalOrder beta() const noexcept { return beta_; }
    std::size_t size() const noexcept { return states_.size(); }
    std::size_t dim() const noexcept { return states_.dim(); }
    std::span<const double> operator[](std::size_t m) const { return states_[m]; }
    std::span<const double> final_state() const { return states_.back(); }
    const StateHistory& states() const noexcept { return states_; }

private:
    DiscretizationGrid grid_;
    FractionalOrder beta_;
    StateHistory states_;
};

enum class LinearSolverKind { automatic, thomas, pcg };

struct NewtonRecord {
    std::size_t step;        ///< time level m
    std::size_t iteration;   ///< 0-based Newton iteration within the step
    double residual_norm;    ///< ||r|| at the iterate the step was computed from
    double step_norm;        ///< ||d||
};

struct FomOptions {
    double newton_tol = 1e-10;
    std::size_t newton_max_iterations = 50;
    /// automatic: Thomas in 1D, PCG in 2D.
    LinearSolverKind solver = LinearSolverKind::automatic;
    PcgOptions pcg{};
    std::function<void(const NewtonRecord&)> on_newton;
};

struct FomStats {
    std::size_t linear_solves = 0;
    std::size_t newton_iterations = 0;
    std::size_t pcg_iterations = 0;
};

/// Marches (I + gamma A) u^m + gamma F(u^m) = memory(u^0..u^{m-1}) for
/// m = 1..M, with F = g(u) - f(t_m). Linear problems take one solve per step;
/// nonlinear ones run Newton with Jacobian I + gamma A + gamma diag(g'(u)),
/// starting from u^{m-1}. Throws ConvergenceError if Newton hits its cap.
Trajectory fom_solve(const ProblemSpec& spec, const FomOptions& options = {},
                     FomStats* stats = nullptr);
Trajectory fom_solve(const ProblemSpec& spec, const StiffnessMatrix& a,
                     const FomOptions& options = {}, FomStats* stats = nullptr);

/// sqrt(sum_i w |u_i - v_i|^2) with w = h^d.
double discrete_l2_error(std::span<const double> u, std::span<const double> v, double h,
                         int dimension = 1);
double discrete_l2_error(std::span<const double> u, std::span<const double> v,
                         const DiscretizationGrid& grid);

}  // namespace fracrom

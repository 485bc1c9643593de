#include "fracrom/fom.hpp"

#include "fracrom/errors.hpp"
#include "fracrom/simd/kernels.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace fracrom {
namespace {

double norm2(std::span<const double> v) { return std::sqrt(simd::dot(v, v)); }

class StepSolver {
public:
    StepSolver(const StiffnessMatrix& a, double gamma, LinearSolverKind kind, const PcgOptions& pcg,
               FomStats* stats)
        : a_(a), gamma_(gamma), pcg_(pcg), stats_(stats) {
        use_thomas_ = kind == LinearSolverKind::thomas ||
                      (kind == LinearSolverKind::automatic && a.far_band().empty());
        if (use_thomas_ && !a.far_band().empty()) {
            throw std::invalid_argument("fom_solve: Thomas solver needs a tridiagonal (1D) operator");
        }
        if (use_thomas_) {
            base_ = shifted_tridiagonal(a, 1.0, gamma);
        } else if (!pcg_.preconditioner) {
            jacobi_.emplace(ShiftedOperator(a, 1.0, gamma).diagonal());
            pcg_.preconditioner = &*jacobi_;
        }
    }

    /// Solves (I + gamma A + diag(extra)) x = rhs; `guess` seeds PCG.
    std::vector<double> solve(std::span<const double> rhs, std::span<const double> extra,
                              std::span<const double> guess) {
        if (stats_) ++stats_->linear_solves;
        if (use_thomas_) {
            if (extra.empty()) return thomas_solve(base_, rhs);
            TridiagonalSystem t = base_;
            for (std::size_t i = 0; i < t.diag.size(); ++i) t.diag[i] += extra[i];
            return thomas_solve(t, rhs);
        }
        ShiftedOperator op(a_, 1.0, gamma_, extra);
        PcgOptions opts = pcg_;
        std::optional<JacobiPreconditioner> local;
        if (!extra.empty() && jacobi_ && opts.preconditioner == &*jacobi_) {
            local.emplace(op.diagonal());
            opts.preconditioner = &*local;
        }
        auto res = pcg_solve(op, rhs, opts, guess);
        if (stats_) stats_->pcg_iterations += res.iterations;
        return std::move(res.x);
    }

private:
    const StiffnessMatrix& a_;
    double gamma_;
    PcgOptions pcg_;
    FomStats* stats_;
    bool use_thomas_ = false;
    TridiagonalSystem base_;
    std::optional<JacobiPreconditioner> jacobi_;
};

}  // namespace

Trajectory fom_solve(const ProblemSpec& spec, const FomOptions& options, FomStats* stats) {
    const StiffnessMatrix a = assemble_stiffness(spec.mu, spec.grid);
    return fom_solve(spec, a, options, stats);
}

Trajectory fom_solve(const ProblemSpec& spec, const StiffnessMatrix& a, const FomOptions& options,
                     FomStats* stats) {
    const auto& grid = spec.grid;
    const std::size_t n = grid.unknowns();
    const std::size_t steps = grid.steps();
    if (a.size() != n) throw std::invalid_argument("fom_solve: stiffness size does not match grid");

    const double gamma = gamma_scale(spec.beta, grid.dt()).gamma;
    const auto weights = cached_l1_weights(spec.beta, steps);
    const auto points = grid.interior_points();

    StepSolver solver(a, gamma, options.solver, options.pcg, stats);
    StateHistory states(n, steps + 1);
    states.push_back(spec.initial_state());

    std::vector<double> hist(n), rhs(n), res(n), extra(n), ku(n);
    const std::vector<double> zero(n, 0.0);
    for (std::size_t m = 1; m <= steps; ++m) {
        const double t = grid.time(m);
        history_rhs(states, weights->prefix(m), hist);

        if (spec.linear()) {
            // F = -f, so the step reads (I + gamma A) u = hist + gamma f.
            for (std::size_t i = 0; i < n; ++i) {
                rhs[i] = hist[i] - gamma * spec.nonlinear_term(0.0, points[i], t);
            }
            auto u = solver.solve(rhs, {}, states.back());
            states.push_back(u);
            continue;
        }

        std::vector<double> u(states.back().begin(), states.back().end());
        bool converged = false;
        double rnorm = 0.0;
        for (std::size_t it = 0; it < options.newton_max_iterations; ++it) {
            a.apply(u, ku, 1.0, gamma);
            for (std::size_t i = 0; i < n; ++i) {
                res[i] = -(ku[i] + gamma * spec.nonlinear_term(u[i], points[i], t) - hist[i]);
                extra[i] = gamma * spec.nonlinear_derivative(u[i]);
            }
            rnorm = norm2(res);
            auto d = solver.solve(res, extra, zero);
            simd::axpy(1.0, d, u);
            const double dnorm = norm2(d);
            if (stats) ++stats->newton_iterations;
            if (options.on_newton) options.on_newton({m, it, rnorm, dnorm});
            if (dnorm <= options.newton_tol) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            throw ConvergenceError("fom_solve: Newton did not converge at step " + std::to_string(m) +
                                       " after " + std::to_string(options.newton_max_iterations) +
                                       " iterations",
                                   u, rnorm, options.newton_max_iterations);
        }
        states.push_back(u);
    }
    return Trajectory(grid, spec.beta, std::move(states));
}

double discrete_l2_error(std::span<const double> u, std::span<const double> v, double h,
                         int dimension) {
    if (u.size() != v.size()) throw std::invalid_argument("discrete_l2_error: dimension mismatch");
    if (!(h > 0.0) || dimension < 1) throw std::invalid_argument("discrete_l2_error: bad weight");
    return std::sqrt(std::pow(h, dimension) * simd::squared_distance(u, v));
}

double discrete_l2_error(std::span<const double> u, std::span<const double> v,
                         const DiscretizationGrid& grid) {
    if (u.size() != v.size()) throw std::invalid_argument("discrete_l2_error: dimension mismatch");
    return std::sqrt(grid.cell_volume() * simd::squared_distance(u, v));
}

}  // namespace fracrom

#include "fracrom/rom.hpp"

#include "fracrom/errors.hpp"

#include <stdexcept>
#include <string>

namespace fracrom {

RomOperators build_rom(const StiffnessMatrix& a, const ReducedBasis& basis,
                       std::optional<DeimOperator> deim) {
    if (basis.rows() != a.size()) throw std::invalid_argument("build_rom: basis rows do not match stiffness size");
    if (basis.dim() == 0) throw std::invalid_argument("build_rom: empty basis");
    if (deim && (deim->full_dim() != a.size() || deim->reduced_dim() != basis.dim())) {
        throw std::invalid_argument("build_rom: DEIM operator does not match the basis");
    }
    RomOperators rom;
    rom.phi = std::make_shared<const Eigen::MatrixXd>(basis.vectors);
    Eigen::MatrixXd ar = basis.vectors.transpose() * a.multiply(basis.vectors);
    rom.reduced_stiffness = 0.5 * (ar + ar.transpose());
    rom.deim = std::move(deim);
    return rom;
}

std::vector<double> ReducedTrajectory::lift(std::size_t m) const {
    if (m >= size()) {
        throw std::out_of_range("ReducedTrajectory::lift: level " + std::to_string(m) + " of " +
                                std::to_string(size()));
    }
    const auto a = coeffs_[m];
    std::vector<double> u(static_cast<std::size_t>(phi_->rows()));
    Eigen::Map<Eigen::VectorXd>(u.data(), phi_->rows()) =
        *phi_ * Eigen::Map<const Eigen::VectorXd>(a.data(), static_cast<Eigen::Index>(a.size()));
    return u;
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Evaluates the reduced nonlinear term and (optionally) its Jacobian.
class ReducedNonlinearity {
public:
    ReducedNonlinearity(const RomOperators& rom, const ProblemSpec& spec, bool use_deim,
                        RomStats* stats)
        : rom_(rom), spec_(spec), use_deim_(use_deim), stats_(stats) {
        if (use_deim_) {
            for (auto i : rom.deim->indices()) points_.push_back(spec.grid.interior_point(i));
        } else {
            points_ = spec.grid.interior_points();
        }
        values_.resize(static_cast<Eigen::Index>(points_.size()));
        slopes_.resize(values_.size());
    }

    /// Fills fr = reduced F at coefficients z and, if jr != nullptr, its Jacobian.
    void evaluate(const VectorXd& z, double t, VectorXd& fr, MatrixXd* jr) {
        const MatrixXd& rows = use_deim_ ? rom_.deim->phi_rows() : *rom_.phi;
        const VectorXd u = rows * z;
        for (Eigen::Index k = 0; k < u.size(); ++k) {
            values_(k) = spec_.nonlinear_term(u(k), points_[static_cast<std::size_t>(k)], t);
            if (jr) slopes_(k) = spec_.nonlinear_derivative(u(k));
        }
        if (stats_) {
            stats_->pointwise_evaluations += static_cast<std::size_t>(u.size());
            if (!use_deim_) ++stats_->full_dim_ops;
        }
        if (use_deim_) {
            fr = rom_.deim->projector() * values_;
            if (jr) *jr = rom_.deim->projector() * (slopes_.asDiagonal() * rows);
        } else {
            fr = rom_.phi->transpose() * values_;
            if (jr) *jr = rom_.phi->transpose() * (slopes_.asDiagonal() * rows);
        }
    }

private:
    const RomOperators& rom_;
    const ProblemSpec& spec_;
    bool use_deim_;
    RomStats* stats_;
    std::vector<Point> points_;
    VectorXd values_;
    VectorXd slopes_;
};

}  // namespace

ReducedTrajectory rom_solve(const RomOperators& rom, const ProblemSpec& spec,
                            const RomOptions& options, RomStats* stats) {
    const std::size_t n = rom.full_dim();
    const auto r = static_cast<Eigen::Index>(rom.dim());
    if (spec.grid.unknowns() != n) throw std::invalid_argument("rom_solve: grid does not match the basis");
    const std::size_t steps = spec.grid.steps();
    const double gamma = gamma_scale(spec.beta, spec.grid.dt()).gamma;
    const auto weights = cached_l1_weights(spec.beta, steps);
    const bool use_deim = rom.deim.has_value() && !options.full_evaluation;
    const bool has_forcing = !spec.linear() || static_cast<bool>(spec.source);

    ReducedNonlinearity nonlin(rom, spec, use_deim, stats);
    const MatrixXd k = MatrixXd::Identity(r, r) + gamma * rom.reduced_stiffness;

    StateHistory coeffs(static_cast<std::size_t>(r), steps + 1);
    {
        const auto u0 = spec.initial_state();
        const VectorXd a0 = rom.phi->transpose() * Eigen::Map<const VectorXd>(u0.data(), static_cast<Eigen::Index>(n));
        coeffs.push_back(std::span<const double>(a0.data(), static_cast<std::size_t>(r)));
    }

    std::optional<Eigen::PartialPivLU<MatrixXd>> k_lu;
    if (spec.linear()) {
        k_lu.emplace(k);
        if (stats) ++stats->factorizations;
    }

    VectorXd hist(r), fr(r), z(r), res(r);
    MatrixXd jr(r, r);
    for (std::size_t m = 1; m <= steps; ++m) {
        const double t = spec.grid.time(m);
        history_rhs(coeffs, weights->prefix(m), std::span<double>(hist.data(), static_cast<std::size_t>(r)));
        if (stats) ++stats->steps;

        if (spec.linear()) {
            VectorXd rhs = hist;
            if (has_forcing) {
                nonlin.evaluate(z.setZero(), t, fr, nullptr);
                rhs -= gamma * fr;
            }
            z = k_lu->solve(rhs);
            coeffs.push_back(std::span<const double>(z.data(), static_cast<std::size_t>(r)));
            continue;
        }

        const auto prev = coeffs.back();
        z = Eigen::Map<const VectorXd>(prev.data(), r);
        bool converged = false;
        double rnorm = 0.0;
        for (std::size_t it = 0; it < options.newton_max_iterations; ++it) {
            nonlin.evaluate(z, t, fr, &jr);
            res = k * z + gamma * fr - hist;
            rnorm = res.norm();
            const MatrixXd jac = k + gamma * jr;
            Eigen::PartialPivLU<MatrixXd> lu(jac);
            if (stats) {
                ++stats->factorizations;
                ++stats->newton_iterations;
            }
            const VectorXd d = lu.solve(-res);
            z += d;
            if (d.norm() <= options.newton_tol) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            throw ConvergenceError("rom_solve: Newton did not converge at step " + std::to_string(m),
                                   std::vector<double>(z.data(), z.data() + r), rnorm,
                                   options.newton_max_iterations);
        }
        coeffs.push_back(std::span<const double>(z.data(), static_cast<std::size_t>(r)));
    }
    return ReducedTrajectory(rom.phi, spec.beta, std::move(coeffs));
}

}  // namespace fracrom

#include "fracrom/inverse.hpp"

#include "fracrom/errors.hpp"
#include "fracrom/parallel.hpp"
#include "fracrom/simd/kernels.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace fracrom {

FomForward::FomForward(ProblemFactory factory, FomOptions options)
    : factory_(std::move(factory)),
      options_(std::move(options)),
      a_([this] {
          const auto spec = factory_(FractionalOrder(0.5));
          return assemble_stiffness(spec.mu, spec.grid);
      }()) {}

std::vector<double> FomForward::final_state(FractionalOrder beta) const {
    count_solve();
    const auto traj = fom_solve(factory_(beta), a_, options_);
    const auto u = traj.final_state();
    return {u.begin(), u.end()};
}

RomForward::RomForward(ProblemFactory factory, RomOperators rom, RomOptions options)
    : factory_(std::move(factory)), rom_(std::move(rom)), options_(options) {}

std::vector<double> RomForward::final_state(FractionalOrder beta) const {
    count_solve();
    return rom_solve(rom_, factory_(beta), options_).lift_final();
}

ObservationData add_noise(std::span<const double> g, double epsilon_percent, std::uint64_t seed) {
    if (!(epsilon_percent >= 0.0)) throw std::invalid_argument("add_noise: noise level must be >= 0");
    ObservationData out{{g.begin(), g.end()}, epsilon_percent, seed};
    if (epsilon_percent == 0.0) return out;

    // Box-Muller on top of mt19937_64: both are fully specified, unlike
    // std::normal_distribution, so the draws are identical everywhere.
    std::mt19937_64 rng(seed);
    auto uniform = [&rng] { return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53; };  // (0, 1]
    const double scale = epsilon_percent / 100.0;
    for (std::size_t i = 0; i < out.g.size(); i += 2) {
        const double radius = std::sqrt(-2.0 * std::log(uniform()));
        const double angle = 2.0 * std::numbers::pi * uniform();
        out.g[i] *= 1.0 + scale * radius * std::cos(angle);
        if (i + 1 < out.g.size()) out.g[i + 1] *= 1.0 + scale * radius * std::sin(angle);
    }
    return out;
}

double objective(std::span<const double> u, const ObservationData& data) {
    if (u.size() != data.g.size()) {
        throw std::invalid_argument("objective: model output has " + std::to_string(u.size()) +
                                    " values, data has " + std::to_string(data.g.size()));
    }
    return 0.5 * simd::squared_distance(u, data.g);
}

double objective(FractionalOrder beta, const ObservationData& data, const ForwardModel& forward) {
    return objective(forward.final_state(beta), data);
}

namespace {

Sensitivity sensitivity_impl(FractionalOrder beta, const ObservationData& data,
                             const ForwardModel& forward, double delta,
                             const std::vector<double>* known_u) {
    if (!(delta > 0.0)) throw std::invalid_argument("sensitivity: delta must be positive");
    const double b = beta.value();
    double shifted = b + delta;
    if (shifted >= 1.0) {
        shifted = b - delta;
        if (shifted <= 0.0) throw std::invalid_argument("sensitivity: delta too large for beta in (0, 1)");
    }

    Sensitivity s;
    s.increment = shifted - b;
    std::vector<double> u_shift;
    if (known_u) {
        s.u = *known_u;
        u_shift = forward.final_state(FractionalOrder(shifted));
    } else {
        parallel_for(
            2,
            [&](std::size_t k) {
                if (k == 0) s.u = forward.final_state(beta);
                else u_shift = forward.final_state(FractionalOrder(shifted));
            },
            std::min(2u, thread_budget()));
    }
    const std::size_t n = s.u.size();
    if (u_shift.size() != n || data.g.size() != n) throw std::invalid_argument("sensitivity: dimension mismatch");

    s.j.resize(n);
    s.r.resize(n);
    // (u(b + delta) - u(b)) / delta, or (u(b) - u(b - delta)) / delta at the right edge.
    for (std::size_t i = 0; i < n; ++i) {
        s.j[i] = (u_shift[i] - s.u[i]) / s.increment;
        s.r[i] = s.u[i] - data.g[i];
    }
    s.objective = 0.5 * simd::dot(s.r, s.r);
    return s;
}

}  // namespace

Sensitivity sensitivity(FractionalOrder beta, const ObservationData& data,
                        const ForwardModel& forward, double delta) {
    return sensitivity_impl(beta, data, forward, delta, nullptr);
}

double lm_direction(std::span<const double> j, std::span<const double> r, double alpha) {
    if (j.size() != r.size()) throw std::invalid_argument("lm_direction: dimension mismatch");
    if (!(alpha >= 0.0)) throw std::invalid_argument("lm_direction: alpha must be >= 0");
    const double jtr = simd::dot(j, r);
    const double denom = simd::dot(j, j) + alpha;
    if (jtr == 0.0) return 0.0;
    if (!(denom > 0.0)) throw NumericalError("lm_direction: J^T J + alpha vanishes");
    return -jtr / denom;
}

ArmijoResult armijo_search(double beta, double d, double slope, double f_beta,
                           const std::function<double(double)>& objective_at, double rho,
                           double sigma, std::size_t max_backtracks) {
    ArmijoResult out;
    if (d == 0.0) {
        out.beta = beta;
        out.objective = f_beta;
        return out;
    }
    double scale = 1.0;
    for (std::size_t m = 0; m <= max_backtracks; ++m, scale *= rho) {
        const double step = scale * d;
        const double trial = beta + step;
        if (!(trial > 0.0 && trial < 1.0)) continue;  // keep the order admissible
        const double f = objective_at(trial);
        if (f <= f_beta + sigma * step * slope) {
            out.step = step;
            out.beta = trial;
            out.objective = f;
            out.backtracks = m;
            return out;
        }
    }
    out.stalled = true;
    out.beta = beta;
    out.objective = f_beta;
    out.backtracks = max_backtracks;
    return out;
}

void LmConfig::validate() const {
    if (!(beta0 > 0.0 && beta0 < 1.0)) throw std::invalid_argument("LmConfig: beta0 must lie in (0, 1)");
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("LmConfig: rho must lie in (0, 1)");
    if (!(sigma > 0.0 && sigma < 0.5)) throw std::invalid_argument("LmConfig: sigma must lie in (0, 1/2)");
    if (!(alpha0 > 0.0)) throw std::invalid_argument("LmConfig: alpha0 must be positive");
    if (!(delta > 0.0 && delta < 0.5)) throw std::invalid_argument("LmConfig: delta must lie in (0, 1/2)");
    if (!(tol > 0.0)) throw std::invalid_argument("LmConfig: tol must be positive");
    if (kmax == 0) throw std::invalid_argument("LmConfig: kmax must be positive");
}

IdentificationResult identify(const LmConfig& config, const ObservationData& data,
                              const ForwardModel& forward) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    const std::size_t solves_before = forward.solves();

    IdentificationResult res;
    double beta = config.beta0;
    double alpha = config.alpha0;

    // The line search already solved at the accepted point; reuse that state.
    std::vector<double> last_u;
    double last_beta = -1.0;
    auto objective_at = [&](double b) {
        last_u = forward.final_state(FractionalOrder(b));
        last_beta = b;
        return objective(last_u, data);
    };

    Sensitivity sens = sensitivity(FractionalOrder(beta), data, forward, config.delta);
    for (std::size_t k = 0;; ++k) {
        if (k > 0) {
            sens = last_beta == beta
                       ? sensitivity_impl(FractionalOrder(beta), data, forward, config.delta, &last_u)
                       : sensitivity(FractionalOrder(beta), data, forward, config.delta);
        }
        // One row per iterate; the step column is filled in once it is known.
        res.trace.push_back({k, beta, sens.objective, 0.0, 0});
        if (k == config.kmax) break;

        ++res.loop_passes;
        const double slope = simd::dot(sens.j, sens.r);
        const double d = lm_direction(sens.j, sens.r, config.regularized ? alpha : 0.0);
        const ArmijoResult step =
            armijo_search(beta, d, slope, sens.objective, objective_at, config.rho, config.sigma);
        res.trace.back().backtracks = step.backtracks;
        if (step.stalled) {
            res.line_search_stalled = true;
            break;
        }
        res.trace.back().step = step.step;
        if (std::abs(step.step) <= config.tol) {
            res.converged = true;
            res.final_step = step.step;
            break;
        }
        if (step.objective > sens.objective) {
            throw NumericalError("identify: accepted step increased the objective");
        }
        beta = step.beta;
        alpha /= 2.0;
        ++res.iterations;
    }

    res.beta_inv = beta;
    res.forward_solves = forward.solves() - solves_before;
    res.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

}  // namespace fracrom

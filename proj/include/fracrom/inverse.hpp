#pragma once

// Recovery of the fractional order from final-time data:
//   minimise F(beta) = 1/2 sum_i (u(x_i, T; beta) - g_i)^2
// by Levenberg-Marquardt steps with finite-difference sensitivities and an
// Armijo line search.

#include "fracrom/fom.hpp"
#include "fracrom/offline.hpp"
#include "fracrom/rom.hpp"

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fracrom {

/// Final-time map beta -> u(., T; beta) on the interior nodes.
class ForwardModel {
public:
    virtual ~ForwardModel() = default;
    virtual std::vector<double> final_state(FractionalOrder beta) const = 0;
    virtual std::size_t dim() const = 0;
    virtual std::string name() const = 0;

    /// Number of final_state calls so far (thread-safe).
    std::size_t solves() const noexcept { return solves_.load(); }

protected:
    void count_solve() const noexcept { solves_.fetch_add(1); }

private:
    mutable std::atomic<std::size_t> solves_{0};
};

class FomForward final : public ForwardModel {
public:
    FomForward(ProblemFactory factory, FomOptions options = {});
    std::vector<double> final_state(FractionalOrder beta) const override;
    std::size_t dim() const override { return a_.size(); }
    std::string name() const override { return "fom"; }

private:
    ProblemFactory factory_;
    FomOptions options_;
    StiffnessMatrix a_;
};

class RomForward final : public ForwardModel {
public:
    RomForward(ProblemFactory factory, RomOperators rom, RomOptions options = {});
    std::vector<double> final_state(FractionalOrder beta) const override;
    std::size_t dim() const override { return rom_.full_dim(); }
    std::string name() const override { return "rom"; }
    const RomOperators& operators() const noexcept { return rom_; }

private:
    ProblemFactory factory_;
    RomOperators rom_;
    RomOptions options_;
};

/// Wraps a plain function; handy for synthetic maps in tests.
class FunctionForward final : public ForwardModel {
public:
    FunctionForward(std::function<std::vector<double>(double)> fn, std::size_t dim)
        : fn_(std::move(fn)), dim_(dim) {}
    std::vector<double> final_state(FractionalOrder beta) const override {
        count_solve();
        return fn_(beta.value());
    }
    std::size_t dim() const override { return dim_; }
    std::string name() const override { return "function"; }

private:
    std::function<std::vector<double>(double)> fn_;
    std::size_t dim_;
};

struct ObservationData {
    std::vector<double> g;
    double noise_percent = 0.0;
    std::optional<std::uint64_t> seed;
};

/// g_i (1 + eps/100 * n_i), n_i standard normal from a seeded mt19937_64.
/// Deterministic for a given seed on every platform.
ObservationData add_noise(std::span<const double> g, double epsilon_percent, std::uint64_t seed);

double objective(std::span<const double> u, const ObservationData& data);
double objective(FractionalOrder beta, const ObservationData& data, const ForwardModel& forward);

struct Sensitivity {
    std::vector<double> u;     ///< u(., T; beta)
    std::vector<double> j;     ///< du/dbeta by finite differences
    std::vector<double> r;     ///< u - g
    double objective = 0.0;    ///< 1/2 |r|^2
    double increment = 0.0;    ///< signed increment actually used
};

/// Forward difference with increment delta; backward difference when
/// beta + delta >= 1. The two solves run concurrently when the thread budget
/// allows.
Sensitivity sensitivity(FractionalOrder beta, const ObservationData& data,
                        const ForwardModel& forward, double delta);

/// d = -J^T r / (J^T J + alpha). Throws std::invalid_argument for alpha < 0
/// and NumericalError if the denominator vanishes.
double lm_direction(std::span<const double> j, std::span<const double> r, double alpha);

struct ArmijoResult {
    double step = 0.0;           ///< rho^m d
    double beta = 0.0;           ///< beta + rho^m d
    double objective = 0.0;      ///< F at the accepted point
    std::size_t backtracks = 0;  ///< m
    bool stalled = false;        ///< no acceptable m up to the cap
};

/// Least m >= 0 with F(beta + rho^m d) <= F(beta) + sigma rho^m d J^T r and
/// beta + rho^m d inside (0, 1). `slope` is J^T r.
ArmijoResult armijo_search(double beta, double d, double slope, double f_beta,
                           const std::function<double(double)>& objective_at, double rho,
                           double sigma, std::size_t max_backtracks = 60);

struct LmConfig {
    double beta0 = 0.5;
    double rho = 0.75;
    double sigma = 0.25;
    double alpha0 = 1.0;
    double delta = 1e-3;
    double tol = 1e-7;
    std::size_t kmax = 50;
    /// false drops alpha from the direction (d = -J^T r / J^T J).
    bool regularized = true;

    void validate() const;
};

/// One row per iterate beta_k.
struct TraceRow {
    std::size_t k;
    double beta;
    double objective;        ///< F(beta_k)
    double step;             ///< rho^m d_k computed at beta_k; 0 if none was accepted
    std::size_t backtracks;  ///< m
};

struct IdentificationResult {
    double beta_inv = 0.0;
    std::size_t iterations = 0;   ///< accepted updates beta_k -> beta_{k+1}
    /// Directions computed, including the one whose step met the tolerance.
    std::size_t loop_passes = 0;
    std::vector<TraceRow> trace;  ///< iterations + 1 rows
    bool converged = false;
    bool line_search_stalled = false;
    double final_step = 0.0;      ///< the step that met the tolerance
    double wall_time = 0.0;       ///< seconds
    std::size_t forward_solves = 0;
};

IdentificationResult identify(const LmConfig& config, const ObservationData& data,
                              const ForwardModel& forward);

}  // namespace fracrom

#include "fracrom/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace fracrom {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::size_t steps_for(double final_time) {
    if (!(final_time > 0.0)) throw std::invalid_argument("steps_for: final time must be positive");
    return static_cast<std::size_t>(std::llround(64.0 * final_time));
}

ProblemFactory case_factory(const BenchmarkCase& c, const CaseGrid& grid) {
    return [&c, grid](FractionalOrder b) { return c.make(b, grid); };
}

ErrorSweep error_sweep(const BenchmarkCase& c, double final_time, std::span<const double> betas,
                       std::size_t pod_dim, std::size_t deim_dim) {
    if (!c.exact) throw std::invalid_argument("error_sweep: case '" + c.id + "' has no closed-form solution");
    const auto start = std::chrono::steady_clock::now();
    CaseGrid grid;
    grid.final_time = final_time;
    grid.steps = steps_for(final_time);
    const auto factory = case_factory(c, grid);

    OfflineOptions options;
    options.pod_dim = pod_dim;
    options.deim_dim = deim_dim;
    const auto model = build_offline(factory, c.samples, options);

    ErrorSweep sweep{c.id, final_time, pod_dim, model.rom.deim ? model.rom.deim->points() : 0, {}, 0.0};
    for (double b : betas) {
        const auto spec = factory(FractionalOrder(b));
        const auto exact = sample_exact(c.exact, spec.grid, final_time, b);
        const auto fom = fom_solve(spec);
        const auto rom = rom_solve(model.rom, spec);
        const bool sampled = std::any_of(c.samples.begin(), c.samples.end(),
                                         [b](double s) { return std::abs(s - b) < 1e-12; });
        sweep.rows.push_back({b, sampled, discrete_l2_error(fom.final_state(), exact, spec.grid),
                              discrete_l2_error(rom.lift_final(), exact, spec.grid)});
    }
    sweep.seconds = seconds_since(start);
    return sweep;
}

IdentificationBench::IdentificationBench(const BenchmarkCase& c, const CaseGrid& grid, double beta_star,
                                         std::size_t pod_dim, std::size_t deim_dim)
    : case_(&c), beta_star_(beta_star), factory_(case_factory(c, grid)) {
    const auto start = std::chrono::steady_clock::now();
    OfflineOptions options;
    options.pod_dim = pod_dim ? pod_dim : c.pod_dim;
    options.deim_dim = pod_dim ? deim_dim : c.deim_dim;
    offline_ = build_offline(factory_, c.samples, options);
    offline_seconds_ = seconds_since(start);

    fom_ = std::make_unique<FomForward>(factory_);
    rom_ = std::make_unique<RomForward>(factory_, offline_.rom);
    clean_.g = fom_->final_state(FractionalOrder(beta_star));
}

ObservationData IdentificationBench::noisy_data(double epsilon_percent, std::uint64_t seed) const {
    return add_noise(clean_.g, epsilon_percent, seed);
}

const ForwardModel& IdentificationBench::forward(ForwardKind kind) const {
    return kind == ForwardKind::fom ? static_cast<const ForwardModel&>(*fom_) : *rom_;
}

IdentificationResult IdentificationBench::run(double beta0, const ObservationData& data, ForwardKind kind,
                                              LmConfig config) const {
    config.beta0 = beta0;
    return identify(config, data, forward(kind));
}

}  // namespace fracrom

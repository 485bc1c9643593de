#pragma once

// Benchmark drivers shared by the CLI and the acceptance checks: FOM/ROM
// error sweeps and identification runs on the catalog cases.

#include "fracrom/inverse.hpp"
#include "fracrom/offline.hpp"
#include "fracrom/problems.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace fracrom {

/// SplitMix64 finaliser of (base, index); gives each run of a sweep its own
/// stream while everything stays a function of one user seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

/// Time steps that keep dt = 1/64 up to final_time (M = 64 T).
std::size_t steps_for(double final_time);

ProblemFactory case_factory(const BenchmarkCase& c, const CaseGrid& grid);

struct ErrorRow {
    double beta;
    bool sampled;       ///< beta is one of the snapshot samples
    double fom_error;   ///< discrete L2 error at the final time
    double rom_error;
};

struct ErrorSweep {
    std::string case_id;
    double final_time;
    std::size_t pod_dim;
    std::size_t deim_dim;  ///< effective s
    std::vector<ErrorRow> rows;
    double seconds;
};

/// FOM and ROM errors against the closed-form solution at each beta.
ErrorSweep error_sweep(const BenchmarkCase& c, double final_time, std::span<const double> betas,
                       std::size_t pod_dim, std::size_t deim_dim);

enum class ForwardKind { fom, rom };

/// Offline model plus FOM observation data at beta_star for one case.
class IdentificationBench {
public:
    IdentificationBench(const BenchmarkCase& c, const CaseGrid& grid = {}, double beta_star = 0.75,
                        std::size_t pod_dim = 0, std::size_t deim_dim = 0);

    const BenchmarkCase& benchmark() const noexcept { return *case_; }
    double beta_star() const noexcept { return beta_star_; }
    const ObservationData& clean_data() const noexcept { return clean_; }
    ObservationData noisy_data(double epsilon_percent, std::uint64_t seed) const;

    const ForwardModel& forward(ForwardKind kind) const;
    const OfflineModel& offline() const noexcept { return offline_; }
    double offline_seconds() const noexcept { return offline_seconds_; }

    IdentificationResult run(double beta0, const ObservationData& data, ForwardKind kind,
                             LmConfig config = {}) const;

private:
    const BenchmarkCase* case_;
    double beta_star_;
    ProblemFactory factory_;
    OfflineModel offline_;
    double offline_seconds_ = 0.0;
    std::unique_ptr<FomForward> fom_;
    std::unique_ptr<RomForward> rom_;
    ObservationData clean_;
};

}  // namespace fracrom

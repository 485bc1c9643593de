#pragma once

// Offline stage: full-order solves at the sample orders, POD of the states,
// POD + DEIM of the nonlinear term, and the reduced operators.

#include "fracrom/deim.hpp"
#include "fracrom/fom.hpp"
#include "fracrom/pod.hpp"
#include "fracrom/rom.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace fracrom {

using ProblemFactory = std::function<ProblemSpec(FractionalOrder)>;

struct OfflineOptions {
    std::size_t pod_dim = 4;
    /// 0 disables DEIM. Otherwise clamped to the numerical rank of the
    /// nonlinear snapshots (sigma_i > 1e-12 sigma_1).
    std::size_t deim_dim = 0;
    FomOptions fom{};
    unsigned threads = 0;  ///< 0 selects thread_budget()
};

struct SnapshotSet {
    std::vector<Trajectory> trajectories;
    SnapshotMatrix states;
    std::optional<SnapshotMatrix> nonlinear;
};

struct OfflineModel {
    ReducedBasis phi;
    std::optional<ReducedBasis> psi;
    RomOperators rom;
    std::size_t requested_deim_dim = 0;
};

/// FOM at each sample (in parallel across samples) and the snapshot matrices.
/// Nonlinear snapshots are collected when `nonlinear` is set.
SnapshotSet generate_snapshots(const ProblemFactory& factory, std::span<const double> samples,
                               bool nonlinear, const FomOptions& fom = {}, unsigned threads = 0);

/// Builds Phi (and Psi/DEIM when requested and nonlinear snapshots exist).
OfflineModel build_offline_model(const StiffnessMatrix& a, const SnapshotMatrix& states,
                                 const SnapshotMatrix* nonlinear, std::size_t pod_dim,
                                 std::size_t deim_dim);

/// generate_snapshots + build_offline_model.
OfflineModel build_offline(const ProblemFactory& factory, std::span<const double> samples,
                           const OfflineOptions& options);

}  // namespace fracrom

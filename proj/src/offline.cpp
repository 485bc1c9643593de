#include "fracrom/offline.hpp"

#include "fracrom/parallel.hpp"

#include <algorithm>
#include <stdexcept>

namespace fracrom {

SnapshotSet generate_snapshots(const ProblemFactory& factory, std::span<const double> samples,
                               bool nonlinear, const FomOptions& fom, unsigned threads) {
    if (samples.empty()) throw std::invalid_argument("generate_snapshots: no samples");
    std::vector<ProblemSpec> specs;
    specs.reserve(samples.size());
    for (double b : samples) specs.push_back(factory(FractionalOrder(b)));

    std::vector<std::optional<Trajectory>> slots(samples.size());
    parallel_for(
        samples.size(), [&](std::size_t k) { slots[k].emplace(fom_solve(specs[k], fom)); }, threads);

    SnapshotSet set;
    set.trajectories.reserve(slots.size());
    for (auto& t : slots) set.trajectories.push_back(std::move(*t));
    set.states = collect_snapshots(set.trajectories);
    if (nonlinear) set.nonlinear = collect_snapshots(set.trajectories, nonlinear_term_transform(specs));
    return set;
}

OfflineModel build_offline_model(const StiffnessMatrix& a, const SnapshotMatrix& states,
                                 const SnapshotMatrix* nonlinear, std::size_t pod_dim,
                                 std::size_t deim_dim) {
    OfflineModel model;
    model.phi = compute_basis(states, pod_dim);
    model.requested_deim_dim = deim_dim;
    std::optional<DeimOperator> deim;
    if (deim_dim > 0 && nonlinear) {
        // Decide s from the full spectrum, then keep only the leading s vectors.
        ReducedBasis full = compute_basis(*nonlinear, std::min(nonlinear->rows(), nonlinear->cols()));
        const std::size_t rank = numerical_rank(full.singular_values);
        if (rank == 0) throw std::invalid_argument("build_offline_model: nonlinear snapshots are identically zero");
        const auto s = static_cast<Eigen::Index>(std::min(deim_dim, rank));
        full.vectors = full.vectors.leftCols(s).eval();
        model.psi = std::move(full);
        deim.emplace(build_deim_operator(model.phi, *model.psi, deim_select(model.psi->vectors)));
    }
    model.rom = build_rom(a, model.phi, std::move(deim));
    return model;
}

OfflineModel build_offline(const ProblemFactory& factory, std::span<const double> samples,
                           const OfflineOptions& options) {
    const bool want_deim = options.deim_dim > 0;
    auto set = generate_snapshots(factory, samples, want_deim, options.fom, options.threads);
    const auto spec = factory(FractionalOrder(samples.front()));
    const auto a = assemble_stiffness(spec.mu, spec.grid);
    return build_offline_model(a, set.states, set.nonlinear ? &*set.nonlinear : nullptr,
                               options.pod_dim, options.deim_dim);
}

}  // namespace fracrom
